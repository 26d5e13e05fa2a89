#include "vervaat/distributions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vervaat {

std::string kind_name(DistKind kind) {
  switch (kind) {
    case DistKind::exponential: return "exponential";
    case DistKind::two_point: return "two_point";
    case DistKind::shifted_normal: return "shifted_normal";
    case DistKind::uniform: return "uniform";
    case DistKind::deterministic: return "deterministic";
  }
  return "?";
}

DistributionSpec DistributionSpec::exponential(double rate) {
  return {DistKind::exponential, rate, 0, 0, false};
}
DistributionSpec DistributionSpec::two_point(double a, double b, double p) {
  return {DistKind::two_point, a, b, p, false};
}
DistributionSpec DistributionSpec::shifted_normal(double mean, double sd) {
  return {DistKind::shifted_normal, mean, sd, 0, false};
}
DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  return {DistKind::uniform, lo, hi, 0, false};
}
DistributionSpec DistributionSpec::deterministic(double c) {
  DistributionSpec s{DistKind::deterministic, c, 0, 0, true};
  return s;
}

double ValidatedSpec::sigma() const { return std::sqrt(sigma2); }

std::string ValidatedSpec::name() const {
  std::ostringstream os;
  os << kind_name(spec.kind) << '(' << spec.p0;
  switch (spec.kind) {
    case DistKind::two_point: os << ',' << spec.p1 << ',' << spec.p2; break;
    case DistKind::shifted_normal:
    case DistKind::uniform: os << ',' << spec.p1; break;
    default: break;
  }
  os << ')';
  return os.str();
}

ValidatedSpec validate(const DistributionSpec& spec) {
  ValidatedSpec v;
  v.spec = spec;
  switch (spec.kind) {
    case DistKind::exponential: {
      const double rate = spec.p0;
      if (!(rate > 0)) throw std::invalid_argument("exponential: rate must be > 0");
      v.mu = 1.0 / rate;
      v.sigma2 = 1.0 / (rate * rate);
      v.as_positive = true;
      break;
    }
    case DistKind::two_point: {
      const double a = spec.p0, b = spec.p1, p = spec.p2;
      if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("two_point: p must lie in (0,1)");
      if (a == b) throw std::invalid_argument("two_point: a and b must differ");
      v.mu = p * b + (1.0 - p) * a;
      const double ex2 = p * b * b + (1.0 - p) * a * a;
      v.sigma2 = ex2 - v.mu * v.mu;
      v.as_positive = a > 0.0 && b > 0.0;
      v.as_nonnegative = a >= 0.0 && b >= 0.0;
      break;
    }
    case DistKind::shifted_normal: {
      const double sd = spec.p1;
      if (!(sd >= 0)) throw std::invalid_argument("shifted_normal: sd must be >= 0");
      v.mu = spec.p0;
      v.sigma2 = sd * sd;
      break;
    }
    case DistKind::uniform: {
      const double lo = spec.p0, hi = spec.p1;
      if (!(lo < hi)) throw std::invalid_argument("uniform: lo must be < hi");
      v.mu = 0.5 * (lo + hi);
      v.sigma2 = (hi - lo) * (hi - lo) / 12.0;
      v.as_positive = lo >= 0.0;  // continuous law: P(X = 0) = 0
      break;
    }
    case DistKind::deterministic: {
      v.mu = spec.p0;
      v.sigma2 = 0.0;
      v.as_positive = spec.p0 > 0.0;
      v.as_nonnegative = spec.p0 >= 0.0;
      break;
    }
  }
  if (v.as_positive) v.as_nonnegative = true;
  if (!(v.mu > 0)) throw std::invalid_argument("increment law must have mean > 0, got mu=" +
                                               std::to_string(v.mu));
  if (v.sigma2 == 0.0 && !spec.allow_degenerate)
    throw std::invalid_argument("zero-variance law requires allow_degenerate");
  v.m4_finite = true;  // every supported kind has finite fourth moment
  return v;
}

double draw_increment(const ValidatedSpec& spec, Rng& rng) {
  const DistributionSpec& s = spec.spec;
  switch (s.kind) {
    case DistKind::exponential: return rng.exponential(s.p0);
    case DistKind::two_point: return rng.uniform01() < s.p2 ? s.p1 : s.p0;
    case DistKind::shifted_normal: return s.p0 + s.p1 * rng.normal();
    case DistKind::uniform: return s.p0 + (s.p1 - s.p0) * rng.uniform01();
    case DistKind::deterministic: return s.p0;
  }
  return 0.0;
}

std::vector<double> sample_increments(const ValidatedSpec& spec, std::size_t count,
                                      std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = draw_increment(spec, rng);
  return out;
}

std::vector<ValidatedSpec> catalog() {
  return {
      validate(DistributionSpec::exponential(1.0)),
      validate(DistributionSpec::two_point(-1.0, 1.0, 0.7)),
      validate(DistributionSpec::shifted_normal(1.0, 1.0)),
      validate(DistributionSpec::uniform(0.0, 2.0)),
  };
}

nlohmann::json spec_to_json(const ValidatedSpec& v) {
  nlohmann::json params;
  const DistributionSpec& s = v.spec;
  switch (s.kind) {
    case DistKind::exponential: params = {{"rate", s.p0}}; break;
    case DistKind::two_point: params = {{"a", s.p0}, {"b", s.p1}, {"p", s.p2}}; break;
    case DistKind::shifted_normal: params = {{"mean", s.p0}, {"sd", s.p1}}; break;
    case DistKind::uniform: params = {{"lo", s.p0}, {"hi", s.p1}}; break;
    case DistKind::deterministic: params = {{"c", s.p0}}; break;
  }
  return {{"kind", kind_name(s.kind)},
          {"params", params},
          {"allow_degenerate", s.allow_degenerate},
          {"mu", v.mu},
          {"sigma2", v.sigma2}};
}

DistributionSpec spec_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const nlohmann::json& p = j.at("params");
  DistributionSpec s;
  if (kind == "exponential") {
    s = DistributionSpec::exponential(p.at("rate").get<double>());
  } else if (kind == "two_point") {
    s = DistributionSpec::two_point(p.at("a").get<double>(), p.at("b").get<double>(),
                                    p.at("p").get<double>());
  } else if (kind == "shifted_normal") {
    s = DistributionSpec::shifted_normal(p.at("mean").get<double>(), p.at("sd").get<double>());
  } else if (kind == "uniform") {
    s = DistributionSpec::uniform(p.at("lo").get<double>(), p.at("hi").get<double>());
  } else if (kind == "deterministic") {
    s = DistributionSpec::deterministic(p.at("c").get<double>());
  } else {
    throw std::invalid_argument("unknown distribution kind: " + kind);
  }
  if (j.contains("allow_degenerate")) s.allow_degenerate = j.at("allow_degenerate").get<bool>();
  return s;
}

DistributionSpec parse_dist(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("distribution shorthand needs name:params, got '" + text + "'");
  const std::string name = text.substr(0, colon);
  std::vector<double> args;
  {
    std::istringstream is(text.substr(colon + 1));
    std::string tok;
    while (std::getline(is, tok, ',')) args.push_back(std::stod(tok));
  }
  auto need = [&](std::size_t k) {
    if (args.size() != k)
      throw std::invalid_argument("distribution '" + name + "' expects " + std::to_string(k) +
                                  " parameter(s)");
  };
  if (name == "exp" || name == "exponential") {
    need(1);
    return DistributionSpec::exponential(args[0]);
  }
  if (name == "twopoint" || name == "two_point") {
    need(3);
    return DistributionSpec::two_point(args[0], args[1], args[2]);
  }
  if (name == "normal" || name == "shifted_normal") {
    need(2);
    return DistributionSpec::shifted_normal(args[0], args[1]);
  }
  if (name == "uniform") {
    need(2);
    return DistributionSpec::uniform(args[0], args[1]);
  }
  if (name == "det" || name == "deterministic") {
    need(1);
    return DistributionSpec::deterministic(args[0]);
  }
  throw std::invalid_argument("unknown distribution '" + name + "'");
}

}  // namespace vervaat
