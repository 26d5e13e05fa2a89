#include "vervaat/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "vervaat/ladder.hpp"
#include "vervaat/limit_laws.hpp"
#include "vervaat/vervaat_process.hpp"
#include "vervaat/walk.hpp"

namespace vervaat {

namespace {

// Reference draws use streams disjoint from the walk replicates.
constexpr std::uint64_t kReferenceTag = 0x5245464552454E43ULL;

// Runs fn(i) for i in [0, count) on `threads` workers; each index writes its
// own slot, so the outcome never depends on the schedule.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn) {
  const int nthreads = std::max(1, threads);
  if (nthreads == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int w = 0; w < nthreads; ++w) {
    pool.emplace_back([&, w] {
      for (std::int64_t i = w; i < count; i += nthreads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * static_cast<double>(k) * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

nlohmann::json echo_config(const ExperimentConfig& c) {
  nlohmann::json j;
  j["spec"] = spec_to_json(c.spec);
  j["statistic"] = statistic_name(c.statistic);
  j["n"] = c.n;
  j["n_grid"] = c.n_grid;
  j["replicates"] = c.replicates;
  j["t_eval"] = c.t_eval;
  j["seed"] = c.seed;
  j["drift_ratio_source"] =
      c.estimate_drift ? "estimated(" + std::to_string(c.drift_cycles) + ")" : "exact_zero";
  j["grid_segments"] = c.grid_segments;
  j["threads"] = c.threads;
  j["seed_rule"] = kSeedRule;
  return j;
}

double resolve_drift(const ExperimentConfig& c) {
  if (!c.estimate_drift) {
    if (!c.spec.as_nonnegative)
      throw std::invalid_argument(
          "drift_ratio_source=exact_zero is invalid for laws with P(X < 0) > 0");
    return 0.0;
  }
  return estimate_drift_ratio(c.spec, c.drift_cycles, derive_stream(c.seed, 0xD21F7ULL)).ratio_hat;
}

double slope_loglog(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

std::string statistic_name(Statistic s) {
  switch (s) {
    case Statistic::bk_point: return "bk_point";
    case Statistic::vervaat_point: return "vervaat_point";
    case Statistic::verror_point: return "verror_point";
    case Statistic::zn_point: return "zn_point";
    case Statistic::vervaat_path_sup: return "vervaat_path_sup";
    case Statistic::rate_scan: return "rate_scan";
    case Statistic::bk_growth: return "bk_growth";
  }
  return "?";
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < sa.size() && ib < sb.size()) {
    const double x = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] <= x) ++ia;
    while (ib < sb.size() && sb[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  KsResult r;
  r.d = d;
  r.p_asym = kolmogorov_tail(d * std::sqrt(na * nb / (na + nb)));
  return r;
}

nlohmann::json ExperimentReport::to_json(bool include_samples) const {
  nlohmann::json j;
  j["config"] = config_echo;
  j["ks_distance"] = ks_distance;
  j["p_asym"] = p_asym;
  j["drift_ratio_used"] = drift_ratio_used;
  j["flagged_samples"] = flagged_samples;
  j["runtime_seconds"] = runtime_seconds;
  if (!ns.empty()) {
    j["n"] = ns;
    j["medians"] = medians;
    j["slope"] = slope;
    if (!normalized_medians.empty()) j["normalized_medians"] = normalized_medians;
  }
  if (include_samples) {
    j["empirical"] = empirical;
    j["reference"] = reference;
  }
  return j;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

ExperimentReport run_pointwise_experiment(const ExperimentConfig& c) {
  Stopwatch timer;
  if (c.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (!(c.t_eval > 0.0 && c.t_eval <= 1.0))
    throw std::invalid_argument("t_eval must lie in (0,1] for pointwise statistics");
  ExperimentReport rep;
  rep.config_echo = echo_config(c);
  const double drift = (c.statistic == Statistic::bk_point) ? 0.0 : resolve_drift(c);
  rep.drift_ratio_used = drift;

  const double t = c.t_eval;
  const double nd = static_cast<double>(c.n);
  const double sigma = c.spec.sigma();
  const double mu = c.spec.mu;
  const std::int64_t r_count = c.replicates;
  rep.empirical.assign(static_cast<std::size_t>(r_count), 0.0);
  rep.reference.assign(static_cast<std::size_t>(r_count), 0.0);
  std::vector<unsigned char> flagged(static_cast<std::size_t>(r_count), 0);

  // Headroom past n*t for the Z_n integrand when Y_n(t) < 0.
  const double zn_horizon = nd * t + std::max(64.0, 10.0 * sigma / mu * std::sqrt(nd));

  parallel_for(r_count, c.threads, [&](std::int64_t r) {
    const std::uint64_t walk_seed = derive_stream(c.seed, static_cast<std::uint64_t>(r));
    const std::uint64_t ref_seed =
        derive_stream(c.seed ^ kReferenceTag, static_cast<std::uint64_t>(r));
    const std::size_t ri = static_cast<std::size_t>(r);
    switch (c.statistic) {
      case Statistic::bk_point: {
        const WalkPath path = build_walk(c.spec, c.n, walk_seed);
        rep.empirical[ri] = std::pow(nd, 0.25) * eval_at(path, t).Rstar;
        rep.reference[ri] = sample_limit_bk(t, sigma, mu, ref_seed);
        break;
      }
      case Statistic::vervaat_point: {
        const WalkPath path = build_walk(c.spec, c.n, walk_seed);
        const VervaatEvaluator ev(path, c.spec.as_positive);
        rep.empirical[ri] = nd * ev.integrate_V(t).V;
        const WienerPath w = wiener_path(std::max(t, 1.0), 1.0 / 64.0, ref_seed);
        const double grid[1] = {t};
        rep.reference[ri] = limit_path_vervaat(w, sigma, mu, drift, grid)[0];
        break;
      }
      case Statistic::verror_point: {
        const WalkPath path = build_walk(c.spec, c.n, walk_seed);
        const VervaatEvaluator ev(path, c.spec.as_positive);
        rep.empirical[ri] = std::pow(nd, 1.25) * ev.compute_Q(t, drift);
        rep.reference[ri] = sample_limit_verror(t, sigma, mu, ref_seed);
        break;
      }
      case Statistic::zn_point: {
        const WienerPath w = wiener_path(zn_horizon, 1.0 / 16.0, walk_seed);
        const ZnSample z = z_n_functional(w, nd, sigma, mu, t);
        rep.empirical[ri] = std::pow(nd, 1.25) * z.value;
        flagged[ri] = z.flagged ? 1 : 0;
        rep.reference[ri] = sample_limit_verror(t, sigma, mu, ref_seed);
        break;
      }
      case Statistic::vervaat_path_sup: {
        const WalkPath path = build_walk(c.spec, c.n, walk_seed);
        const VervaatEvaluator ev(path, c.spec.as_positive);
        double sup = 0.0;
        for (std::size_t k = 1; k <= c.grid_segments; ++k) {
          const double tk = static_cast<double>(k) / static_cast<double>(c.grid_segments);
          sup = std::max(sup, std::abs(nd * ev.integrate_V(tk).V));
        }
        rep.empirical[ri] = sup;
        const WienerPath w = wiener_path(1.0, 1.0 / 512.0, ref_seed);
        const auto grid = uniform_grid(512);
        const auto limit = limit_path_vervaat(w, sigma, mu, drift, grid);
        double lsup = 0.0;
        for (double v : limit) lsup = std::max(lsup, std::abs(v));
        rep.reference[ri] = lsup;
        break;
      }
      default:
        throw std::invalid_argument("run_pointwise_experiment: not a pointwise statistic");
    }
  });

  std::int64_t nflag = 0;
  for (unsigned char f : flagged) nflag += f;
  rep.flagged_samples = nflag;
  if (nflag > 0) {
    // Drop flagged draws pairwise so the two samples stay equal-sized.
    std::vector<double> emp, ref;
    for (std::size_t i = 0; i < rep.empirical.size(); ++i) {
      if (!flagged[i]) {
        emp.push_back(rep.empirical[i]);
        ref.push_back(rep.reference[i]);
      }
    }
    rep.empirical = std::move(emp);
    rep.reference = std::move(ref);
  }
  const KsResult ks = ks_two_sample(rep.empirical, rep.reference);
  rep.ks_distance = ks.d;
  rep.p_asym = ks.p_asym;
  rep.runtime_seconds = timer.seconds();
  return rep;
}

ExperimentReport rate_scan(const ExperimentConfig& c) {
  Stopwatch timer;
  if (c.n_grid.size() < 2) throw std::invalid_argument("rate_scan: need an n-grid");
  ExperimentReport rep;
  rep.config_echo = echo_config(c);
  const double drift = resolve_drift(c);
  rep.drift_ratio_used = drift;

  for (std::size_t gi = 0; gi < c.n_grid.size(); ++gi) {
    const std::int64_t n = c.n_grid[gi];
    const double nd = static_cast<double>(n);
    std::vector<double> sups(static_cast<std::size_t>(c.replicates), 0.0);
    parallel_for(c.replicates, c.threads, [&](std::int64_t r) {
      const std::uint64_t walk_seed =
          derive_stream(c.seed + static_cast<std::uint64_t>(gi) * 0x10001ULL,
                        static_cast<std::uint64_t>(r));
      const WalkPath path = build_walk(c.spec, n, walk_seed);
      const VervaatEvaluator ev(path, c.spec.as_positive);
      double sup = 0.0;
      for (std::size_t k = 1; k <= c.grid_segments; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(c.grid_segments);
        // n V_n(t) - (n/2) barS(t)^2 - drift*t; the drift term is not scaled
        // by n (the cumulative B_n contributes drift*t/n to V_n).
        const double dev = nd * ev.compute_Q(t, drift / nd);
        sup = std::max(sup, std::abs(dev));
      }
      sups[static_cast<std::size_t>(r)] = sup;
    });
    rep.ns.push_back(nd);
    rep.medians.push_back(median(sups));
  }
  rep.slope = slope_loglog(rep.ns, rep.medians);
  rep.runtime_seconds = timer.seconds();
  return rep;
}

ExperimentReport bk_growth_diagnostic(const ExperimentConfig& c) {
  Stopwatch timer;
  if (c.n_grid.size() < 2) throw std::invalid_argument("bk_growth: need an n-grid");
  ExperimentReport rep;
  rep.config_echo = echo_config(c);
  const double sigma = c.spec.sigma();
  const double mu = c.spec.mu;

  for (std::size_t gi = 0; gi < c.n_grid.size(); ++gi) {
    const std::int64_t n = c.n_grid[gi];
    const double nd = static_cast<double>(n);
    std::vector<double> sups(static_cast<std::size_t>(c.replicates), 0.0);
    parallel_for(c.replicates, c.threads, [&](std::int64_t r) {
      const std::uint64_t walk_seed =
          derive_stream(c.seed + static_cast<std::uint64_t>(gi) * 0x10001ULL,
                        static_cast<std::uint64_t>(r));
      const WalkPath path = build_walk(c.spec, n, walk_seed);
      // The sup here is exact; a fixed grid misses the 1/n-scale
      // oscillation of R* and biases the norm low.
      sups[static_cast<std::size_t>(r)] = sup_abs_rstar(path);
    });
    const double med = median(sups);
    rep.ns.push_back(nd);
    rep.medians.push_back(std::pow(nd, 0.25) * med);
    rep.normalized_medians.push_back(std::pow(nd, 0.25) / std::sqrt(std::log(nd)) * med);
    if (gi + 1 == c.n_grid.size()) {
      // Keep the per-replicate normalized sups at the largest n for KS.
      rep.empirical.resize(sups.size());
      for (std::size_t i = 0; i < sups.size(); ++i)
        rep.empirical[i] = std::pow(nd, 0.25) / std::sqrt(std::log(nd)) * sups[i];
    }
  }

  // Reference sample for the normalized statistic.
  const std::int64_t refs = std::max<std::int64_t>(c.replicates, 200);
  rep.reference.assign(static_cast<std::size_t>(refs), 0.0);
  parallel_for(refs, c.threads, [&](std::int64_t r) {
    rep.reference[static_cast<std::size_t>(r)] = sup_half_norm_reference(
        sigma, mu, derive_stream(c.seed ^ kReferenceTag, static_cast<std::uint64_t>(r)));
  });
  const KsResult ks = ks_two_sample(rep.empirical, rep.reference);
  rep.ks_distance = ks.d;
  rep.p_asym = ks.p_asym;
  rep.slope = slope_loglog(rep.ns, rep.medians);
  rep.runtime_seconds = timer.seconds();
  return rep;
}

}  // namespace vervaat
