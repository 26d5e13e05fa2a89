#include "vervaat/walk.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace vervaat {

WalkPath build_walk(const ValidatedSpec& spec, std::int64_t n, std::uint64_t seed,
                    double cap_factor) {
  if (n < 1) throw std::invalid_argument("build_walk: n must be >= 1");
  WalkPath path;
  path.n = n;
  path.mu = spec.mu;
  path.sigma = spec.sigma();
  const double level = static_cast<double>(n) * spec.mu;
  const double cap = cap_factor * static_cast<double>(n) / spec.mu * std::max(1.0, spec.mu);

  Rng rng(seed);
  path.partial_sums.push_back(0.0);
  double s = 0.0;
  double rmax = -std::numeric_limits<double>::infinity();
  // Sample past the first passage over n*mu until at least n increments are
  // realized, so S_[nt] and N(n mu t) are both defined on all of [0, 1].
  while (s <= level || path.length() < n) {
    if (static_cast<double>(path.increments.size()) > cap + static_cast<double>(n))
      throw std::runtime_error("build_walk: no first passage over n*mu within cap (" +
                               spec.name() + ", n=" + std::to_string(n) + ")");
    const double x = draw_increment(spec, rng);
    s += x;
    path.increments.push_back(x);
    path.partial_sums.push_back(s);
    rmax = std::max(rmax, s);
    path.running_max.push_back(rmax);
  }
  return path;
}

std::int64_t first_passage(const WalkPath& path, double level) {
  // running_max is nondecreasing; N(level) is the first index where it
  // strictly exceeds level.
  auto it = std::upper_bound(path.running_max.begin(), path.running_max.end(), level);
  if (it == path.running_max.end())
    throw std::runtime_error("first_passage: path too short for level " + std::to_string(level));
  return static_cast<std::int64_t>(it - path.running_max.begin()) + 1;
}

ProcessPoint eval_at(const WalkPath& path, double t, bool standardized) {
  ProcessPoint p;
  p.t = t;
  const double n = static_cast<double>(path.n);
  const double mu = path.mu;
  const std::int64_t k = snapped_floor(n * t);
  if (k < 0 || k > path.length())
    throw std::out_of_range("eval_at: t outside the realized walk");
  p.Sn = path.partial_sums[static_cast<std::size_t>(k)] / (n * mu);
  p.Nn = static_cast<double>(first_passage(path, n * mu * t)) / n;
  p.barS = p.Sn - t;
  p.barN = p.Nn - t;
  p.Mn = p.barS + p.barN;
  if (standardized) {
    if (!(path.sigma > 0))
      throw std::invalid_argument("eval_at: standardized fields need sigma > 0");
    const double scale = std::sqrt(n) * mu / path.sigma;
    p.sn = scale * p.barS;
    p.rn = scale * p.barN;
    p.Rstar = p.sn + p.rn;
  } else {
    p.sn = p.rn = p.Rstar = std::numeric_limits<double>::quiet_NaN();
  }
  return p;
}

std::vector<ProcessPoint> eval_processes(const WalkPath& path, std::span<const double> grid,
                                         bool standardized) {
  std::vector<ProcessPoint> pts;
  pts.reserve(grid.size());
  for (double t : grid) pts.push_back(eval_at(path, t, standardized));
  return pts;
}

double sup_abs_rstar(const WalkPath& path) {
  if (!(path.sigma > 0))
    throw std::invalid_argument("sup_abs_rstar: needs sigma > 0");
  const double n = static_cast<double>(path.n);
  const double mu = path.mu;
  const double alpha = std::sqrt(n) * mu / path.sigma;

  // Event times in (0, 1]: t = k/n (partial-sum index advances at t) and
  // t = s/(n mu) for a running-max record s (the renewal index advances
  // strictly after t).  Both the value entering an event and the value
  // leaving it are candidates for the sup; between events R* falls linearly,
  // so nothing in the interior can exceed the endpoint values.
  struct Record {
    double s;
    std::int64_t idx;  // N(x) = idx of the first record with s > x
  };
  std::vector<Record> records;
  records.reserve(path.running_max.size());
  std::int64_t after_level_idx = -1;  // first-passage index over n*mu
  double rmax = 0.0;
  for (std::size_t i = 1; i < path.partial_sums.size(); ++i) {
    const double s = path.partial_sums[i];
    if (s > rmax) {
      rmax = s;
      if (s <= path.level()) {
        records.push_back({s, static_cast<std::int64_t>(i)});
      } else {
        after_level_idx = static_cast<std::int64_t>(i);
        break;
      }
    }
  }
  if (after_level_idx < 0)
    throw std::runtime_error("sup_abs_rstar: path never exceeds n*mu");

  std::int64_t k = 0;  // current partial-sum index [nt]
  std::size_t j = 0;   // records crossed so far
  double sup = 0.0;
  auto value = [&](double t) {
    const std::int64_t n_idx = j < records.size() ? records[j].idx : after_level_idx;
    return alpha * (path.partial_sums[static_cast<std::size_t>(k)] / (n * mu) +
                    static_cast<double>(n_idx) / n - 2.0 * t);
  };
  const double t_end = 1.0;
  sup = std::abs(value(0.0));
  for (;;) {
    const double t_step = static_cast<double>(k + 1) / n;
    const double t_rec =
        j < records.size() ? records[j].s / (n * mu) : std::numeric_limits<double>::infinity();
    const double t = std::min(std::min(t_step, t_rec), t_end);
    sup = std::max(sup, std::abs(value(t)));  // entering the event (left limit)
    if (t_step <= t) ++k;
    // A renewal jump at exactly t = 1 only takes effect outside [0, 1].
    if (t_rec <= t && t < t_end) ++j;
    sup = std::max(sup, std::abs(value(t)));  // leaving the event
    if (t >= t_end) break;
  }
  return sup;
}

std::vector<double> uniform_grid(std::size_t segments) {
  std::vector<double> g(segments + 1);
  for (std::size_t k = 0; k <= segments; ++k)
    g[k] = static_cast<double>(k) / static_cast<double>(segments);
  return g;
}

std::vector<double> positive_grid(std::size_t count) {
  std::vector<double> g(count);
  for (std::size_t k = 1; k <= count; ++k)
    g[k - 1] = static_cast<double>(k) / static_cast<double>(count);
  return g;
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_process_csv(std::ostream& os, std::span<const ProcessPoint> pts) {
  os << "t,Sn,sn,Nn,rn,barS,barN,Mn,Rstar\n";
  for (const ProcessPoint& p : pts) {
    os << fmt17(p.t) << ',' << fmt17(p.Sn) << ',' << fmt17(p.sn) << ',' << fmt17(p.Nn) << ','
       << fmt17(p.rn) << ',' << fmt17(p.barS) << ',' << fmt17(p.barN) << ',' << fmt17(p.Mn) << ','
       << fmt17(p.Rstar) << '\n';
  }
}

}  // namespace vervaat
