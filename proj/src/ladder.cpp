#include "vervaat/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "vervaat/summation.hpp"

namespace vervaat {

LadderDecomposition decompose(const WalkPath& path, DConvention convention) {
  if (path.length() == 0) throw std::invalid_argument("decompose: empty path");
  LadderDecomposition d;
  const std::vector<double>& s = path.partial_sums;
  const std::int64_t m = path.length();
  KahanAccumulator d_acc;
  KahanAccumulator nu_h_acc;
  std::int64_t prev = 0;
  double prev_sum = 0.0;
  for (std::int64_t k = 1; k <= m; ++k) {
    if (s[static_cast<std::size_t>(k)] > prev_sum) {
      const std::int64_t gap = k - prev;
      const double height = s[static_cast<std::size_t>(k)] - prev_sum;
      // D_i over the excursion below the previous record.  Both conventions
      // weight the intra-cycle increments; they differ by one in the weight.
      KahanAccumulator di;
      for (std::int64_t j = 1; j <= gap - 1; ++j) {
        const double w = convention == DConvention::inner_sum
                             ? static_cast<double>(gap - j)
                             : static_cast<double>(gap - j - 1);
        di.add(w * path.increments[static_cast<std::size_t>(prev + j - 1)]);
      }
      d.epochs.push_back(k);
      d.heights.push_back(height);
      d.d_values.push_back(di.total());
      d.ladder_sums.push_back(s[static_cast<std::size_t>(k)]);
      d_acc.add(di.total());
      d.prefix_d.push_back(d_acc.total());
      nu_h_acc.add(static_cast<double>(k) * height);
      d.prefix_nu_h.push_back(nu_h_acc.total());
      prev = k;
      prev_sum = s[static_cast<std::size_t>(k)];
    }
  }
  return d;
}

std::int64_t ladder_count(const LadderDecomposition& decomp, double level) {
  auto it = std::upper_bound(decomp.ladder_sums.begin(), decomp.ladder_sums.end(), level);
  if (it == decomp.ladder_sums.end())
    throw std::runtime_error("ladder_count: path too short for level " + std::to_string(level));
  return static_cast<std::int64_t>(it - decomp.ladder_sums.begin()) + 1;
}

double compute_B(const LadderDecomposition& decomp, std::int64_t n, double mu, double t) {
  const double nn = static_cast<double>(n);
  const std::int64_t ell = ladder_count(decomp, nn * mu * t);
  return decomp.prefix_d[static_cast<std::size_t>(ell - 1)] / (nn * nn * mu);
}

DriftEstimate estimate_drift_ratio(const ValidatedSpec& spec, std::int64_t cycles,
                                   std::uint64_t seed) {
  if (cycles < 1) throw std::invalid_argument("estimate_drift_ratio: cycles must be >= 1");
  constexpr std::int64_t kCycleCap = 100000000;
  KahanAccumulator sum_d, sum_h, sum_len;
  KahanAccumulator sum_dd, sum_hh, sum_dh;
  for (std::int64_t c = 0; c < cycles; ++c) {
    Rng rng(derive_stream(seed, static_cast<std::uint64_t>(c)));
    double s = 0.0;
    KahanAccumulator d;  // sum of partial sums strictly before the ladder epoch
    std::int64_t len = 0;
    for (;;) {
      s += draw_increment(spec, rng);
      ++len;
      if (s > 0.0) break;
      d.add(s);
      if (len > kCycleCap)
        throw std::runtime_error("estimate_drift_ratio: ladder cycle exceeded cap");
    }
    const double di = d.total();
    sum_d.add(di);
    sum_h.add(s);
    sum_len.add(static_cast<double>(len));
    sum_dd.add(di * di);
    sum_hh.add(s * s);
    sum_dh.add(di * s);
  }
  const double nc = static_cast<double>(cycles);
  DriftEstimate est;
  est.cycles = cycles;
  est.mu_d_hat = sum_d.total() / nc;
  est.mu_h_hat = sum_h.total() / nc;
  est.mean_cycle_len = sum_len.total() / nc;
  est.ratio_hat = spec.as_nonnegative ? 0.0 : est.mu_d_hat / est.mu_h_hat;
  // Delta method for a ratio of sample means.
  const double var_d = sum_dd.total() / nc - est.mu_d_hat * est.mu_d_hat;
  const double var_h = sum_hh.total() / nc - est.mu_h_hat * est.mu_h_hat;
  const double cov_dh = sum_dh.total() / nc - est.mu_d_hat * est.mu_h_hat;
  const double r = est.mu_d_hat / est.mu_h_hat;
  const double var_ratio =
      (var_d - 2.0 * r * cov_dh + r * r * var_h) / (est.mu_h_hat * est.mu_h_hat * nc);
  est.std_err_ratio = var_ratio > 0 ? std::sqrt(var_ratio) : 0.0;
  est.std_err_mu_d = var_d > 0 ? std::sqrt(var_d / nc) : 0.0;
  est.std_err_mu_h = var_h > 0 ? std::sqrt(var_h / nc) : 0.0;
  return est;
}

TwoPointDriftOracle enumerate_mu_d_two_point(double p, int max_steps) {
  if (!(p > 0.5 && p < 1.0))
    throw std::invalid_argument("enumerate_mu_d_two_point: need p in (0.5, 1)");
  const double q = 1.0 - p;
  // State = current height h <= 0; per state carry the probability mass and
  // E[accumulated sum of partial sums; path still running].  D_1 equals the
  // sum of the partial sums strictly before the ladder epoch.
  std::unordered_map<std::int64_t, std::pair<double, double>> states;
  states.emplace(0, std::make_pair(1.0, 0.0));
  double mu_d = 0.0;
  double done_mass = 0.0;
  for (int step = 0; step < max_steps; ++step) {
    std::unordered_map<std::int64_t, std::pair<double, double>> next;
    next.reserve(states.size() + 1);
    for (const auto& [h, pw] : states) {
      const auto [pr, w] = pw;
      if (h + 1 == 1) {  // ladder epoch reached: collect, final S_{nu_1} not added
        mu_d += p * w;
        done_mass += p * pr;
      } else {
        auto& up = next[h + 1];
        up.first += p * pr;
        up.second += p * (w + static_cast<double>(h + 1) * pr);
      }
      auto& down = next[h - 1];
      down.first += q * pr;
      down.second += q * (w + static_cast<double>(h - 1) * pr);
    }
    states = std::move(next);
  }
  return {mu_d, 1.0 - done_mass};
}

}  // namespace vervaat
