// Strong ascending ladder decomposition of a walk, the ladder-height renewal
// count, the weighted intra-cycle sums D_i, the cumulative process B_n, and
// Monte Carlo / enumeration estimates of the drift ratio mu_D / mu_H.

#pragma once

#include <cstdint>
#include <vector>

#include "vervaat/distributions.hpp"
#include "vervaat/walk.hpp"

namespace vervaat {

// Two printed conventions exist for the weighted sums D_i; they differ by an
// index shift.  inner_sum matches D_1 = sum_{j=1}^{nu_1 - 1} (nu_1 - j) X_j
// and makes the exact integral identity hold, so it is the default.
enum class DConvention { inner_sum, shifted };

struct LadderDecomposition {
  std::vector<std::int64_t> epochs;  // nu_1 < ... < nu_L (nu_0 = 0 implicit)
  std::vector<double> heights;       // H_i = S_{nu_i} - S_{nu_{i-1}} > 0
  std::vector<double> d_values;      // D_i
  std::vector<double> ladder_sums;   // S_{nu_i}, strictly increasing
  std::vector<double> prefix_d;      // prefix_d[i] = D_1 + ... + D_i (compensated)
  std::vector<double> prefix_nu_h;   // prefix of nu_i * H_i (compensated)

  std::int64_t count() const { return static_cast<std::int64_t>(epochs.size()); }
};

LadderDecomposition decompose(const WalkPath& path,
                              DConvention convention = DConvention::inner_sum);

// N_H(level) = min{ j : S_{nu_j} > level }.  Throws "path too short" when
// level >= S_{nu_L}.
std::int64_t ladder_count(const LadderDecomposition& decomp, double level);

// B_n(t) = (n^2 mu)^{-1} sum_{i=1}^{N_H(n mu t)} D_i.
double compute_B(const LadderDecomposition& decomp, std::int64_t n, double mu, double t);

struct DriftEstimate {
  double mu_d_hat = 0.0;
  double mu_h_hat = 0.0;
  double ratio_hat = 0.0;      // mu_d_hat / mu_h_hat
  double std_err_ratio = 0.0;  // delta-method standard error of the ratio
  double std_err_mu_d = 0.0;
  double std_err_mu_h = 0.0;
  double mean_cycle_len = 0.0;
  std::int64_t cycles = 0;
};

// Simulates `cycles` independent ladder cycles (fresh walk per cycle, one
// stream per cycle index).  For almost-surely nonnegative laws the ratio is
// exactly 0.
DriftEstimate estimate_drift_ratio(const ValidatedSpec& spec, std::int64_t cycles,
                                   std::uint64_t seed);

struct TwoPointDriftOracle {
  double mu_d = 0.0;
  double truncation_mass = 0.0;  // probability of cycles longer than max_steps
};

// Exact mu_D for the +/-1 walk with P(X = +1) = p, by dynamic programming
// over all first-passage-to-+1 paths of length <= max_steps.  Independent of
// the simulation path; used as the drift oracle.
TwoPointDriftOracle enumerate_mu_d_two_point(double p, int max_steps = 401);

}  // namespace vervaat
