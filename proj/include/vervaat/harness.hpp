// Monte Carlo experiments: two-sample KS comparisons of scaled walk
// statistics against their limit laws, rate scans, and the sup-norm growth
// diagnostic.  Every replicate owns a stream derived from (seed, index), so
// reports are bit-identical for any thread count.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vervaat/distributions.hpp"

namespace vervaat {

struct KsResult {
  double d = 0.0;       // sup |F_a - F_b| over the pooled points
  double p_asym = 0.0;  // asymptotic Kolmogorov tail probability
};

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

enum class Statistic {
  bk_point,          // n^{1/4} R_n*(t)   vs  sample_limit_bk
  vervaat_point,     // n V_n(t)          vs  limit_path_vervaat at t
  verror_point,      // n^{5/4} Q_n(t)    vs  sample_limit_verror
  zn_point,          // n^{5/4} Z_n(t)    vs  sample_limit_verror
  vervaat_path_sup,  // sup_t n V_n(t)    vs  sup_t of the limit path
  rate_scan,
  bk_growth
};

std::string statistic_name(Statistic s);

struct ExperimentConfig {
  ValidatedSpec spec;
  Statistic statistic = Statistic::bk_point;
  std::int64_t n = 0;                 // pointwise statistics
  std::vector<std::int64_t> n_grid;   // rate scan / growth diagnostic
  std::int64_t replicates = 100;
  double t_eval = 1.0;
  std::uint64_t seed = 0;
  bool estimate_drift = false;        // otherwise drift ratio is exactly 0
  std::int64_t drift_cycles = 100000;
  std::size_t grid_segments = 512;    // sup-over-grid statistics
  int threads = 1;
};

struct ExperimentReport {
  nlohmann::json config_echo;
  std::vector<double> empirical;
  std::vector<double> reference;
  double ks_distance = 0.0;
  double p_asym = 0.0;
  double drift_ratio_used = 0.0;
  std::int64_t flagged_samples = 0;
  // Rate scans and growth diagnostics.
  std::vector<double> ns;
  std::vector<double> medians;
  std::vector<double> normalized_medians;  // growth diagnostic only
  double slope = 0.0;                      // log-log least squares
  double runtime_seconds = 0.0;

  nlohmann::json to_json(bool include_samples = false) const;
};

ExperimentReport run_pointwise_experiment(const ExperimentConfig& config);

// Per n: median over replicates of sup_t |n V_n(t) - (n/2) barS(t)^2 -
// drift*t|; slope of log(median) against log(n).
ExperimentReport rate_scan(const ExperimentConfig& config);

// Per n: medians of n^{1/4} ||R_n*|| raw and normalized by (log n)^{1/2};
// the reference sample holds sup_half_norm_reference draws.
ExperimentReport bk_growth_diagnostic(const ExperimentConfig& config);

double median(std::vector<double> values);

}  // namespace vervaat
