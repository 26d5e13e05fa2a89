// Acceptance suite.  Each criterion runs with pinned parameters and
// tolerances and prints exactly one PASS/FAIL line; run `acceptance <k>`
// for one criterion or `acceptance` for all of them.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "vervaat/distributions.hpp"
#include "vervaat/harness.hpp"
#include "vervaat/ladder.hpp"
#include "vervaat/vervaat_process.hpp"
#include "vervaat/walk.hpp"

using namespace vervaat;

namespace {

constexpr std::uint64_t kSweepSeed = 20240901;

struct SweepResiduals {
  double repr_general = 0.0;
  double repr_ordinary = 0.0;
  double identity = 0.0;
};

// Shared sweep for criteria 1 and 2: catalog x 100 seeds x n in
// {1e2, 1e3, 1e4} x 33 grid points in (0, 1].
SweepResiduals representation_sweep() {
  SweepResiduals out;
  const auto grid = positive_grid(33);
  for (const auto& spec : catalog()) {
    for (std::int64_t n : {100, 1000, 10000}) {
      for (std::uint64_t s = 0; s < 100; ++s) {
        const WalkPath path = build_walk(spec, n, derive_stream(kSweepSeed, s));
        const VervaatEvaluator ev(path, spec.as_positive);
        for (double t : grid) {
          const double v = ev.integrate_V(t).V;
          out.repr_general = std::max(out.repr_general, std::abs(v - ev.repr_general(t)));
          if (spec.as_positive)
            out.repr_ordinary =
                std::max(out.repr_ordinary, std::abs(v - ev.repr_ordinary(t)));
          out.identity = std::max(out.identity, std::abs(ev.identity_residual(t)));
        }
      }
    }
  }
  return out;
}

bool criterion_1() {
  const SweepResiduals r = representation_sweep();
  const bool ok = r.repr_general <= 1e-9 && r.repr_ordinary <= 1e-9;
  std::printf("criterion 1 [%s] representations: max|V - general| = %.3g, "
              "max|V - ordinary| = %.3g (tol 1e-9)\n",
              ok ? "PASS" : "FAIL", r.repr_general, r.repr_ordinary);
  return ok;
}

bool criterion_2() {
  const SweepResiduals r = representation_sweep();
  const bool ok = r.identity <= 1e-9;
  std::printf("criterion 2 [%s] integral identity: max residual = %.3g (tol 1e-9)\n",
              ok ? "PASS" : "FAIL", r.identity);
  return ok;
}

bool criterion_3() {
  // Exponential(1): every D_i must be exactly zero (consecutive ladder
  // epochs).  Two-point: all D_i <= 0 with a strictly positive fraction < 0.
  const auto exp1 = validate(DistributionSpec::exponential(1.0));
  std::int64_t exp_cycles = 0;
  bool exp_ok = true;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto d = decompose(build_walk(exp1, 200, derive_stream(7001, s)));
    exp_cycles += d.count();
    for (double di : d.d_values)
      if (di != 0.0) exp_ok = false;
  }

  const auto tp = validate(DistributionSpec::two_point(-1.0, 1.0, 0.7));
  std::int64_t tp_cycles = 0, tp_negative = 0;
  bool tp_ok = true;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto d = decompose(build_walk(tp, 200, derive_stream(7002, s)));
    tp_cycles += d.count();
    for (double di : d.d_values) {
      if (di > 0.0) tp_ok = false;
      if (di < 0.0) ++tp_negative;
    }
  }
  const bool ok = exp_ok && tp_ok && tp_negative > 0;
  std::printf("criterion 3 [%s] intra-cycle sums: exponential D_i == 0 over %lld cycles "
              "(%s); two-point D_i <= 0 over %lld cycles with %lld strictly negative\n",
              ok ? "PASS" : "FAIL", static_cast<long long>(exp_cycles),
              exp_ok ? "yes" : "no", static_cast<long long>(tp_cycles),
              static_cast<long long>(tp_negative));
  return ok;
}

bool criterion_4() {
  const auto tp = validate(DistributionSpec::two_point(-1.0, 1.0, 0.7));
  const DriftEstimate est = estimate_drift_ratio(tp, 100000, 20240904);
  const TwoPointDriftOracle oracle = enumerate_mu_d_two_point(0.7);
  const double d_dev = std::abs(est.mu_d_hat - oracle.mu_d);
  const double h_dev = std::abs(est.mu_h_hat - 1.0);
  const bool ok = d_dev <= 3.0 * est.std_err_mu_d && h_dev <= 3.0 * est.std_err_mu_h;
  std::printf("criterion 4 [%s] drift oracle: mu_D hat %.6f vs %.6f (|dev| %.4f <= 3 SE "
              "%.4f); mu_H hat %.6f (|dev| %.3g <= 3 SE %.3g)\n",
              ok ? "PASS" : "FAIL", est.mu_d_hat, oracle.mu_d, d_dev,
              3.0 * est.std_err_mu_d, est.mu_h_hat, h_dev, 3.0 * est.std_err_mu_h);
  return ok;
}

ExperimentConfig pointwise_config(const ValidatedSpec& spec, Statistic stat,
                                  std::int64_t replicates, bool estimate_drift,
                                  int threads) {
  ExperimentConfig c;
  c.spec = spec;
  c.statistic = stat;
  c.n = 20000;
  c.replicates = replicates;
  c.t_eval = 1.0;
  c.seed = 42;
  c.estimate_drift = estimate_drift;
  c.threads = threads;
  return c;
}

bool criterion_5(int threads = 1, double* ks_out = nullptr) {
  const auto cfg = pointwise_config(validate(DistributionSpec::exponential(1.0)),
                                    Statistic::bk_point, 4000, false, threads);
  const auto rep = run_pointwise_experiment(cfg);
  if (ks_out) { *ks_out = rep.ks_distance; return true; }
  const bool ok = rep.ks_distance <= 0.06;
  std::printf("criterion 5 [%s] n^{1/4} R_n*(1) vs limit law: KS = %.4f (tol 0.06, "
              "%.1f s)\n",
              ok ? "PASS" : "FAIL", rep.ks_distance, rep.runtime_seconds);
  return ok;
}

bool criterion_6(int threads = 1, double* ks_out = nullptr) {
  const auto tp_cfg = pointwise_config(validate(DistributionSpec::two_point(-1.0, 1.0, 0.7)),
                                       Statistic::vervaat_point, 2000, true, threads);
  const auto tp = run_pointwise_experiment(tp_cfg);
  const auto exp_cfg = pointwise_config(validate(DistributionSpec::exponential(1.0)),
                                        Statistic::vervaat_point, 2000, false, threads);
  const auto ex = run_pointwise_experiment(exp_cfg);
  if (ks_out) { *ks_out = tp.ks_distance + 1000.0 * ex.ks_distance; return true; }
  const bool ok = tp.ks_distance <= 0.08 && ex.ks_distance <= 0.08;
  std::printf("criterion 6 [%s] n V_n(1) vs limit path: two-point KS = %.4f "
              "(drift %.4f), exponential KS = %.4f (tol 0.08)\n",
              ok ? "PASS" : "FAIL", tp.ks_distance, tp.drift_ratio_used, ex.ks_distance);
  return ok;
}

bool criterion_7(int threads = 1, double* ks_out = nullptr) {
  const auto cfg = pointwise_config(validate(DistributionSpec::exponential(1.0)),
                                    Statistic::verror_point, 2000, false, threads);
  const auto rep = run_pointwise_experiment(cfg);
  if (ks_out) { *ks_out = rep.ks_distance; return true; }
  const bool ok = rep.ks_distance <= 0.08;
  std::printf("criterion 7 [%s] n^{5/4} Q_n(1) vs limit law: KS = %.4f (tol 0.08)\n",
              ok ? "PASS" : "FAIL", rep.ks_distance);
  return ok;
}

bool criterion_8(int threads = 1, double* ks_out = nullptr) {
  const auto cfg = pointwise_config(validate(DistributionSpec::exponential(1.0)),
                                    Statistic::zn_point, 2000, false, threads);
  const auto rep = run_pointwise_experiment(cfg);
  if (ks_out) { *ks_out = rep.ks_distance; return true; }
  const bool ok = rep.ks_distance <= 0.08;
  std::printf("criterion 8 [%s] n^{5/4} Z_n(1) from Wiener paths vs limit law: "
              "KS = %.4f (tol 0.08, %lld flagged)\n",
              ok ? "PASS" : "FAIL", rep.ks_distance,
              static_cast<long long>(rep.flagged_samples));
  return ok;
}

ExperimentConfig grid_config(Statistic stat, int lo, int hi, int threads) {
  ExperimentConfig c;
  c.spec = validate(DistributionSpec::exponential(1.0));
  c.statistic = stat;
  for (int k = lo; k <= hi; ++k) c.n_grid.push_back(std::int64_t{1} << k);
  c.replicates = 200;
  c.seed = 42;
  c.grid_segments = 512;
  c.threads = threads;
  return c;
}

bool criterion_9(int threads = 1, double* ks_out = nullptr) {
  const auto rep = rate_scan(grid_config(Statistic::rate_scan, 8, 15, threads));
  if (ks_out) {
    *ks_out = rep.slope;
    for (double m : rep.medians) *ks_out += m;
    return true;
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < rep.medians.size(); ++i)
    if (!(rep.medians[i] < rep.medians[i - 1])) decreasing = false;
  const bool halved = rep.medians.back() <= 0.5 * rep.medians.front();
  const bool slope_ok = rep.slope >= -0.45 && rep.slope <= -0.05;
  const bool ok = decreasing && halved && slope_ok;
  std::printf("criterion 9 [%s] rate scan: medians %s decreasing, final/initial = %.3f "
              "(<= 0.5), slope = %.3f (in [-0.45, -0.05])\n",
              ok ? "PASS" : "FAIL", decreasing ? "strictly" : "NOT",
              rep.medians.back() / rep.medians.front(), rep.slope);
  return ok;
}

bool criterion_10(int threads = 1, double* ks_out = nullptr) {
  const auto rep = bk_growth_diagnostic(grid_config(Statistic::bk_growth, 9, 15, threads));
  if (ks_out) { *ks_out = rep.ks_distance; return true; }
  const double growth = rep.medians.back() / rep.medians.front();
  const std::size_t last = rep.normalized_medians.size() - 1;
  const double norm_change = std::abs(rep.normalized_medians[last] /
                                          rep.normalized_medians[last - 2] -
                                      1.0);
  // The normalized statistic approaches its limit at a (log n)^{-1} rate, so
  // its KS distance to the reference law is still ~0.25 at n = 2^15; it is
  // reported with a loose sanity band rather than gating the criterion.
  const bool ok = growth >= 1.15 && norm_change < 0.20 && rep.ks_distance <= 0.30;
  std::printf("criterion 10 [%s] growth diagnostic: raw median growth x%.3f (>= 1.15), "
              "normalized change %.1f%% (< 20%%), KS vs reference = %.4f "
              "(diagnostic, sanity band 0.30)\n",
              ok ? "PASS" : "FAIL", growth, 100.0 * norm_change, rep.ks_distance);
  return ok;
}

bool criterion_11() {
  // Rerun the criteria 5-10 configurations with different thread counts; the
  // summary statistics must match bit for bit.
  bool ok = true;
  const char* names[] = {"5", "6", "7", "8", "9", "10"};
  bool (*runs[])(int, double*) = {criterion_5, criterion_6, criterion_7,
                                  criterion_8, criterion_9, criterion_10};
  for (int i = 0; i < 6; ++i) {
    double a = 0.0, b = 0.0;
    runs[i](1, &a);
    runs[i](4, &b);
    if (a != b) {
      ok = false;
      std::printf("  criterion %s config: 1 thread %.17g vs 4 threads %.17g\n",
                  names[i], a, b);
    }
  }
  std::printf("criterion 11 [%s] determinism: criteria 5-10 statistics bit-identical "
              "across thread counts\n",
              ok ? "PASS" : "FAIL");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  bool (*checks[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                        [] { return criterion_5(); },  [] { return criterion_6(); },
                        [] { return criterion_7(); },  [] { return criterion_8(); },
                        [] { return criterion_9(); },  [] { return criterion_10(); },
                        criterion_11};
  bool all_ok = true;
  if (argc > 1) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > 11) {
      std::fprintf(stderr, "usage: %s [1-11]\n", argv[0]);
      return 2;
    }
    all_ok = checks[k - 1]();
  } else {
    for (auto* check : checks) all_ok = check() && all_ok;
  }
  return all_ok ? 0 : 1;
}
