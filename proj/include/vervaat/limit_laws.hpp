// Wiener path generation, the Wiener functional Z_n, and direct samplers for
// every limit law verified by the experiment harness.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vervaat {

struct WienerPath {
  double horizon = 0.0;
  double mesh = 0.0;
  std::vector<double> values;  // W at k*mesh, k = 0..K; W(0) = 0
  std::uint64_t seed = 0;

  // Linear interpolation between grid points; requires 0 <= t <= horizon.
  double operator()(double t) const;

  // Same, but W(t) = 0 for t < 0 (used by the Z_n boundary policy).
  double value_or_zero(double t) const;

  // sup |W| over [0, horizon] (attained at a knot for the interpolant).
  double sup_abs() const;
};

WienerPath wiener_path(double horizon, double mesh, std::uint64_t seed);

struct ZnSample {
  double value = 0.0;
  // Set when the integrand needed W outside [0, horizon]; such draws are
  // excluded from distributional experiments and counted in the report.
  bool flagged = false;
};

// Z_n(t) = integral over [0, Y_n(t)] of (Y_n(t-x) - Y_n(t)) dx, where
// Y_n(t) = sigma/(n mu) W(nt); signed bounds when Y_n(t) < 0.  Trapezoid
// quadrature with at least `subdivisions` steps over the (short) x-range.
ZnSample z_n_functional(const WienerPath& w, double n, double sigma, double mu, double t,
                        int subdivisions = 256);

// Pointwise limit of n^{1/4} R_n*(t):
// t^{1/4} sigma^{1/2} mu^{-1/2} * N * |N~|^{1/2}, N, N~ independent normals.
double sample_limit_bk(double t, double sigma, double mu, std::uint64_t seed);

// Pointwise limit of n^{5/4} Q_n(t):
// (1/3)^{1/2} (sigma/mu)^{5/2} t^{3/4} * N * |N~|^{3/2}.
double sample_limit_verror(double t, double sigma, double mu, std::uint64_t seed);

// Limiting path of n V_n: (1/2)((sigma/mu) W(t))^2 + drift_ratio * t.
std::vector<double> limit_path_vervaat(const WienerPath& w, double sigma, double mu,
                                       double drift_ratio, std::span<const double> grid);

// sigma^{1/2} mu^{-1/2} ||W||^{1/2} from a fine-mesh path on [0,1]; the
// reference draw for the sup-norm growth diagnostic.
double sup_half_norm_reference(double sigma, double mu, std::uint64_t seed, int log2_mesh = 14);

}  // namespace vervaat
