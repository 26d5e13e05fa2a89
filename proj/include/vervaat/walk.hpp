// Random-walk realizations and the pointwise processes built from them.
//
// A walk is sampled until its partial sums first exceed n*mu, so the renewal
// count is defined on all of [0,1] including the overshoot at t = 1.

#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "vervaat/distributions.hpp"

namespace vervaat {

// floor(x) with a guard snapping values within 1e-9 of an integer upward,
// so grid points like t = k/n land on the intended index.
inline std::int64_t snapped_floor(double x) {
  const double r = std::nearbyint(x);
  if (std::abs(x - r) < 1e-9) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::floor(x));
}

struct WalkPath {
  std::vector<double> increments;    // X_1..X_m
  std::vector<double> partial_sums;  // S_0 = 0, S_1..S_m
  std::vector<double> running_max;   // max(S_1..S_k), k = 1..m (nondecreasing)
  std::int64_t n = 0;                // scale parameter
  double mu = 0.0;
  double sigma = 0.0;

  std::int64_t length() const { return static_cast<std::int64_t>(increments.size()); }
  double level() const { return static_cast<double>(n) * mu; }
};

// Samples increments until S_m > n*mu for the first time; m is minimal, so
// the final index is always a running-max record.  Throws if m exceeds
// cap_factor * n / mu * max(1, mu), which signals a mis-specified law.
WalkPath build_walk(const ValidatedSpec& spec, std::int64_t n, std::uint64_t seed,
                    double cap_factor = 100.0);

// N(level) = min{k >= 1 : S_k > level}, strict.  Throws "path too short"
// when level >= S_m.
std::int64_t first_passage(const WalkPath& path, double level);

struct ProcessPoint {
  double t = 0;
  double Sn = 0;     // S_[nt] / (n mu)
  double sn = 0;     // sqrt(n) mu/sigma (Sn - t)
  double Nn = 0;     // N(n mu t) / n
  double rn = 0;     // sqrt(n) mu/sigma (Nn - t)
  double barS = 0;   // Sn - t
  double barN = 0;   // Nn - t
  double Mn = 0;     // barS + barN
  double Rstar = 0;  // sn + rn
};

// Exact evaluation at one t in [0,1].  The standardized fields need
// sigma > 0; with standardized=false they are left NaN.
ProcessPoint eval_at(const WalkPath& path, double t, bool standardized = true);

std::vector<ProcessPoint> eval_processes(const WalkPath& path, std::span<const double> grid,
                                         bool standardized = true);

// Exact sup over [0, 1] of |R_n*|.  R_n* is piecewise linear with slope
// -2 sqrt(n) mu/sigma and upward jumps at t = k/n and at the running-max
// record times, so the sup is attained at a one-sided limit of an event
// point; a single merged sweep over both event families is exact.
double sup_abs_rstar(const WalkPath& path);

// Default evaluation grid {k/K : k = 0..K}.
std::vector<double> uniform_grid(std::size_t segments);

// Points strictly inside (0,1]: {k/K : k = 1..K}.
std::vector<double> positive_grid(std::size_t count);

// CSV columns t,Sn,sn,Nn,rn,barS,barN,Mn,Rstar at 17 significant digits.
void write_process_csv(std::ostream& os, std::span<const ProcessPoint> pts);

// Round-trip-exact decimal rendering of a binary64 value.
std::string fmt17(double x);

}  // namespace vervaat
