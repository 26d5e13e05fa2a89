// Compensated (Kahan) summation.  The Vervaat integrals accumulate sums of
// partial sums that reach magnitude ~n^2; plain accumulation would not meet
// the 1e-9 residual targets of the exact-identity tests.

#pragma once

#include <span>

namespace vervaat {

struct KahanAccumulator {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  double total() const { return sum; }
};

inline double kahan_total(std::span<const double> values) {
  KahanAccumulator acc;
  for (double v : values) acc.add(v);
  return acc.total();
}

}  // namespace vervaat
