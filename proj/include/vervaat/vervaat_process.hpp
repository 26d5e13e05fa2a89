// Exact closed-form evaluation of the Vervaat-type process V_n, the boundary
// integral A_n, both algebraic representations of V_n, the exact integral
// identity linking them, and the Vervaat-error process Q_n.
//
// All integrands are step functions, so the integrals are computed by
// breakpoint arithmetic with compensated prefix sums; the representation
// identities then hold to machine precision and are tested at 1e-9.

#pragma once

#include <cstdint>
#include <vector>

#include "vervaat/ladder.hpp"
#include "vervaat/walk.hpp"

namespace vervaat {

struct VervaatValues {
  double t = 0;
  double V = 0;     // integral of barS + barN over [0, t]
  double intS = 0;  // integral of barS over [0, t]
  double intN = 0;  // integral of barN over [0, t]
};

// Per-path evaluator.  The referenced path must outlive the evaluator.
class VervaatEvaluator {
 public:
  // as_positive enables the ordinary-renewal representation (it is only
  // valid when P(X > 0) = 1).
  explicit VervaatEvaluator(const WalkPath& path, bool as_positive = false);
  VervaatEvaluator(const WalkPath& path, LadderDecomposition ladder, bool as_positive);

  VervaatValues integrate_V(double t) const;

  // A_n(t) = signed integral of (barS(s) - barS(t)) from N_n(t) to t.
  double compute_A(double t) const;

  // Ordinary-renewal representation A - barS*barN - barN^2/2; requires an
  // almost-surely positive increment law.
  double repr_ordinary(double t) const;

  // General representation A + B - M^2/2 + barS^2/2.
  double repr_general(double t) const;

  // [intN(t) + intS over [0, N_n(t)]] - [-barN(t)^2/2 + B(t)]; exactly zero
  // up to floating-point error.
  double identity_residual(double t) const;

  // Q_n(t) = V_n(t) - barS(t)^2/2 - drift_ratio * t.
  double compute_Q(double t, double drift_ratio) const;

  double compute_B(double t) const;
  const LadderDecomposition& ladder() const { return ladder_; }

 private:
  double int_Sn_raw(double x) const;  // integral of S_n over [0, x]
  double int_barS(double x) const;    // integral of barS over [0, x]
  double barS(double t) const;
  double barN(double t) const;
  double renewal_time(double t) const;  // N_n(t) = N(n mu t) / n

  const WalkPath* path_;
  LadderDecomposition ladder_;
  std::vector<double> prefix_S_;  // prefix_S_[k] = S_0 + ... + S_{k-1} (compensated)
  bool as_positive_;
};

}  // namespace vervaat
