#include "vervaat/vervaat_process.hpp"

#include <stdexcept>

#include "vervaat/summation.hpp"

namespace vervaat {

VervaatEvaluator::VervaatEvaluator(const WalkPath& path, bool as_positive)
    : VervaatEvaluator(path, decompose(path), as_positive) {}

VervaatEvaluator::VervaatEvaluator(const WalkPath& path, LadderDecomposition ladder,
                                   bool as_positive)
    : path_(&path), ladder_(std::move(ladder)), as_positive_(as_positive) {
  const std::vector<double>& s = path.partial_sums;
  prefix_S_.resize(s.size() + 1);
  prefix_S_[0] = 0.0;
  KahanAccumulator acc;
  for (std::size_t k = 0; k < s.size(); ++k) {
    acc.add(s[k]);
    prefix_S_[k + 1] = acc.total();
  }
}

double VervaatEvaluator::barS(double t) const {
  const double n = static_cast<double>(path_->n);
  const std::int64_t k = snapped_floor(n * t);
  if (k < 0 || k > path_->length())
    throw std::runtime_error("vervaat: path too short at t=" + std::to_string(t));
  return path_->partial_sums[static_cast<std::size_t>(k)] / (n * path_->mu) - t;
}

double VervaatEvaluator::barN(double t) const { return renewal_time(t) - t; }

double VervaatEvaluator::renewal_time(double t) const {
  return static_cast<double>(first_passage(*path_, path_->level() * t)) /
         static_cast<double>(path_->n);
}

double VervaatEvaluator::int_Sn_raw(double x) const {
  const double n = static_cast<double>(path_->n);
  const std::int64_t k = snapped_floor(n * x);
  if (k < 0 || k > path_->length())
    throw std::runtime_error("vervaat: path too short for integral bound " + std::to_string(x));
  const double frac = n * x - static_cast<double>(k);
  const std::size_t ku = static_cast<std::size_t>(k);
  return (prefix_S_[ku] + frac * path_->partial_sums[ku]) / (n * n * path_->mu);
}

double VervaatEvaluator::int_barS(double x) const { return int_Sn_raw(x) - 0.5 * x * x; }

VervaatValues VervaatEvaluator::integrate_V(double t) const {
  VervaatValues v;
  v.t = t;
  v.intS = int_barS(t);

  // Integral of N_n over [0, t]: N_n is the step function taking nu_i / n on
  // [S_{nu_{i-1}}, S_{nu_i}) / (n mu).
  const double n = static_cast<double>(path_->n);
  const double nmu = n * path_->mu;
  const std::int64_t ell = ladder_count(ladder_, nmu * t);
  const std::size_t lu = static_cast<std::size_t>(ell);
  const double cum_full = lu >= 2 ? ladder_.prefix_nu_h[lu - 2] : 0.0;
  const double left = lu >= 2 ? ladder_.ladder_sums[lu - 2] : 0.0;
  const double int_Nn = cum_full / (n * nmu) +
                        static_cast<double>(ladder_.epochs[lu - 1]) / n * (t - left / nmu);
  v.intN = int_Nn - 0.5 * t * t;
  v.V = v.intS + v.intN;
  return v;
}

double VervaatEvaluator::compute_A(double t) const {
  const double u = renewal_time(t);
  // Signed: A = int_u^t barS ds - (t - u) barS(t).
  return (int_barS(t) - int_barS(u)) - (t - u) * barS(t);
}

double VervaatEvaluator::repr_ordinary(double t) const {
  if (!as_positive_)
    throw std::invalid_argument(
        "repr_ordinary: only valid for almost-surely positive increment laws");
  const double bs = barS(t);
  const double bn = barN(t);
  return compute_A(t) - bs * bn - 0.5 * bn * bn;
}

double VervaatEvaluator::repr_general(double t) const {
  const double bs = barS(t);
  const double m = bs + barN(t);
  return compute_A(t) + compute_B(t) - 0.5 * m * m + 0.5 * bs * bs;
}

double VervaatEvaluator::compute_B(double t) const {
  return vervaat::compute_B(ladder_, path_->n, path_->mu, t);
}

double VervaatEvaluator::identity_residual(double t) const {
  const double u = renewal_time(t);
  const double intN = integrate_V(t).intN;
  const double bn = barN(t);
  return (intN + int_barS(u)) - (-0.5 * bn * bn + compute_B(t));
}

double VervaatEvaluator::compute_Q(double t, double drift_ratio) const {
  const double bs = barS(t);
  return integrate_V(t).V - 0.5 * bs * bs - drift_ratio * t;
}

}  // namespace vervaat
