#include <doctest.h>

#include <cmath>

#include "vervaat/summation.hpp"
#include "vervaat/vervaat_process.hpp"

using namespace vervaat;

namespace {

// Brute-force Riemann evaluation of the defining integrals on the same
// realized path.  Independent of the breakpoint arithmetic it checks.
struct QuadratureOracle {
  const WalkPath& w;
  double mesh;

  double barS(double s) const {
    const double n = static_cast<double>(w.n);
    const std::int64_t k = static_cast<std::int64_t>(std::floor(n * s + 1e-9));
    return w.partial_sums[static_cast<std::size_t>(k)] / (n * w.mu) - s;
  }

  double barN(double s) const {
    const double n = static_cast<double>(w.n);
    return static_cast<double>(first_passage(w, n * w.mu * s)) / n - s;
  }

  double V(double t) const {
    KahanAccumulator acc;
    const std::int64_t steps = static_cast<std::int64_t>(std::round(t / mesh));
    for (std::int64_t i = 0; i < steps; ++i) {
      const double s = (static_cast<double>(i) + 0.5) * mesh;  // midpoint rule
      acc.add(barS(s) + barN(s));
    }
    return acc.total() * mesh;
  }

  double A(double t) const {
    const double u = static_cast<double>(first_passage(w, w.level() * t)) /
                     static_cast<double>(w.n);
    const double bst = barS(t);
    KahanAccumulator acc;
    const double lo = std::min(u, t), hi = std::max(u, t);
    const std::int64_t steps = static_cast<std::int64_t>(std::round((hi - lo) / mesh));
    for (std::int64_t i = 0; i < steps; ++i) {
      const double s = lo + (static_cast<double>(i) + 0.5) * mesh;
      acc.add(barS(s) - bst);
    }
    const double val = acc.total() * mesh;
    return u <= t ? val : -val;
  }
};

}  // namespace

TEST_CASE("unit-step walk: exact hand values") {
  const auto det = validate(DistributionSpec::deterministic(1.0));
  for (std::int64_t n : {4, 7, 32}) {
    const auto w = build_walk(det, n, 0);
    const VervaatEvaluator ev(w, true);
    const auto v = ev.integrate_V(1.0);
    const double nd = static_cast<double>(n);
    CHECK(v.intS == doctest::Approx(-0.5 / nd).epsilon(1e-12));
    CHECK(v.intN == doctest::Approx(0.5 / nd).epsilon(1e-12));
    CHECK(v.V == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ev.compute_A(1.0) == doctest::Approx(0.5 / (nd * nd)).epsilon(1e-12));
    CHECK(ev.repr_ordinary(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(ev.identity_residual(1.0)) < 1e-14);
  }
}

TEST_CASE("t=0 boundary") {
  const auto exp1 = validate(DistributionSpec::exponential(1.0));
  const auto w = build_walk(exp1, 100, 4);
  const VervaatEvaluator ev(w, true);
  const auto v = ev.integrate_V(0.0);
  CHECK(v.V == 0.0);
  CHECK(v.intS == 0.0);
  CHECK(v.intN == 0.0);
  CHECK(ev.compute_Q(0.0, 0.0) == 0.0);
  // The exact identity must hold at the boundary as well.
  CHECK(std::abs(ev.identity_residual(0.0)) < 1e-12);
}

TEST_CASE("V splits into intS + intN") {
  for (const auto& spec : catalog()) {
    const auto w = build_walk(spec, 250, 9);
    const VervaatEvaluator ev(w, spec.as_positive);
    for (double t : positive_grid(33)) {
      const auto v = ev.integrate_V(t);
      CHECK(std::abs(v.V - (v.intS + v.intN)) <= 1e-12);
    }
  }
}

TEST_CASE("quadrature cross-check of V and A") {
  const auto tp = validate(DistributionSpec::two_point(-1.0, 1.0, 0.7));
  const auto w = build_walk(tp, 50, 321);
  const VervaatEvaluator ev(w, false);
  const QuadratureOracle oracle{w, 1e-6};
  for (double t : {0.25, 0.5, 0.73, 1.0}) {
    CHECK(std::abs(ev.integrate_V(t).V - oracle.V(t)) < 1e-8);
    CHECK(std::abs(ev.compute_A(t) - oracle.A(t)) < 1e-8);
  }
}

TEST_CASE("quadrature cross-check on an almost-surely positive path") {
  const auto exp1 = validate(DistributionSpec::exponential(1.0));
  const auto w = build_walk(exp1, 40, 5);
  const VervaatEvaluator ev(w, true);
  const QuadratureOracle oracle{w, 1e-6};
  for (double t : {0.33, 0.8, 1.0}) {
    CHECK(std::abs(ev.integrate_V(t).V - oracle.V(t)) < 1e-7);
    CHECK(std::abs(ev.compute_A(t) - oracle.A(t)) < 1e-7);
  }
}

TEST_CASE("representation equivalence across the catalog") {
  for (const auto& spec : catalog()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto w = build_walk(spec, 1000, seed);
      const VervaatEvaluator ev(w, spec.as_positive);
      for (double t : positive_grid(33)) {
        const double v = ev.integrate_V(t).V;
        CHECK(std::abs(v - ev.repr_general(t)) <= 1e-9);
        if (spec.as_positive) CHECK(std::abs(v - ev.repr_ordinary(t)) <= 1e-9);
        CHECK(std::abs(ev.identity_residual(t)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("ordinary representation rejected for signed increments") {
  const auto tp = validate(DistributionSpec::two_point(-1.0, 1.0, 0.7));
  const auto w = build_walk(tp, 100, 1);
  const VervaatEvaluator ev(w, tp.as_positive);
  CHECK_THROWS_AS(static_cast<void>(ev.repr_ordinary(0.5)), std::invalid_argument);
}

TEST_CASE("Q reduces to V - barS^2/2 for zero drift and vanishes with the drift term") {
  const auto exp1 = validate(DistributionSpec::exponential(1.0));
  const auto w = build_walk(exp1, 500, 77);
  const VervaatEvaluator ev(w, true);
  for (double t : positive_grid(10)) {
    const auto v = ev.integrate_V(t);
    const auto p = eval_at(w, t);
    CHECK(ev.compute_Q(t, 0.0) ==
          doctest::Approx(v.V - 0.5 * p.barS * p.barS).epsilon(1e-12));
    CHECK(ev.compute_Q(t, -0.25) == doctest::Approx(ev.compute_Q(t, 0.0) + 0.25 * t));
  }
}

TEST_CASE("median scaled Q decreases with n (pointwise rate trend)") {
  const auto exp1 = validate(DistributionSpec::exponential(1.0));
  auto median_abs_nq = [&](std::int64_t n) {
    std::vector<double> vals;
    for (std::uint64_t seed = 0; seed < 401; ++seed) {
      const auto w = build_walk(exp1, n, derive_stream(1234, seed));
      const VervaatEvaluator ev(w, true);
      vals.push_back(std::abs(static_cast<double>(n) * ev.compute_Q(1.0, 0.0)));
    }
    std::sort(vals.begin(), vals.end());
    return vals[vals.size() / 2];
  };
  const double small = median_abs_nq(1 << 10);
  const double large = median_abs_nq(1 << 15);
  CHECK(large < small);
}
