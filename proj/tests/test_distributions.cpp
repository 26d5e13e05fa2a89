#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "vervaat/distributions.hpp"
#include "vervaat/summation.hpp"

using namespace vervaat;

TEST_CASE("analytic moments of catalog kinds") {
  const auto exp1 = validate(DistributionSpec::exponential(1.0));
  CHECK(exp1.mu == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exp1.sigma2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exp1.as_positive);
  CHECK(exp1.as_nonnegative);

  const auto tp = validate(DistributionSpec::two_point(-1.0, 1.0, 0.7));
  CHECK(tp.mu == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(tp.sigma2 == doctest::Approx(0.84).epsilon(1e-12));
  CHECK_FALSE(tp.as_nonnegative);

  const auto uni = validate(DistributionSpec::uniform(0.0, 2.0));
  CHECK(uni.mu == doctest::Approx(1.0));
  CHECK(uni.sigma2 == doctest::Approx(1.0 / 3.0));
  CHECK(uni.as_positive);

  const auto det = validate(DistributionSpec::deterministic(1.0));
  CHECK(det.mu == 1.0);
  CHECK(det.sigma2 == 0.0);
  CHECK(det.as_positive);
}

TEST_CASE("validation rejects laws outside the standing assumptions") {
  CHECK_THROWS(validate(DistributionSpec::two_point(-1.0, 1.0, 0.4)));  // mu = -0.2
  CHECK_THROWS(validate(DistributionSpec::two_point(-1.0, 1.0, 0.0)));  // p outside (0,1)
  CHECK_THROWS(validate(DistributionSpec::two_point(1.0, 1.0, 0.5)));   // a = b
  CHECK_THROWS(validate(DistributionSpec::exponential(0.0)));
  CHECK_THROWS(validate(DistributionSpec::shifted_normal(-1.0, 1.0)));
  DistributionSpec zero_var = DistributionSpec::shifted_normal(1.0, 0.0);
  CHECK_THROWS(validate(zero_var));
  zero_var.allow_degenerate = true;
  CHECK_NOTHROW(validate(zero_var));
}

TEST_CASE("deterministic law and determinism contract") {
  const auto det = validate(DistributionSpec::deterministic(1.0));
  const auto xs = sample_increments(det, 3, 99);
  CHECK(xs == std::vector<double>{1.0, 1.0, 1.0});

  const auto exp1 = validate(DistributionSpec::exponential(1.0));
  CHECK(sample_increments(exp1, 1000, 7) == sample_increments(exp1, 1000, 7));
}

TEST_CASE("prefix property: extending count preserves the prefix") {
  for (const auto& spec : catalog()) {
    const auto shorter = sample_increments(spec, 100, 5);
    const auto longer = sample_increments(spec, 250, 5);
    CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
  }
}

TEST_CASE("sample mean of exponential draws sits in the CLT band") {
  const auto exp1 = validate(DistributionSpec::exponential(1.0));
  const auto xs = sample_increments(exp1, 100000, 7);
  const double mean = kahan_total(xs) / static_cast<double>(xs.size());
  CHECK(std::abs(mean - 1.0) <= 3.0 / std::sqrt(1e5));
}

TEST_CASE("sample moments match analytic moments within 4 standard errors") {
  for (const auto& spec : catalog()) {
    const std::size_t n = 1000000;
    const auto xs = sample_increments(spec, n, 11);
    KahanAccumulator s1, s2;
    for (double x : xs) {
      s1.add(x);
      s2.add((x - spec.mu) * (x - spec.mu));
    }
    const double mean = s1.total() / static_cast<double>(n);
    const double var = s2.total() / static_cast<double>(n);
    const double se_mean = spec.sigma() / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean - spec.mu) <= 4.0 * se_mean);
    // Conservative 4-sigma band for the variance estimate.
    KahanAccumulator s4;
    for (double x : xs) {
      const double c = (x - spec.mu) * (x - spec.mu) - spec.sigma2;
      s4.add(c * c);
    }
    const double se_var = std::sqrt(s4.total() / static_cast<double>(n)) /
                          std::sqrt(static_cast<double>(n));
    CHECK(std::abs(var - spec.sigma2) <= 4.0 * se_var);
  }
}

TEST_CASE("support flags hold pathwise") {
  for (const auto& spec : catalog()) {
    const auto xs = sample_increments(spec, 20000, 3);
    if (spec.as_positive)
      CHECK(std::all_of(xs.begin(), xs.end(), [](double x) { return x > 0.0; }));
    if (spec.spec.kind == DistKind::two_point)
      CHECK(std::all_of(xs.begin(), xs.end(),
                        [&](double x) { return x == spec.spec.p0 || x == spec.spec.p1; }));
  }
}

TEST_CASE("JSON round trip") {
  for (const auto& spec : catalog()) {
    const auto j = spec_to_json(spec);
    const auto back = validate(spec_from_json(j));
    CHECK(back.mu == spec.mu);
    CHECK(back.sigma2 == spec.sigma2);
    CHECK(back.name() == spec.name());
  }
}

TEST_CASE("CLI shorthand parsing") {
  const auto tp = validate(parse_dist("twopoint:-1,1,0.7"));
  CHECK(tp.spec.kind == DistKind::two_point);
  CHECK(tp.mu == doctest::Approx(0.4));
  CHECK(validate(parse_dist("exp:1")).as_positive);
  CHECK_THROWS(parse_dist("cauchy:0,1"));
  CHECK_THROWS(parse_dist("exp"));
}
