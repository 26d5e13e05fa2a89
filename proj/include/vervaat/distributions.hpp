// Catalog, validation and seeded sampling of increment distributions.
//
// Standing assumptions on the increment law X: E X = mu > 0, 0 < Var X
// (unless explicitly degenerate), E X^4 < infinity.  Everything downstream
// relies on them.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vervaat/rng.hpp"

namespace vervaat {

enum class DistKind { exponential, two_point, shifted_normal, uniform, deterministic };

std::string kind_name(DistKind kind);

struct DistributionSpec {
  DistKind kind = DistKind::exponential;
  // Parameter meaning by kind:
  //   exponential:    p0 = rate
  //   two_point:      p0 = a, p1 = b, p2 = P(X = b)
  //   shifted_normal: p0 = mean, p1 = sd
  //   uniform:        p0 = lo, p1 = hi
  //   deterministic:  p0 = c
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;
  bool allow_degenerate = false;

  static DistributionSpec exponential(double rate);
  static DistributionSpec two_point(double a, double b, double p);
  static DistributionSpec shifted_normal(double mean, double sd);
  static DistributionSpec uniform(double lo, double hi);
  static DistributionSpec deterministic(double c);
};

// A spec whose analytic moments and support flags have been computed and
// whose parameters passed validation.
struct ValidatedSpec {
  DistributionSpec spec;
  double mu = 0.0;      // E X
  double sigma2 = 0.0;  // Var X
  bool m4_finite = true;
  bool as_positive = false;     // P(X > 0) = 1
  bool as_nonnegative = false;  // P(X >= 0) = 1

  double sigma() const;
  std::string name() const;
};

// Computes analytic moments and flags; rejects mu <= 0, zero variance
// (unless allow_degenerate) and malformed two-point parameters.
ValidatedSpec validate(const DistributionSpec& spec);

// One i.i.d. draw from the validated law.
double draw_increment(const ValidatedSpec& spec, Rng& rng);

// Deterministic in (spec, count, seed); extending count with the same seed
// preserves the prefix.
std::vector<double> sample_increments(const ValidatedSpec& spec, std::size_t count,
                                      std::uint64_t seed);

// The non-degenerate laws every sweep-style test runs over.
std::vector<ValidatedSpec> catalog();

// JSON form: {"kind": "...", "params": {...}, "allow_degenerate": false}.
nlohmann::json spec_to_json(const ValidatedSpec& spec);
DistributionSpec spec_from_json(const nlohmann::json& j);

// CLI shorthand, e.g. "exp:1", "twopoint:-1,1,0.7", "normal:1,1",
// "uniform:0,2", "det:1".
DistributionSpec parse_dist(const std::string& text);

}  // namespace vervaat
