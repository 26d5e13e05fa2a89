#include "vervaat/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vervaat/rng.hpp"

namespace vervaat {

double WienerPath::operator()(double t) const {
  if (t < 0.0 || t > horizon * (1.0 + 1e-12))
    throw std::out_of_range("WienerPath: t outside [0, horizon]");
  const double pos = t / mesh;
  const std::size_t k = std::min(static_cast<std::size_t>(pos), values.size() - 2);
  const double frac = pos - static_cast<double>(k);
  return values[k] + frac * (values[k + 1] - values[k]);
}

double WienerPath::value_or_zero(double t) const { return t < 0.0 ? 0.0 : (*this)(t); }

double WienerPath::sup_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

WienerPath wiener_path(double horizon, double mesh, std::uint64_t seed) {
  if (!(mesh > 0) || !(horizon >= mesh))
    throw std::invalid_argument("wiener_path: need mesh > 0 and horizon >= mesh");
  WienerPath w;
  w.horizon = horizon;
  w.mesh = mesh;
  w.seed = seed;
  const std::size_t steps = static_cast<std::size_t>(std::ceil(horizon / mesh - 1e-12));
  w.values.resize(steps + 1);
  w.values[0] = 0.0;
  Rng rng(seed);
  const double sd = std::sqrt(mesh);
  for (std::size_t k = 1; k <= steps; ++k) w.values[k] = w.values[k - 1] + sd * rng.normal();
  return w;
}

ZnSample z_n_functional(const WienerPath& w, double n, double sigma, double mu, double t,
                        int subdivisions) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("z_n_functional: t must be in (0,1]");
  if (w.horizon < n * t) throw std::invalid_argument("z_n_functional: path horizon below n*t");
  ZnSample out;
  const double scale = sigma / (n * mu);
  const double yt = scale * w(n * t);
  if (yt == 0.0) return out;

  const int k = std::max(subdivisions, 256);
  const double h = yt / static_cast<double>(k);  // signed step
  // Integrand f(x) = Y_n(t-x) - Y_n(t); f(0) = 0.
  double acc = 0.0;
  for (int i = 1; i <= k; ++i) {
    const double x = static_cast<double>(i) * h;
    const double arg = n * (t - x);
    double wv;
    if (arg < 0.0) {
      wv = 0.0;
      out.flagged = true;
    } else if (arg > w.horizon) {
      wv = w.values.back();
      out.flagged = true;
    } else {
      wv = w(arg);
    }
    const double f = scale * wv - yt;
    acc += (i == k) ? 0.5 * f : f;
  }
  out.value = acc * h;
  return out;
}

namespace {

// Two independent standard normals as a pure function of the seed.
std::pair<double, double> normal_pair(std::uint64_t seed) {
  Rng rng(seed);
  const double a = rng.normal();
  const double b = rng.normal();
  return {a, b};
}

}  // namespace

double sample_limit_bk(double t, double sigma, double mu, std::uint64_t seed) {
  const auto [n1, n2] = normal_pair(seed);
  return std::pow(t, 0.25) * std::sqrt(sigma / mu) * n1 * std::sqrt(std::abs(n2));
}

double sample_limit_verror(double t, double sigma, double mu, std::uint64_t seed) {
  const auto [n1, n2] = normal_pair(seed);
  return std::sqrt(1.0 / 3.0) * std::pow(sigma / mu, 2.5) * std::pow(t, 0.75) * n1 *
         std::pow(std::abs(n2), 1.5);
}

std::vector<double> limit_path_vervaat(const WienerPath& w, double sigma, double mu,
                                       double drift_ratio, std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  const double c = sigma / mu;
  for (double t : grid) {
    const double z = c * w(t);
    out.push_back(0.5 * z * z + drift_ratio * t);
  }
  return out;
}

double sup_half_norm_reference(double sigma, double mu, std::uint64_t seed, int log2_mesh) {
  const double mesh = std::ldexp(1.0, -log2_mesh);
  const WienerPath w = wiener_path(1.0, mesh, seed);
  return std::sqrt(sigma / mu) * std::sqrt(w.sup_abs());
}

}  // namespace vervaat
