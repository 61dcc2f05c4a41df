#include "qcl/exact_volume.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qcl/errors.hpp"

namespace qcl {

using std::numbers::pi;

double gamma_function(double x) {
  const double twice = 2.0 * x;
  if (x > 0.0 && twice == std::floor(twice) && twice <= 340.0) {
    const int n2 = static_cast<int>(twice);
    if (n2 % 2 == 0) {
      double r = 1.0;  // (n-1)!
      for (int k = 2; k < n2 / 2; ++k) r *= k;
      return r;
    }
    // Gamma(n + 1/2) = (2n-1)!! / 2^n * sqrt(pi), n = (n2 - 1) / 2
    const int n = (n2 - 1) / 2;
    double r = std::sqrt(pi);
    for (int k = 1; k <= n; ++k) r *= (2.0 * k - 1.0) / 2.0;
    return r;
  }
  return std::tgamma(x);
}

double sphere_surface(int n) {
  if (n < 1) throw DomainError("sphere_surface: dimension must be >= 1");
  return n * std::pow(pi, 0.5 * n) / gamma_function(0.5 * n + 1.0);
}

double g_integral(double a, double b) {
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("g_integral: requires a > -1 and b > -1");
  return 0.5 * gamma_function(b + 1.0) * gamma_function(0.5 * (a + 1.0)) /
         gamma_function(0.5 * a + b + 1.5);
}

double total_volume(SpaceKind k) {
  switch (k) {
    case SpaceKind::general_real: return 4.0 * std::pow(pi, 3) / 105.0;
    case SpaceKind::general_complex: return 2.0 * std::pow(pi, 5) / 4725.0;
    case SpaceKind::unital_real: return 4.0 * pi * pi / 15.0;
    case SpaceKind::unital_complex: return 2.0 * std::pow(pi, 4) / 315.0;
  }
  return 0.0;
}

namespace {

void require_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(name) + " must lie in [0,1]");
}

double general_real_fiber(double a, double f) {
  const double k = 128.0 / 45.0 * pi * pi;
  if (a + f < 1.0) return k * std::pow(a * f, 1.5) * (5.0 * (1.0 - a) * (1.0 - f) - a * f);
  const double p = (1.0 - a) * (1.0 - f);
  return k * std::pow(p, 1.5) * (5.0 * a * f - p);
}

double general_complex_fiber(double a, double f) {
  const double k = 16.0 / 45.0 * std::pow(pi, 5);
  const double p = (1.0 - a) * (1.0 - f);
  const double r = a * f;
  const double common = 10.0 * (p - r) * (p - r) + 15.0 * r * p;
  if (a + f < 1.0) return k * r * r * r * (common - 9.0 * r * r);
  return k * p * p * p * (common - 9.0 * p * p);
}

}  // namespace

double fiber_volume(SpaceKind k, double a, std::optional<double> f) {
  if (is_unital(k) && f) throw UsageError("f must not be given for a unital kind");
  if (!is_unital(k) && !f) throw UsageError("f is required for a general kind");
  require_unit(a, "a");
  if (f) require_unit(*f, "f");
  double v = 0.0;
  switch (k) {
    case SpaceKind::general_real: v = general_real_fiber(a, *f); break;
    case SpaceKind::general_complex: v = general_complex_fiber(a, *f); break;
    case SpaceKind::unital_real: v = 8.0 * pi * pi * a * a * (1.0 - a) * (1.0 - a); break;
    case SpaceKind::unital_complex: {
      const double t = a * (1.0 - a);
      v = 4.0 * std::pow(pi, 4) * t * t * t * t;
      break;
    }
  }
  // Rounding can leave a tiny negative value on the zero set.
  return std::max(v, 0.0);
}

namespace {

double grid_max(SpaceKind k) {
  constexpr int kGrid = 2048;
  double best = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double a = static_cast<double>(i) / (kGrid - 1);
    if (is_unital(k)) {
      best = std::max(best, fiber_volume(k, a));
      continue;
    }
    for (int j = 0; j < kGrid; ++j)
      best = std::max(best, fiber_volume(k, a, static_cast<double>(j) / (kGrid - 1)));
  }
  return best;
}

}  // namespace

double fiber_volume_grid_max(SpaceKind k) {
  static const std::array<double, 4> cache = {
      grid_max(SpaceKind::general_real), grid_max(SpaceKind::general_complex),
      grid_max(SpaceKind::unital_real), grid_max(SpaceKind::unital_complex)};
  return cache[static_cast<std::size_t>(k)];
}

}  // namespace qcl
