#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>

#include "qcl/errors.hpp"
#include "qcl/exact_volume.hpp"

using namespace qcl;
using boost::math::quadrature::gauss_kronrod;

namespace {

constexpr double kPi = 3.14159265358979323846;

double integrate(const std::function<double(double)>& fn, double lo, double hi) {
  return gauss_kronrod<double, 61>::integrate(fn, lo, hi, 15, 1e-13);
}

/// Double integral over the unit square, split along the kink a + f = 1.
/// The inner integral uses a single 61-point Kronrod rule per piece, which
/// keeps the outer integrand smooth enough for the adaptive outer rule.
double integrate_general(SpaceKind k) {
  using rule = gauss_kronrod<double, 61>;
  return integrate(
      [k](double a) {
        auto inner = [k, a](double f) { return fiber_volume(k, a, f); };
        return rule::integrate(inner, 0.0, 1.0 - a, 0, 0) + rule::integrate(inner, 1.0 - a, 1.0, 0, 0);
      },
      0.0, 1.0);
}

}  // namespace

TEST_CASE("total volumes match the closed forms") {
  CHECK(total_volume(SpaceKind::general_real) == doctest::Approx(4 * std::pow(kPi, 3) / 105).epsilon(1e-12));
  CHECK(total_volume(SpaceKind::general_complex) == doctest::Approx(2 * std::pow(kPi, 5) / 4725).epsilon(1e-12));
  CHECK(total_volume(SpaceKind::unital_real) == doctest::Approx(4 * kPi * kPi / 15).epsilon(1e-12));
  CHECK(total_volume(SpaceKind::unital_complex) == doctest::Approx(2 * std::pow(kPi, 4) / 315).epsilon(1e-12));
  CHECK(total_volume(SpaceKind::general_real) == doctest::Approx(1.18119).epsilon(1e-5));
}

TEST_CASE("fiber densities integrate to the totals") {
  CHECK(integrate_general(SpaceKind::general_real) ==
        doctest::Approx(total_volume(SpaceKind::general_real)).epsilon(1e-8));
  CHECK(integrate_general(SpaceKind::general_complex) ==
        doctest::Approx(total_volume(SpaceKind::general_complex)).epsilon(1e-8));
  for (SpaceKind k : {SpaceKind::unital_real, SpaceKind::unital_complex}) {
    const double v = integrate([k](double a) { return fiber_volume(k, a); }, 0.0, 1.0);
    CHECK(v == doctest::Approx(total_volume(k)).epsilon(1e-8));
  }
}

TEST_CASE("fiber density values") {
  CHECK(fiber_volume(SpaceKind::general_real, 0.5, 0.5) == doctest::Approx(16 * kPi * kPi / 45).epsilon(1e-12));
  CHECK(fiber_volume(SpaceKind::unital_real, 0.5) == doctest::Approx(kPi * kPi / 2).epsilon(1e-12));
  CHECK(fiber_volume(SpaceKind::unital_complex, 0.5) == doctest::Approx(kPi * kPi * kPi * kPi / 64).epsilon(1e-12));
  for (SpaceKind k : kAllSpaceKinds) {
    const std::optional<double> f0 = is_unital(k) ? std::nullopt : std::optional<double>(0.0);
    CHECK(fiber_volume(k, 0.0, f0) == 0.0);
  }
  // Continuity across the kink a + f = 1.
  for (SpaceKind k : {SpaceKind::general_real, SpaceKind::general_complex}) {
    const double a = 0.3;
    CHECK(fiber_volume(k, a, std::nextafter(0.7, 0.0)) == doctest::Approx(fiber_volume(k, a, 0.7)).epsilon(1e-12));
  }
}

TEST_CASE("fiber densities are symmetric") {
  for (SpaceKind k : {SpaceKind::general_real, SpaceKind::general_complex}) {
    for (double a = 0.05; a < 1.0; a += 0.1) {
      for (double f = 0.05; f < 1.0; f += 0.1) {
        const double v = fiber_volume(k, a, f);
        CHECK(v >= 0.0);
        CHECK(fiber_volume(k, f, a) == doctest::Approx(v).epsilon(1e-12));
        CHECK(fiber_volume(k, 1 - a, 1 - f) == doctest::Approx(v).epsilon(1e-9));
      }
    }
  }
  for (SpaceKind k : {SpaceKind::unital_real, SpaceKind::unital_complex})
    CHECK(fiber_volume(k, 0.2) == doctest::Approx(fiber_volume(k, 0.8)).epsilon(1e-12));
}

TEST_CASE("fiber_volume argument rules") {
  CHECK_THROWS_AS(fiber_volume(SpaceKind::unital_real, 0.3, 0.3), UsageError);
  CHECK_THROWS_AS(fiber_volume(SpaceKind::general_real, 0.3), UsageError);
  CHECK_THROWS_AS(fiber_volume(SpaceKind::general_real, 1.2, 0.3), DomainError);
  CHECK_THROWS_AS(fiber_volume(SpaceKind::general_complex, 0.2, -0.1), DomainError);
}

TEST_CASE("gamma, sphere surfaces and G integrals") {
  for (double x = 0.5; x < 12.0; x += 0.5) CHECK(gamma_function(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-14));
  CHECK(gamma_function(2.3) == doctest::Approx(std::tgamma(2.3)));
  CHECK(sphere_surface(2) == doctest::Approx(2 * kPi));
  CHECK(sphere_surface(3) == doctest::Approx(4 * kPi));
  CHECK(sphere_surface(4) == doctest::Approx(2 * kPi * kPi));
  CHECK_THROWS_AS(sphere_surface(0), DomainError);
  for (double a : {0.0, 1.0, 2.5, 4.0}) {
    for (double b : {0.5, 1.0, 1.5, 3.0}) {
      const double q = integrate([a, b](double x) { return std::pow(x, a) * std::pow(1 - x * x, b); }, 0, 1);
      CHECK(g_integral(a, b) == doctest::Approx(q).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(g_integral(-1.0, 1.0), DomainError);
}

TEST_CASE("grid maximum bounds the density") {
  for (SpaceKind k : kAllSpaceKinds) {
    const double m = fiber_volume_grid_max(k);
    CHECK(m > 0.0);
    if (is_unital(k)) CHECK(m == doctest::Approx(fiber_volume(k, 0.5)).epsilon(1e-6));
  }
  // The grid misses (1/2, 1/2) by half a cell.
  CHECK(fiber_volume_grid_max(SpaceKind::general_real) ==
        doctest::Approx(fiber_volume(SpaceKind::general_real, 0.5, 0.5)).epsilon(1e-5));
}
