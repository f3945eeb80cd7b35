#include "doctest.h"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "mathieu/angular_basis.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/quadrature.hpp"

using namespace mathieu;
namespace odeint = boost::numeric::odeint;
constexpr double pi = std::numbers::pi;

namespace {

// y'' + (a - 2 theta cos 2v) y = 0 from v = 0 with (y, y') = init, returns
// state at v = pi/2.
std::array<double, 2> shoot(double a, double theta, std::array<double, 2> init) {
  auto rhs = [&](const std::array<double, 2>& y, std::array<double, 2>& dy, double v) {
    dy[0] = y[1];
    dy[1] = -(a - 2.0 * theta * std::cos(2.0 * v)) * y[0];
  };
  odeint::integrate_adaptive(odeint::make_controlled(1e-14, 1e-14, odeint::runge_kutta_dopri5<std::array<double, 2>>()),
                             rhs, init, 0.0, pi / 2.0, 1e-3);
  return init;
}

// Characteristic value of the pi-periodic even mode nearest `guess`:
// y'(pi/2) = 0 solved by secant iteration.
double shoot_even_periodic(double theta, double guess) {
  auto f = [&](double a) { return shoot(a, theta, {1.0, 0.0})[1]; };
  double a0 = guess, a1 = guess + 1e-3;
  double f0 = f(a0), f1 = f(a1);
  for (int it = 0; it < 50 && std::abs(a1 - a0) > 1e-15 * std::abs(a1); ++it) {
    const double a2 = a1 - f1 * (a1 - a0) / (f1 - f0);
    a0 = a1;
    f0 = f1;
    a1 = a2;
    f1 = f(a1);
  }
  return a1;
}

}  // namespace

TEST_CASE("theta = 0 reduces to cos and sin") {
  const auto t = build_tables(0.0, 8, 40);
  for (int n = 0; n <= 8; ++n) {
    CHECK(t.characteristic(SymmetryClass::Even, n) == doctest::Approx(n * n).epsilon(1e-14));
    if (n >= 1) CHECK(t.characteristic(SymmetryClass::Odd, n) == doctest::Approx(n * n).epsilon(1e-14));
  }
  for (double v : {0.0, 0.3, 2.0}) {
    CHECK(angular_eval(t, SymmetryClass::Even, 3, v) == doctest::Approx(std::cos(3 * v)).epsilon(1e-14));
    CHECK(angular_eval(t, SymmetryClass::Odd, 2, v) ==
          doctest::Approx(std::sin(2 * v)).epsilon(1e-14).scale(1.0));
    // ce_0 = 1/sqrt(2) in the unit mean-square normalization
    CHECK(angular_eval(t, SymmetryClass::Even, 0, v) == doctest::Approx(1.0 / std::numbers::sqrt2));
  }
}

TEST_CASE("a0 at theta = 1") {
  const double tabulated = -0.455138604107414;
  const auto t = build_tables(1.0, 4, 100);
  const auto big = build_tables(1.0, 4, 400);
  const double a0 = t.characteristic(SymmetryClass::Even, 0);
  CHECK(a0 == doctest::Approx(tabulated).epsilon(1e-13));
  CHECK(std::abs(a0 - big.characteristic(SymmetryClass::Even, 0)) < 1e-14);
  CHECK(shoot_even_periodic(1.0, -0.4) == doctest::Approx(a0).epsilon(1e-11));
}

TEST_CASE("characteristic values against shooting at theta = pi^2") {
  const double th = pi * pi;
  const auto t = build_tables(th, 10);
  for (int n : {0, 2, 4, 8})
    CHECK(shoot_even_periodic(th, t.characteristic(SymmetryClass::Even, n) + 1e-4) ==
          doctest::Approx(t.characteristic(SymmetryClass::Even, n)).epsilon(1e-10));
}

TEST_CASE("angular functions solve the Mathieu equation") {
  const double th = pi * pi;
  const auto t = build_tables(th, 30);
  for (auto c : {SymmetryClass::Even, SymmetryClass::Odd}) {
    for (int n : {1, 5, 17, 30}) {
      const double a = t.characteristic(c, n);
      for (double v : {0.1, 0.9, 2.2, -1.3}) {
        const double y = angular_eval(t, c, n, v);
        const double y2 = angular_eval(t, c, n, v, 2);
        CHECK(std::abs(y2 + (a - 2.0 * th * std::cos(2.0 * v)) * y) < 1e-10 * std::max(1.0, a));
      }
    }
  }
}

TEST_CASE("orthonormality and sign convention") {
  const auto t = build_tables(pi * pi, 12);
  for (auto c : {SymmetryClass::Even, SymmetryClass::Odd}) {
    const int lo = c == SymmetryClass::Even ? 0 : 1;
    for (int m = lo; m <= 12; m += 3) {
      for (int n = m; n <= 12; n += 2) {
        const auto r = integrate_gk15(
            [&](double v) { return angular_eval(t, c, m, v) * angular_eval(t, c, n, v); }, 0.0, 2.0 * pi, 1e-13,
            1e-15);
        CHECK(std::abs(r.value / pi - (m == n ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
  for (int n = 0; n <= 12; ++n) {
    CHECK(angular_eval(t, SymmetryClass::Even, n, 0.0) > 0.0);
    if (n >= 1) CHECK(angular_eval(t, SymmetryClass::Odd, n, 0.0, 1) > 0.0);
  }
}

TEST_CASE("recursion residual and truncation drift are small") {
  const auto t = build_tables(pi * pi, 100, 200);
  CHECK(t.truncation_drift < 1e-10);
  for (int n : {0, 1, 50, 100}) {
    CHECK(recursion_residual(t, SymmetryClass::Even, n) < 1e-12);
    if (n >= 1) CHECK(recursion_residual(t, SymmetryClass::Odd, n) < 1e-12);
  }
}

TEST_CASE("angular_eval_all matches single evaluations") {
  const auto t = build_tables(4.0, 15);
  const auto all = angular_eval_all(t, SymmetryClass::Odd, 0.77, 1);
  for (int n = 1; n <= 15; ++n) CHECK(all[n] == doctest::Approx(angular_eval(t, SymmetryClass::Odd, n, 0.77, 1)));
}

TEST_CASE("angular domain checks") {
  CHECK_THROWS_AS(build_tables(-1.0, 5), DomainError);
  CHECK_THROWS_AS(build_tables(1.0, 50, 20), ConfigError);
  const auto t = build_tables(1.0, 5);
  CHECK_THROWS_AS(angular_eval(t, SymmetryClass::Odd, 0, 0.1), DomainError);
  CHECK_THROWS_AS(angular_eval(t, SymmetryClass::Even, 6, 0.1), DomainError);
}
