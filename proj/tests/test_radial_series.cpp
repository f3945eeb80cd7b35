#include "doctest.h"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "mathieu/angular_basis.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/radial_series.hpp"

using namespace mathieu;
namespace odeint = boost::numeric::odeint;
constexpr double pi = std::numbers::pi;

namespace {

double wronskian(const SeriesResult& s) {
  return s.value.real() * s.derivative.imag() - s.derivative.real() * s.value.imag();
}

}  // namespace

TEST_CASE("first and second kind have a constant Wronskian") {
  const auto t = build_tables(pi * pi, 12);
  for (auto c : {SymmetryClass::Even, SymmetryClass::Odd}) {
    for (int n : {1, 2, 5, 9}) {
      const double w0 = wronskian(radial_series(t, c, n, 0.0));
      CHECK(std::abs(w0) > 0.0);
      for (double u : {0.2, 0.7, 1.3, 2.0}) CHECK(wronskian(radial_series(t, c, n, u)) == doctest::Approx(w0).epsilon(1e-9));
    }
  }
}

TEST_CASE("series satisfies the radial equation") {
  const double th = pi * pi;
  const auto t = build_tables(th, 10);
  const double d = 1e-5;
  for (auto c : {SymmetryClass::Even, SymmetryClass::Odd}) {
    for (int n : {1, 4, 8}) {
      const double a = t.characteristic(c, n);
      for (double u : {0.3, 0.9, 1.6}) {
        const auto s = radial_series(t, c, n, u);
        const auto d2 = (radial_series(t, c, n, u + d).derivative - radial_series(t, c, n, u - d).derivative) / (2 * d);
        const cplx lhs = d2 - (a - 2.0 * th * std::cosh(2.0 * u)) * s.value;
        CHECK(std::abs(lhs) < 1e-6 * (std::abs(d2) + std::abs(a * s.value)));
      }
    }
  }
}

TEST_CASE("first kind agrees with direct integration") {
  // Ce'' = (a - 2 theta cosh 2u) Ce from the series values at u = 0.
  const double th = pi * pi;
  const auto t = build_tables(th, 10);
  for (auto c : {SymmetryClass::Even, SymmetryClass::Odd}) {
    const int n = 3;
    const double a = t.characteristic(c, n);
    const auto s0 = radial_series(t, c, n, 0.0);
    std::array<double, 2> y{s0.value.real(), s0.derivative.real()};
    auto rhs = [&](const std::array<double, 2>& x, std::array<double, 2>& dx, double u) {
      dx[0] = x[1];
      dx[1] = (a - 2.0 * th * std::cosh(2.0 * u)) * x[0];
    };
    odeint::integrate_adaptive(
        odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_dopri5<std::array<double, 2>>()), rhs, y, 0.0, 1.5,
        1e-3);
    const auto s1 = radial_series(t, c, n, 1.5);
    const double scale = std::abs(s1.value) + std::abs(s0.value);
    CHECK(std::abs(y[0] - s1.value.real()) < 1e-9 * scale);
  }
}

TEST_CASE("boundary behaviour at u = 0") {
  const auto t = build_tables(pi * pi, 10);
  for (int n = 0; n <= 10; ++n) {
    const auto e = radial_series(t, SymmetryClass::Even, n, 0.0);
    CHECK(std::abs(e.derivative.real()) < 1e-10 * std::abs(e.value));  // Ce'(0) = 0
    if (n == 0) continue;
    const auto o = radial_series(t, SymmetryClass::Odd, n, 0.0);
    CHECK(std::abs(o.value.real()) < 1e-10 * std::abs(o.derivative));  // Se(0) = 0
  }
}

TEST_CASE("closed-form prefactors agree") {
  const auto t = build_tables(pi * pi, 12);
  for (int n = 0; n <= 12; ++n) {
    const auto p = prefactor(t, SymmetryClass::Even, n);
    CHECK(p.trusted);
    CHECK(p.discrepancy < kPrefactorTrustTol);
    CHECK(std::abs(p.boundary.real()) == 0.0);
    // Me1'(0) is i Fey'(0); the series must reproduce it
    const auto s = radial_series(t, SymmetryClass::Even, n, 0.0);
    CHECK(std::abs(s.derivative - p.boundary) < 1e-8 * std::abs(p.boundary));
  }
  const auto all = prefactors(t);
  CHECK(all.c.size() == 13);
}

TEST_CASE("kind decomposition") {
  const auto t = build_tables(2.0, 6);
  const auto k = radial_kind(t, SymmetryClass::Even, 2, 0.8);
  CHECK(k.first_kind() == k.me1.real());
  CHECK(k.fourth_kind() == std::conj(k.me1));
  CHECK(std::abs(me1_series(t, 2, 0.8) - k.me1) < 1e-14 * std::abs(k.me1));
  CHECK(std::abs(ne1_series(t, 2, 0.8) - radial_kind(t, SymmetryClass::Odd, 2, 0.8).me1) < 1e-14);
}

TEST_CASE("radial domain checks") {
  const auto t = build_tables(1.0, 4);
  CHECK_THROWS_AS(radial_series(t, SymmetryClass::Even, 2, -0.1), DomainError);
  CHECK_THROWS_AS(radial_series(t, SymmetryClass::Odd, 0, 0.1), DomainError);
  CHECK_THROWS_AS(radial_series(t, SymmetryClass::Even, 5, 0.1), DomainError);
}
