#include "doctest.h"

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "mathieu/errors.hpp"
#include "mathieu/quadrature.hpp"
#include "mathieu/special_functions.hpp"
#include "mathieu/tridiagonal.hpp"

using namespace mathieu;

namespace {

double rel(double got, double ref) { return std::abs(got - ref) / std::max(std::abs(ref), 1e-300); }

}  // namespace

TEST_CASE("Bessel J and Y agree with Boost") {
  for (double x : {0.05, 0.7, 1.0, 4.3, 19.7, 50.0, 150.0}) {
    for (int p = 0; p <= 60; ++p) {
      const double jr = boost::math::cyl_bessel_j(p, x);
      if (std::abs(jr) > 1e-280) {
        // near a zero of J_p only accuracy on the envelope is meaningful
        CHECK(std::abs(bessel_j(p, x) - jr) <= 1e-13 * std::abs(jr) + 1e-14 * std::sqrt(2.0 / (std::numbers::pi * x)));
      }
      const double yr = boost::math::cyl_neumann(p, x);
      if (std::isfinite(yr) && std::abs(yr) < 1e280)
        CHECK(std::abs(bessel_y(p, x) - yr) <= 1e-12 * std::abs(yr) + 1e-14 * std::sqrt(2.0 / (std::numbers::pi * x)));
    }
  }
}

TEST_CASE("scaled Bessel values survive underflow") {
  // J_p(x) ~ (x/2)^p / p! for x -> 0; log compared through lgamma
  const double x = 1e-3;
  const int p = 300;
  BesselBatch b(p, x, false);
  const Scaled s = b.j(p);
  const double log_got = std::log(std::abs(s.mant)) + s.exp2 * std::numbers::ln2;
  const double log_ref = p * std::log(x / 2.0) - std::lgamma(p + 1.0);
  CHECK(std::abs(log_got - log_ref) < 1e-6);
  CHECK(bessel_j(p, x) == 0.0);
}

TEST_CASE("hankel1 combines J and Y") {
  for (int p : {0, 1, 7}) {
    const double x = 3.3;
    const auto h = hankel1(p, x);
    CHECK(h.real() == doctest::Approx(bessel_j(p, x)).epsilon(1e-15));
    CHECK(h.imag() == doctest::Approx(bessel_y(p, x)).epsilon(1e-15));
  }
  const auto all = hankel1_all(20, 2.0);
  CHECK(all.size() == 21);
  CHECK(all[20].imag() == doctest::Approx(bessel_y(20, 2.0)).epsilon(1e-12));
}

TEST_CASE("Bessel product derivative matches finite differences") {
  const double s = 2.0, u = 0.4, d = 1e-5;
  BesselProducts p(30, s * std::exp(u), s * std::exp(-u));
  BesselProducts pp(30, s * std::exp(u + d), s * std::exp(-(u + d)));
  BesselProducts pm(30, s * std::exp(u - d), s * std::exp(-(u - d)));
  for (auto [a, b] : {std::pair{0, 0}, {3, 1}, {-2, 5}, {10, -4}}) {
    const auto fd = (pp.hj(a, b) - pm.hj(a, b)) / (2.0 * d);
    CHECK(std::abs(p.hj_du(a, b) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
  }
  // negative orders: Z_{-k} = (-1)^k Z_k
  CHECK(std::abs(p.hj(-3, 2) + p.hj(3, 2)) < 1e-14 * std::abs(p.hj(3, 2)));
}

TEST_CASE("Airy functions agree with Boost") {
  for (double x = -30.0; x <= 30.0; x += 0.37) {
    const AiryValues a = airy(x);
    const AiryValues s = airy_scaled(x);
    const double ai = boost::math::airy_ai(x), aip = boost::math::airy_ai_prime(x);
    const double bi = boost::math::airy_bi(x), bip = boost::math::airy_bi_prime(x);
    // oscillatory side: absolute error on the envelope |x|^-1/4 (|x|^1/4 for primes)
    const double env = x < 0 ? std::pow(-x, -0.25) : 1.0;
    const double envp = x < 0 ? std::pow(-x, 0.25) : 1.0;
    if (x < 0) {
      CHECK(std::abs(a.ai - ai) < 1e-12 * env);
      CHECK(std::abs(a.bi - bi) < 1e-12 * env);
      CHECK(std::abs(a.aip - aip) < 1e-12 * envp);
      CHECK(std::abs(a.bip - bip) < 1e-12 * envp);
    } else {
      const double z = 2.0 / 3.0 * std::pow(x, 1.5);
      CHECK(rel(a.ai, ai) < 1e-11);
      CHECK(rel(a.bi, bi) < 1e-11);
      CHECK(rel(a.aip, aip) < 1e-11);
      CHECK(rel(a.bip, bip) < 1e-11);
      CHECK(rel(s.ai, ai * std::exp(z)) < 1e-11);
      CHECK(rel(s.bip, bip * std::exp(-z)) < 1e-11);
    }
  }
}

TEST_CASE("Airy Wronskian") {
  for (double x : {-25.0, -9.99, -3.0, 0.0, 2.5, 10.01, 40.0}) {
    const AiryValues s = airy_scaled(x);
    CHECK(s.ai * s.bip - s.aip * s.bi == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
  }
}

TEST_CASE("special function domain checks") {
  CHECK_THROWS_AS(bessel_j(-1, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(2, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_y(0, 0.0), DomainError);
  CHECK_THROWS_AS(airy(std::nan("")), DomainError);
  KernelAccuracy k;
  k.rel_tol = 1e-3;
  CHECK_THROWS_AS(k.validate(), ConfigError);
}

TEST_CASE("Gauss-Kronrod quadrature") {
  const auto r = integrate_gk15([](double t) { return std::exp(-t * t); }, 0.0, 3.0);
  CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0 * std::erf(3.0)).epsilon(1e-13));
  const auto s = integrate_gk15([](double t) { return std::sqrt(t); }, 0.0, 1.0);
  CHECK(s.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("tridiagonal eigensolver") {
  // -1 2 -1 stencil: eigenvalues 2 - 2 cos(k pi/(n+1))
  const int n = 12;
  std::vector<double> d(n, 2.0), e(n - 1, -1.0);
  const auto eig = tridiagonal_eigen(d, e, true);
  for (int k = 1; k <= n; ++k)
    CHECK(eig.values[k - 1] == doctest::Approx(2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1))).epsilon(1e-13));
  double dot = 0.0;
  for (int i = 0; i < n; ++i) dot += eig.vectors[0][i] * eig.vectors[1][i];
  CHECK(std::abs(dot) < 1e-13);
}
