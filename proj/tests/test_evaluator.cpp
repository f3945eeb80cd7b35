#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mathieu/diagnostics.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/evaluator.hpp"
#include "mathieu/radial_series.hpp"

using namespace mathieu;
constexpr double pi = std::numbers::pi;

namespace {

const CoefficientTable& table() {
  static const CoefficientTable t = build_tables(pi * pi, 100, 200);
  return t;
}

}  // namespace

TEST_CASE("dispatch rules") {
  const EvaluatorConfig cfg;
  const ModeEvaluator low(table(), cfg, SymmetryClass::Even, 3);
  CHECK(low.branch_at(0.0) == Branch::Series);
  CHECK(low.branch_at(2.0) == Branch::Series);

  const ModeEvaluator hi(table(), cfg, SymmetryClass::Even, 40);
  CHECK(hi.branch_at(0.0) == Branch::WkbInside);
  CHECK(hi.branch_at(hi.u_star()) == Branch::WkbTurning);
  CHECK(hi.branch_at(hi.u_star() + 1.0) == Branch::WkbTurning);
  // boundary of the inside branch: 2 theta cosh(2u) / h = eps1
  const double ub = 0.5 * std::acosh(cfg.eps1 * hi.h() / (2.0 * pi * pi));
  CHECK(hi.branch_at(ub * (1 - 1e-9)) == Branch::WkbInside);
  CHECK(hi.branch_at(ub * (1 + 1e-9)) == Branch::WkbTurning);

  // 1/h >= eps0 keeps the series even above n0 (h ~ 1600 here)
  EvaluatorConfig wide = cfg;
  wide.eps0 = 1e-4;
  CHECK(ModeEvaluator(table(), wide, SymmetryClass::Odd, 40).branch_at(1.0) == Branch::Series);

  EvaluatorConfig lit = cfg;
  lit.literal_cosh_u = true;
  const ModeEvaluator hl(table(), lit, SymmetryClass::Even, 40);
  CHECK(hl.branch_at(ub * 1.5) == Branch::WkbInside);
}

TEST_CASE("normalization at u = 0") {
  const EvaluatorConfig cfg;
  for (int n : {2, 10, 40, 90}) {
    const ModeEvaluator e(table(), cfg, SymmetryClass::Even, n);
    CHECK(std::abs(e.eval(0.0).derivative - cplx(1.0, 0.0)) < 1e-6);
    const ModeEvaluator o(table(), cfg, SymmetryClass::Odd, n);
    CHECK(std::abs(o.eval(0.0).value - cplx(1.0, 0.0)) < 1e-6);
    // first-kind ratios are 1 in value (even) or slope (odd) at the origin
    CHECK(e.first_kind(0.0).first == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(o.first_kind(0.0).second == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("WKB agrees with the series where both apply") {
  EvaluatorConfig series_only;
  series_only.n0 = 1000;
  EvaluatorConfig cfg;
  for (auto c : {SymmetryClass::Even, SymmetryClass::Odd}) {
    const int n = 12;
    const ModeEvaluator s(table(), series_only, c, n);
    const ModeEvaluator w(table(), cfg, c, n);
    for (double u = 0.0; u < w.u_star() - 0.2; u += 0.1) {
      const cplx a = s.eval(u).value, b = w.eval(u).value;
      CHECK(std::abs(b - a) / std::abs(a) < 1e-2);
    }
  }
}

TEST_CASE("first kind is the scaled imaginary part") {
  EvaluatorConfig series_only;
  series_only.n0 = 1000;
  const ModeEvaluator e(table(), series_only, SymmetryClass::Even, 8);
  const double im0 = e.eval(0.0).value.imag();
  for (double u : {0.3, 1.0, 2.0}) CHECK(e.first_kind(u).first == doctest::Approx(e.eval(u).value.imag() / im0));
  // deep modes: the imaginary part underflows but the first kind stays finite
  const ModeEvaluator deep(table(), EvaluatorConfig{}, SymmetryClass::Odd, 100);
  const auto f = deep.first_kind(1.0);
  CHECK(std::isfinite(f.first));
  CHECK(f.first > 1.0);
}

TEST_CASE("residual of the dispatched evaluator") {
  const EvaluatorConfig cfg;
  std::vector<double> grid;
  for (int i = 0; i <= 300; i += 5) grid.push_back(0.01 * i);
  const auto r = residual(table(), cfg, SymmetryClass::Even, 4, grid);
  std::vector<double> vals;
  for (const auto& x : r)
    if (x) vals.push_back(*x);
  std::sort(vals.begin(), vals.end());
  REQUIRE(!vals.empty());
  CHECK(vals[vals.size() / 2] < 1e-5);

  const auto w = residual(table(), cfg, SymmetryClass::Odd, 30, grid);
  int n = 0;
  for (const auto& x : w)
    if (x && *x < 5e-3) ++n;
  CHECK(n > 40);
}

TEST_CASE("configuration and domain checks") {
  EvaluatorConfig c;
  c.n0 = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.eps1 = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  CHECK_THROWS_AS(residual(table(), c, SymmetryClass::Even, 4, {0.0, 1e-4}), ConfigError);
  CHECK_THROWS_AS(evaluate(table(), c, SymmetryClass::Even, 4, -1.0), DomainError);
  CHECK_THROWS_AS(radius_map(-1.0, 0.0), DomainError);
  CHECK(radius_map(4.0, 0.0) == 2.0);
}

TEST_CASE("modes beyond the double range") {
  // S* ~ 1900: the inside form still works, the Airy form cannot be scaled
  const auto t = build_tables(1.0, 400, 520);
  const ModeEvaluator m(t, EvaluatorConfig{}, SymmetryClass::Even, 400);
  CHECK(m.branch_at(0.0) == Branch::WkbInside);
  CHECK(std::isfinite(m.first_kind(0.5).first));
  try {
    m.eval(m.u_star());
    FAIL("expected PrecisionError");
  } catch (const PrecisionError& e) {
    CHECK(std::string(e.what()).find("[wkb_turning]") == 0);
  }
}
