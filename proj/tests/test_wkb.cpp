#include "doctest.h"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "mathieu/angular_basis.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/wkb.hpp"

using namespace mathieu;
constexpr double pi = std::numbers::pi;

namespace {

double oracle_action(double h, double g, double c, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([&](double t) { return std::sqrt(std::abs(h - g * std::cosh(c * t))); }, lo, hi);
}

}  // namespace

TEST_CASE("turning point and barrier action") {
  const double th = pi * pi;
  for (double h : {25.0, 120.0, 400.0, 2500.0}) {
    const ActionContext ctx(h, th);
    CHECK(std::cosh(2.0 * ctx.u_star()) == doctest::Approx(h / (2.0 * th)).epsilon(1e-14));
    CHECK(ctx.s_star() == doctest::Approx(oracle_action(h, 2 * th, 2.0, 0.0, ctx.u_star())).epsilon(1e-11));
    CHECK(ctx.sprime0() == doctest::Approx(std::sqrt(h - 2 * th)));
    CHECK(ctx.kappa() == doctest::Approx(4.0 * th * std::sinh(2.0 * ctx.u_star())));
  }
}

TEST_CASE("action on both sides of the turning point") {
  const ActionContext ctx(400.0, pi * pi);
  const double us = ctx.u_star();
  for (double u : {0.1, 0.5 * us, us - 1e-3}) {
    const ActionValue a = action(ctx, u);
    CHECK(a.regime == TurningSide::Below);
    CHECK(a.s_total == doctest::Approx(oracle_action(400.0, 2 * pi * pi, 2.0, 0.0, u)).epsilon(1e-11));
    CHECK(a.distance == doctest::Approx(oracle_action(400.0, 2 * pi * pi, 2.0, u, us)).epsilon(1e-9));
    CHECK(a.sprime == doctest::Approx(std::sqrt(ctx.q(u))).epsilon(1e-13));
  }
  for (double u : {us + 1e-3, us + 0.5, us + 2.0}) {
    const ActionValue a = action(ctx, u);
    CHECK(a.regime == TurningSide::Above);
    CHECK(a.distance == doctest::Approx(oracle_action(400.0, 2 * pi * pi, 2.0, us, u)).epsilon(1e-9));
    CHECK(a.s == doctest::Approx(a.distance).epsilon(1e-12));
    const ActionValue r = action_refined(ctx, u, 8);
    CHECK(r.distance == doctest::Approx(a.distance).epsilon(1e-12));
  }
}

TEST_CASE("q keeps relative accuracy near the turning point") {
  const ActionContext ctx(400.0, pi * pi);
  const double us = ctx.u_star();
  for (double d : {1e-4, 1e-7, 1e-10}) {
    // q(u* - d) ~ kappa d to first order
    const double q = ctx.q(us - d);
    CHECK(q > 0.0);
    CHECK(q == doctest::Approx(ctx.kappa() * d).epsilon(2e-3 * std::max(d * 1e3, 1e-6)));
    CHECK(ctx.q(us + d) < 0.0);
  }
}

TEST_CASE("turning-point formula is smooth through u*") {
  const ActionContext ctx(400.0, pi * pi);
  const double us = ctx.u_star();
  for (auto c : {SymmetryClass::Even, SymmetryClass::Odd}) {
    const WkbValue m = wkb_turning(ctx, c, us - 1e-6);
    const WkbValue z = wkb_turning(ctx, c, us);
    const WkbValue p = wkb_turning(ctx, c, us + 1e-6);
    CHECK(std::abs(z.value - m.value) < 1e-4 * std::abs(z.value));
    CHECK(std::abs(z.value - p.value) < 1e-4 * std::abs(z.value));
    CHECK(std::isfinite(turning_factor_limit(ctx)));
    CHECK(turning_factor_limit(ctx) > 0.0);
  }
}

TEST_CASE("inside first-kind forms") {
  const ActionContext ctx(400.0, pi * pi);
  const WkbValue e = wkb_inside_first_kind(ctx, SymmetryClass::Even, 0.0);
  CHECK(e.value.real() == doctest::Approx(1.0));
  CHECK(std::abs(e.derivative.real()) < 1e-9);
  const WkbValue o = wkb_inside_first_kind(ctx, SymmetryClass::Odd, 0.0);
  CHECK(std::abs(o.value.real()) < 1e-15);
  CHECK(o.derivative.real() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(wkb_inside_first_kind(ctx, SymmetryClass::Even, ctx.u_star() + 0.1), DomainError);
}

TEST_CASE("barrier limits") {
  CHECK_THROWS_AS(ActionContext(10.0, 5.0), DomainError);
  CHECK_THROWS_AS(ActionContext::general(10.0, 1.0, -1.0), DomainError);
  // S* beyond the double range of e^{S*}
  const ActionContext big(1e6, 1.0);
  CHECK(big.s_star() > 700.0);
  CHECK_THROWS_AS(wkb_turning(big, SymmetryClass::Even, 1.0), PrecisionError);
  const auto t = build_tables(pi * pi, 20);
  CHECK(std::isfinite(log_wkb_coupling(t, SymmetryClass::Even, 20)));
  CHECK(wkb_coupling(t, SymmetryClass::Even, 20) ==
        doctest::Approx(std::exp(log_wkb_coupling(t, SymmetryClass::Even, 20))).epsilon(1e-12));
}

TEST_CASE("cosh-well demonstration") {
  WkbDemoProblem p;
  const DemoCoshWell well(p);
  CHECK(well.x_star() == doctest::Approx(std::acosh(20.0) / 2.0).epsilon(1e-14));
  CHECK(well.x_star() == doctest::Approx(1.844).epsilon(1e-3));
  CHECK(well.seam_in() == doctest::Approx(0.66 * well.x_star() / 1.844));
  CHECK(well.eval(0.2).regime == DemoRegime::Inside);
  CHECK(well.eval(1.8).regime == DemoRegime::Turning);
  CHECK(well.eval(3.0).regime == DemoRegime::Outside);
  // Neumann condition at x = 0
  const double d = 1e-5;
  CHECK(std::abs(well.eval(d).psi - well.eval(0.0).psi) < 1e-8 * std::abs(well.eval(0.0).psi));
  CHECK(well.eval_regime(0.0, DemoRegime::Inside) == doctest::Approx(1.0 / std::sqrt(std::sqrt(19.0))));
}

TEST_CASE("Airy form approaches the WKB forms away from x*") {
  // Leading-order matching: the relative gap shrinks as |S - S*| grows.
  const DemoCoshWell well(WkbDemoProblem{});
  const double xs = well.x_star();
  auto gap = [&](double x, DemoRegime other) {
    return std::abs(well.eval_regime(x, DemoRegime::Turning) / well.eval_regime(x, other) - 1.0);
  };
  CHECK(gap(0.3 * xs, DemoRegime::Inside) < gap(0.6 * xs, DemoRegime::Inside));
  CHECK(gap(0.6 * xs, DemoRegime::Inside) < gap(0.85 * xs, DemoRegime::Inside));
  // outside: compare the envelope at the maxima of cos, avoid nodes
  CHECK(gap(0.6 * xs, DemoRegime::Inside) < 0.05);
}

TEST_CASE("demo configuration checks") {
  WkbDemoProblem p;
  p.energy = 2.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.energy = -0.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.seam_out = 0.9;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_THROWS_AS(DemoCoshWell(WkbDemoProblem{}).eval_regime(3.0, DemoRegime::Inside), DomainError);
}
