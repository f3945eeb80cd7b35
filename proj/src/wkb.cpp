#include "mathieu/wkb.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mathieu/errors.hpp"
#include "mathieu/quadrature.hpp"
#include "mathieu/special_functions.hpp"

namespace mathieu {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
// sqrt(pi) (3/2)^(1/6)
const double kAiryMatch = std::sqrt(kPi) * std::pow(1.5, 1.0 / 6.0);
// Largest S* for which e^{-S*} stays a normal double with margin.
constexpr double kMaxBarrier = 700.0;

double integrate_pieces(const std::function<double(double)>& f, double a, double b, int pieces) {
  double total = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + (b - a) * i / pieces;
    const double hi = a + (b - a) * (i + 1) / pieces;
    total += integrate_gk15(f, lo, hi, kActionRelTol, 1e-300).value;
  }
  return total;
}

}  // namespace

ActionContext::ActionContext(double h, double g, double c, int) : h_(h), g_(g), c_(c) {
  if (!(g > 0.0) || !(c > 0.0) || !std::isfinite(g) || !std::isfinite(c))
    throw DomainError("ActionContext: g and c must be positive");
  if (!(h > g) || !std::isfinite(h))
    throw DomainError("ActionContext: no turning point for h <= g (h = " + std::to_string(h) + ")");
  u_star_ = std::acosh(h / g) / c;
  sp0_ = std::sqrt(h - g);
  const double us = u_star_;
  auto f = [this, us](double s) {
    const double s2 = s * s;
    const double qv = 2.0 * g_ * std::sinh(0.5 * c_ * (2.0 * us - s2)) * std::sinh(0.5 * c_ * s2);
    return 2.0 * s * std::sqrt(std::max(qv, 0.0));
  };
  s_star_ = integrate_pieces(f, 0.0, std::sqrt(us), 1);
}

ActionContext::ActionContext(double h, double theta) : ActionContext(h, 2.0 * theta, 2.0, 0) {}

ActionContext ActionContext::general(double h, double g, double c) { return ActionContext(h, g, c, 0); }

double ActionContext::q(double u) const {
  return 2.0 * g_ * std::sinh(0.5 * c_ * (u_star_ + u)) * std::sinh(0.5 * c_ * (u_star_ - u));
}

namespace {

ActionValue action_impl(const ActionContext& ctx, double u, int pieces) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("action: u must be finite and >= 0");
  const double us = ctx.u_star();
  const double g = ctx.g(), c = ctx.c();
  ActionValue r;
  r.sprime = std::sqrt(std::abs(ctx.q(u)));
  if (u <= us) {
    r.regime = TurningSide::Below;
    if (u < 0.5 * us) {
      auto f = [&](double t) { return std::sqrt(std::max(ctx.q(t), 0.0)); };
      r.s_total = integrate_pieces(f, 0.0, u, pieces);
      r.distance = ctx.s_star() - r.s_total;
    } else {
      // t = u* - s^2 absorbs the square-root zero of the integrand.
      auto f = [&](double s) {
        const double s2 = s * s;
        const double qv = 2.0 * g * std::sinh(0.5 * c * (2.0 * us - s2)) * std::sinh(0.5 * c * s2);
        return 2.0 * s * std::sqrt(std::max(qv, 0.0));
      };
      r.distance = integrate_pieces(f, 0.0, std::sqrt(us - u), pieces);
      r.s_total = ctx.s_star() - r.distance;
    }
    r.s = r.s_total;
  } else {
    r.regime = TurningSide::Above;
    auto f = [&](double s) {
      const double s2 = s * s;
      const double qv = 2.0 * g * std::sinh(0.5 * c * (2.0 * us + s2)) * std::sinh(0.5 * c * s2);
      return 2.0 * s * std::sqrt(std::max(qv, 0.0));
    };
    r.distance = integrate_pieces(f, 0.0, std::sqrt(u - us), pieces);
    r.s_total = ctx.s_star() + r.distance;
    r.s = r.distance;
  }
  return r;
}

// |S - S*|^(1/6) / |S'|^(1/2), with the limit at u*.
double turning_factor(const ActionContext& ctx, const ActionValue& a, double u) {
  if (std::abs(u - ctx.u_star()) < kTurningDesingularize * (1.0 + ctx.u_star()) || a.sprime == 0.0 ||
      a.distance == 0.0)
    return turning_factor_limit(ctx);
  return std::pow(a.distance, 1.0 / 6.0) / std::sqrt(a.sprime);
}

// e^{-S*} (i Ai(z) + Bi(z)) at z = sgn(u* - u) (3/2 |S - S*|)^(2/3), kept
// in range with the scaled Airy functions below the turning point.
cplx airy_combination(const ActionContext& ctx, const ActionValue& a) {
  const double z = std::pow(1.5 * a.distance, 2.0 / 3.0);
  if (a.regime == TurningSide::Below) {
    const AiryValues v = airy_scaled(z);
    const double e_ai = std::exp(-(ctx.s_star() + a.distance));
    const double e_bi = std::exp(-a.s_total);
    return {v.bi * e_bi, v.ai * e_ai};
  }
  const AiryValues v = airy(-z);
  const double e = std::exp(-ctx.s_star());
  return {v.bi * e, v.ai * e};
}

void check_barrier(const ActionContext& ctx, const char* who) {
  if (ctx.s_star() > kMaxBarrier)
    throw PrecisionError(std::string(who) + ": barrier action S* = " + std::to_string(ctx.s_star()) +
                         " puts e^{-S*} below double range");
}

}  // namespace

ActionValue action(const ActionContext& ctx, double u) { return action_impl(ctx, u, 1); }

ActionValue action_refined(const ActionContext& ctx, double u, int subdivision_factor) {
  if (subdivision_factor < 1) throw ConfigError("action_refined: factor must be >= 1");
  return action_impl(ctx, u, subdivision_factor);
}

double turning_factor_limit(const ActionContext& ctx) {
  return std::pow(2.0 / 3.0, 1.0 / 6.0) * std::pow(ctx.kappa(), -1.0 / 6.0);
}

double log_wkb_coupling(const CoefficientTable& table, SymmetryClass c, int n) {
  const double th = table.theta;
  const auto& a = table.coefficients(c, n);
  const double half = kPi / 2.0;
  double lead, ang, pre;
  if (c == SymmetryClass::Even) {
    if (n % 2 == 0) {
      lead = a[0];
      ang = angular_eval(table, c, n, half, 0);
      pre = half;
    } else {
      lead = a[1];
      ang = angular_eval(table, c, n, half, 1);
      pre = half * th;
    }
  } else {
    if (n % 2 == 0) {
      lead = a[2];
      ang = angular_eval(table, c, n, half, 1);
      pre = kPi * th * th / 2.0;
    } else {
      lead = a[1];
      ang = angular_eval(table, c, n, half, 0);
      pre = kPi * th / 2.0;
    }
  }
  if (lead == 0.0 || ang == 0.0 || !(pre > 0.0))
    throw PrecisionError("wkb_coupling: leading Fourier coefficient of mode " + std::to_string(n) +
                         " underflows");
  return std::log(pre) + 2.0 * std::log(std::abs(lead)) - 2.0 * std::log(std::abs(ang));
}

double wkb_coupling(const CoefficientTable& table, SymmetryClass c, int n) {
  const double k = std::exp(log_wkb_coupling(table, c, n));
  if (!(k > std::numeric_limits<double>::min()))
    throw PrecisionError("wkb_coupling: coupling of mode " + std::to_string(n) + " underflows");
  return k;
}

WkbValue wkb_inside_first_kind(const ActionContext& ctx, SymmetryClass c, double u) {
  const ActionValue a = action(ctx, u);
  if (a.regime != TurningSide::Below || a.sprime == 0.0)
    throw DomainError("wkb_inside: u must lie below the turning point");
  const double s = a.s_total, p = a.sprime, p0 = ctx.sprime0();
  const double dp = -ctx.g() * ctx.c() * std::sinh(ctx.c() * u) / (2.0 * p);
  const double isp = 1.0 / std::sqrt(p);
  const double ch = std::cosh(s), sh = std::sinh(s);
  WkbValue w;
  if (c == SymmetryClass::Even) {
    w.value = std::sqrt(p0) * isp * ch;
    w.derivative = std::sqrt(p0) * isp * (p * sh - dp * ch / (2.0 * p));
  } else {
    w.value = isp * sh / std::sqrt(p0);
    w.derivative = isp / std::sqrt(p0) * (p * ch - dp * sh / (2.0 * p));
  }
  return w;
}

WkbValue wkb_inside(const ActionContext& ctx, const CoefficientTable& table, SymmetryClass c, int n,
                    double u) {
  // An underflowed coupling (or leading coefficient) only drops the
  // exponentially small first-kind part; the value stays usable.
  double k = 0.0;
  try {
    k = std::exp(log_wkb_coupling(table, c, n));
  } catch (const PrecisionError&) {
  }
  const ActionValue a = action(ctx, u);
  if (a.regime != TurningSide::Below || a.sprime == 0.0)
    throw DomainError("wkb_inside: u must lie below the turning point");
  const double s = a.s_total;
  const double p = a.sprime;
  const double p0 = ctx.sprime0();
  const double dp = -ctx.g() * ctx.c() * std::sinh(ctx.c() * u) / (2.0 * p);
  const double inv_sqrt_p = 1.0 / std::sqrt(p);
  const double em = std::exp(-s);
  const double ch = std::cosh(s), sh = std::sinh(s);
  WkbValue w;
  if (c == SymmetryClass::Even) {
    w.value = cplx(-em * inv_sqrt_p / std::sqrt(p0), -k * std::sqrt(p0) * inv_sqrt_p * ch);
    w.derivative = cplx(em / std::sqrt(p0) * inv_sqrt_p * (p + dp / (2.0 * p)),
                        -k * std::sqrt(p0) * inv_sqrt_p * (p * sh - dp * ch / (2.0 * p)));
  } else {
    w.value = cplx(std::sqrt(p0) * inv_sqrt_p * em, k / std::sqrt(p0) * inv_sqrt_p * sh);
    w.derivative = cplx(std::sqrt(p0) * inv_sqrt_p * em * (-p - dp / (2.0 * p)),
                        k / std::sqrt(p0) * inv_sqrt_p * (p * ch - dp * sh / (2.0 * p)));
  }
  return w;
}

namespace {

cplx turning_value(const ActionContext& ctx, SymmetryClass c, double u) {
  const ActionValue a = action(ctx, u);
  const double f = turning_factor(ctx, a, u);
  const cplx comb = airy_combination(ctx, a);
  const double p0 = ctx.sprime0();
  if (c == SymmetryClass::Even) return -kAiryMatch * f / std::sqrt(p0) * comb;
  return kAiryMatch * f * std::sqrt(p0) * comb;
}

// e^{2S*} Im of the turning ratio.
double turning_scaled_imag(const ActionContext& ctx, SymmetryClass c, double u) {
  const ActionValue a = action(ctx, u);
  const double f = turning_factor(ctx, a, u);
  const double z = std::pow(1.5 * a.distance, 2.0 / 3.0);
  double scaled_ai;  // e^{S*} Ai(z)
  if (a.regime == TurningSide::Below)
    scaled_ai = airy_scaled(z).ai * std::exp(a.s_total);
  else
    scaled_ai = airy(-z).ai * std::exp(ctx.s_star());
  const double p0 = ctx.sprime0();
  if (c == SymmetryClass::Even) return -kAiryMatch * f / std::sqrt(p0) * scaled_ai;
  return kAiryMatch * f * std::sqrt(p0) * scaled_ai;
}

template <typename F>
auto fd_derivative(F&& f, double u, decltype(f(u)) f0) {
  const double eta = 1e-4;
  if (u >= 2.0 * eta)
    return (-f(u + 2 * eta) + 8.0 * f(u + eta) - 8.0 * f(u - eta) + f(u - 2 * eta)) / (12.0 * eta);
  return (-25.0 * f0 + 48.0 * f(u + eta) - 36.0 * f(u + 2 * eta) + 16.0 * f(u + 3 * eta) -
          3.0 * f(u + 4 * eta)) /
         (12.0 * eta);
}

}  // namespace

WkbValue wkb_turning_scaled_imag(const ActionContext& ctx, SymmetryClass c, double u) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("wkb_turning: u must be finite and >= 0");
  if (ctx.s_star() > kMaxBarrier)
    throw PrecisionError("wkb_turning: e^{S*} leaves the double range");
  auto f = [&](double x) { return turning_scaled_imag(ctx, c, x); };
  WkbValue w;
  const double v = f(u);
  w.value = v;
  w.derivative = fd_derivative(f, u, v);
  return w;
}

WkbValue wkb_turning(const ActionContext& ctx, SymmetryClass c, double u) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("wkb_turning: u must be finite and >= 0");
  check_barrier(ctx, "wkb_turning");
  WkbValue w;
  w.value = turning_value(ctx, c, u);
  // Fourth-order differences; the Airy form has no convenient closed
  // derivative through the desingularized point.
  w.derivative = fd_derivative([&](double x) { return turning_value(ctx, c, x); }, u, w.value);
  return w;
}

// ---------------------------------------------------------------------------

void WkbDemoProblem::validate() const {
  if (!(v0 > 0.0) || !std::isfinite(v0)) throw ConfigError("wkbdemo: V0 must be > 0");
  if (!(energy < 0.0) || !std::isfinite(energy)) throw ConfigError("wkbdemo: E must be < 0");
  if (!(cosh_factor > 0.0)) throw ConfigError("wkbdemo: cosh factor must be > 0");
  if (!(-energy > v0)) throw ConfigError("wkbdemo: need -E > V0 for a turning point at x > 0");
  if (!(seam_in > 0.0 && seam_in < 1.0 && seam_out > 1.0))
    throw ConfigError("wkbdemo: seams must satisfy 0 < seam_in < 1 < seam_out");
}

DemoCoshWell::DemoCoshWell(const WkbDemoProblem& p)
    : problem_((p.validate(), p)), ctx_(ActionContext::general(p.h(), p.v0, p.cosh_factor)) {}

double DemoCoshWell::eval_regime(double x, DemoRegime r) const {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("wkbdemo: x must be finite and >= 0");
  const ActionValue a = action(ctx_, x);
  const double amp = problem_.amplitude;
  const double ss = ctx_.s_star();
  switch (r) {
    case DemoRegime::Inside:
      if (a.regime != TurningSide::Below || a.sprime == 0.0)
        throw DomainError("wkbdemo: inside formula needs x < x*");
      return amp * std::cosh(a.s_total) / std::sqrt(a.sprime);
    case DemoRegime::Outside:
      if (a.regime != TurningSide::Above || a.sprime == 0.0)
        throw DomainError("wkbdemo: outside formula needs x > x*");
      return amp * std::exp(ss) * std::cos(a.distance - kPi / 4.0) / std::sqrt(a.sprime);
    case DemoRegime::Turning: {
      const double f = turning_factor(ctx_, a, x);
      const double z = std::pow(1.5 * a.distance, 2.0 / 3.0);
      double bracket;
      if (a.regime == TurningSide::Below) {
        const AiryValues v = airy_scaled(z);
        bracket = v.ai * std::exp(ss - a.distance) + 0.5 * v.bi * std::exp(a.distance - ss);
      } else {
        const AiryValues v = airy(-z);
        bracket = std::exp(ss) * v.ai + 0.5 * std::exp(-ss) * v.bi;
      }
      return amp * kAiryMatch * f * bracket;
    }
  }
  return 0.0;
}

DemoPoint DemoCoshWell::eval(double x) const {
  DemoRegime r = DemoRegime::Turning;
  if (x < seam_in())
    r = DemoRegime::Inside;
  else if (x > seam_out())
    r = DemoRegime::Outside;
  return {eval_regime(x, r), r};
}

DemoPoint demo_cosh_well(const WkbDemoProblem& problem, double x) { return DemoCoshWell(problem).eval(x); }

}  // namespace mathieu
