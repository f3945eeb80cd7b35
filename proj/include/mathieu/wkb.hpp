#pragma once

#include <complex>

#include "mathieu/angular_basis.hpp"

namespace mathieu {

using cplx = std::complex<double>;

enum class TurningSide { Below, Above };

/// Classical action for q(t) = h - g cosh(c t).  The radial Mathieu equation
/// is g = 2 theta, c = 2; the cosh-well demo uses g = V0 with a configurable c.
class ActionContext {
public:
  /// Radial Mathieu problem at characteristic value h.  Requires h > 2 theta.
  ActionContext(double h, double theta);

  /// General cosh barrier.  Requires g > 0, c > 0, h > g.
  static ActionContext general(double h, double g, double c);

  double h() const { return h_; }
  double theta() const { return g_ / 2.0; }
  double g() const { return g_; }
  double c() const { return c_; }
  double u_star() const { return u_star_; }
  double s_star() const { return s_star_; }
  /// S'(0) = sqrt(h - g).
  double sprime0() const { return sp0_; }
  /// |q'(u*)| = g c sinh(c u*), the slope of q at the turning point.
  double kappa() const { return g_ * c_ * std::sinh(c_ * u_star_); }

  /// q(u) evaluated without cancellation near u*.
  double q(double u) const;

private:
  ActionContext(double h, double g, double c, int);
  double h_, g_, c_;
  double u_star_ = 0.0;
  double s_star_ = 0.0;
  double sp0_ = 0.0;
};

struct ActionValue {
  /// S(u) below the turning point, S(u) - S* above it.
  double s = 0.0;
  /// sqrt|q(u)|.
  double sprime = 0.0;
  TurningSide regime = TurningSide::Below;
  /// |S(u) - S*| computed directly (no subtraction), relative accuracy kept
  /// all the way to u*.
  double distance = 0.0;
  /// S(u) itself (both sides).
  double s_total = 0.0;
};

/// Quadrature tolerance used for the action integrals.
inline constexpr double kActionRelTol = 1e-13;

ActionValue action(const ActionContext& ctx, double u);

/// Same integral with `subdivision_factor` times finer initial splitting;
/// only used to check quadrature convergence.
ActionValue action_refined(const ActionContext& ctx, double u, int subdivision_factor);

struct WkbValue {
  cplx value;
  cplx derivative;
};

/// Coupling constant multiplying the growing (imaginary) term of the
/// inside-barrier formulas; built from the Fourier data of mode n.  Throws
/// PrecisionError when it underflows.
double wkb_coupling(const CoefficientTable& table, SymmetryClass c, int n);

/// log of the coupling, usable after the coupling itself has underflowed.
double log_wkb_coupling(const CoefficientTable& table, SymmetryClass c, int n);

/// Inside-barrier first-kind ratio with the coupling cancelled:
/// Ce(u)/ce(0) = sqrt(S'(0)/S'(u)) cosh S (Even) or
/// Se(u)/se'(0) = sinh S / sqrt(S'(0) S'(u)) (Odd).  Value in the real part.
WkbValue wkb_inside_first_kind(const ActionContext& ctx, SymmetryClass c, double u);

/// e^{2 S*} Im(turning-point ratio) and its derivative.  The factor keeps
/// the exponentially small first-kind part representable for large n.
WkbValue wkb_turning_scaled_imag(const ActionContext& ctx, SymmetryClass c, double u);

/// Inside-barrier approximation of Me1_n(u)/Me1_n'(0) (Even) or
/// Ne1_n(u)/Ne1_n(0) (Odd).  ctx must be built from the same h, theta.
WkbValue wkb_inside(const ActionContext& ctx, const CoefficientTable& table, SymmetryClass c, int n,
                    double u);

/// Turning-point (Airy) approximation of the same normalized ratio.
/// Throws PrecisionError when e^{-S*} leaves the double range.
WkbValue wkb_turning(const ActionContext& ctx, SymmetryClass c, double u);

/// Half-width around u* inside which the |S - S*|^(1/6) / |S'|^(1/2) factor
/// is replaced by its limit.
inline constexpr double kTurningDesingularize = 1e-9;

/// Limit of |S - S*|^(1/6) / |S'|^(1/2) at u*.
double turning_factor_limit(const ActionContext& ctx);

// ---------------------------------------------------------------------------
// Cosh-well demonstration: -psi'' + V psi = E psi with V = -V0 cosh(c x),
// m = 1/2, hbar = 1, Neumann condition at x = 0.

enum class DemoRegime { Inside = 1, Turning = 3, Outside = 2 };

struct WkbDemoProblem {
  double v0 = 1.0;
  double energy = -20.0;
  double cosh_factor = 2.0;
  double amplitude = 1.0;  ///< A
  /// Seams as fractions of x*: inside formula below seam_in * x*, outside
  /// formula above seam_out * x*.
  double seam_in = 0.66 / 1.844;
  double seam_out = 2.3 / 1.844;

  void validate() const;
  double theta() const { return v0; }
  double h() const { return -energy; }
};

struct DemoPoint {
  double psi = 0.0;
  DemoRegime regime = DemoRegime::Inside;
};

class DemoCoshWell {
public:
  explicit DemoCoshWell(const WkbDemoProblem& p);

  double x_star() const { return ctx_.u_star(); }
  double seam_in() const { return problem_.seam_in * ctx_.u_star(); }
  double seam_out() const { return problem_.seam_out * ctx_.u_star(); }
  const ActionContext& context() const { return ctx_; }

  DemoPoint eval(double x) const;
  /// Evaluate one specific regime formula regardless of x (seam checks).
  double eval_regime(double x, DemoRegime r) const;

private:
  WkbDemoProblem problem_;
  ActionContext ctx_;
};

/// One-shot convenience wrapper.
DemoPoint demo_cosh_well(const WkbDemoProblem& problem, double x);

}  // namespace mathieu
