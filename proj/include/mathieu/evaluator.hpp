#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "mathieu/angular_basis.hpp"
#include "mathieu/wkb.hpp"

namespace mathieu {

using cplx = std::complex<double>;

struct EvaluatorConfig {
  int n0 = 6;            ///< modes below n0 always use the series
  double eps0 = 0.005;   ///< series whenever 1/h >= eps0
  double eps1 = 0.1;     ///< inside-barrier formula while g(u)/h < eps1
  double fd_step = 1e-4; ///< residual finite-difference step in u
  /// Dispatch on 2 theta cosh(u)/h instead of 2 theta cosh(2u)/h.
  bool literal_cosh_u = false;

  void validate() const;
};

enum class Branch { Series, WkbInside, WkbTurning };

const char* to_string(Branch b);

/// Normalized third-kind ratio: Me1_n(u) / Me1_n'(0) for the even class,
/// Ne1_n(u) / Ne1_n(0) for the odd class.
struct Evaluation {
  cplx value;
  cplx derivative;  ///< d/du of value
  Branch branch = Branch::Series;
};

/// Per-mode evaluator: fixes the branch rules and normalizers for one (class, n).
class ModeEvaluator {
public:
  ModeEvaluator(const CoefficientTable& table, const EvaluatorConfig& cfg, SymmetryClass c, int n);

  SymmetryClass symmetry() const { return class_; }
  int index() const { return n_; }
  double h() const { return h_; }
  bool uses_series() const { return series_; }
  /// Turning point, or NaN when h <= 2 theta.
  double u_star() const;

  Branch branch_at(double u) const;
  Evaluation eval(double u) const;
  /// Evaluate with a given branch formula regardless of the dispatch rule
  /// (seam studies, and finite differences that must not straddle a seam).
  Evaluation eval_branch(double u, Branch b) const;

  /// First-kind function normalized at the origin: Ce(u)/Ce(0) for even,
  /// Se(u)/Se'(0) for odd, with its derivative.  Computed without the
  /// exponentially small e^{-2S*} so it stays finite for large n.
  std::pair<double, double> first_kind(double u) const;

  /// Ratio at u = 0 (R(0) for even, 1 for odd) and its derivative (1 for even,
  /// Q'(0) for odd), from the same branch logic as eval.
  const Evaluation& at_zero() const { return zero_; }

private:
  Evaluation eval_series(double u) const;

  const CoefficientTable* table_;
  EvaluatorConfig cfg_;
  SymmetryClass class_;
  int n_;
  double h_;
  bool series_ = true;
  std::optional<ActionContext> ctx_;
  cplx series_norm_;  // bare series Sigma'(0) (even) or Sigma(0) (odd)
  Evaluation zero_;
  double first_norm_ = 0.0;  // e^{2S*} Im of the ratio (or its slope) at 0, WKB modes
};

/// Dispatched normalized ratio for one point.
Evaluation evaluate(const CoefficientTable& table, const EvaluatorConfig& cfg, SymmetryClass c, int n,
                    double u);

/// Node threshold for residuals: points where |y| falls below this fraction
/// of the local envelope sqrt(y^2 + y'^2 / |q|) are reported as missing.
inline constexpr double kResidualNodeTol = 1e-3;

/// Relative ODE residual |(y''/y - q) / q| of y = Im(ratio) with
/// q = h - 2 theta cosh 2u, second derivative by central differences.
/// Missing entries mark nodes of y (or q = 0).  u = 0 uses the parity of the
/// first-kind function to reach u = -fd_step.
std::vector<std::optional<double>> residual(const CoefficientTable& table, const EvaluatorConfig& cfg,
                                            SymmetryClass c, int n, const std::vector<double>& u_grid);

/// Same residual for an already-built mode evaluator, single point.
std::optional<double> residual_at(const ModeEvaluator& mode, const EvaluatorConfig& cfg, double theta,
                                  double u);

/// k|x| proxy for the radial coordinate: sqrt(theta) e^u.
double radius_map(double theta, double u);

}  // namespace mathieu
