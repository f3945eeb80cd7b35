#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "mathieu/angular_basis.hpp"
#include "mathieu/evaluator.hpp"

namespace mathieu {

using cplx = std::complex<double>;

/// Elliptic coordinates, x + iy = (a/2) cosh(u + iv).
struct EllipticPoint {
  double u = 0.0;  ///< >= 0
  double v = 0.0;  ///< in (-pi, pi]
};

/// Maps v into (-pi, pi].
double normalize_angle(double v);

/// Points on the focal segment (y = 0, |x| <= a/2) get u = 0 and
/// v = +arccos(2x/a); y = -0 is treated as +0.
EllipticPoint to_elliptic(double x, double y, double a);
std::pair<double, double> to_cartesian(const EllipticPoint& p, double a);

enum class Geometry { Slit, Strip };
enum class Boundary { Neumann, Dirichlet };

const char* to_string(Geometry g);
const char* to_string(Boundary b);

struct GreenProblem {
  Geometry geometry = Geometry::Slit;
  Boundary bc = Boundary::Neumann;
  double k = 2.0 * 3.141592653589793;  ///< wavenumber
  double a = 2.0;                      ///< slit or strip width (focal distance)
  EllipticPoint source{1.0, -1.0};
  int n_terms = 60;  ///< even modes 0..n_terms-1, odd modes 1..n_terms
  EvaluatorConfig evaluator;

  /// (k a / 4)^2
  double theta() const { return (k * a / 4.0) * (k * a / 4.0); }
  void validate() const;
};

/// Value and gradient in elliptic coordinates.
struct GreenValue {
  cplx value;
  cplx du;
  cplx dv;
  /// Combined magnitude of the last five series terms over the largest
  /// partial-sum magnitude.
  double tail = 0.0;
};

/// Tail above which a truncation warning is raised.
inline constexpr double kGreenTailTol = 1e-6;

struct FieldPoint {
  double x = 0.0, y = 0.0, u = 0.0, v = 0.0;
};

struct FieldGrid {
  std::vector<FieldPoint> points;
  std::vector<cplx> values;
  GreenProblem problem;
  double max_tail = 0.0;
  int tail_warnings = 0;  ///< points whose tail exceeded kGreenTailTol
};

/// Uniform nx x ny Cartesian sample of [x0, x1] x [y0, y1], x fastest.
std::vector<std::pair<double, double>> cartesian_grid(double x0, double x1, double y0, double y1, int nx,
                                                      int ny);

/// Green function of one problem with its mode data precomputed.
class GreenFunction {
public:
  explicit GreenFunction(const GreenProblem& problem);
  /// Reuse a table already built for theta() with n_max >= n_terms.
  GreenFunction(const GreenProblem& problem, std::shared_ptr<const CoefficientTable> table);

  const GreenProblem& problem() const { return problem_; }
  const CoefficientTable& table() const { return *table_; }

  /// Single point; warns when the tail check fails.
  GreenValue eval(const EllipticPoint& p) const;

  /// Values along one u = const curve (radial factors computed once); no
  /// tail warning, check GreenValue::tail.
  std::vector<GreenValue> eval_at_u(double u, const std::vector<double>& vs) const;

  /// Field on a set of Cartesian points.  Radial factors are computed once
  /// per distinct u; one aggregated warning for failed tail checks.
  FieldGrid grid(const std::vector<std::pair<double, double>>& xy) const;

private:
  // Per-mode data.  D_n = R(u) R(u0) / R(0) and M_n = R(u>) c(u<) in the
  // even class (odd: Q, s and Q'(0)); see scattering.cpp.
  struct Mode {
    ModeEvaluator eval;
    Evaluation src;         // ratio at u0
    double src_first = 0.0; // c(u0) or s(u0)
    cplx norm;              // R(0) or Q'(0)
    double ang_src = 0.0;
  };
  struct Radial {
    Evaluation r;
    double f = 0.0, fp = 0.0;
  };
  void init();
  GreenValue eval_quiet(const EllipticPoint& p, const std::vector<Radial>* radial) const;
  std::vector<Radial> radial_at(double u) const;

  GreenProblem problem_;
  std::shared_ptr<const CoefficientTable> table_;
  bool reflected_ = false;  // source mirrored to v0 < 0 (slit only)
  EllipticPoint src_;       // source after reflection
  double xs_ = 0.0, ys_ = 0.0;
  std::vector<Mode> modes_;
};

cplx green_slit(const GreenProblem& problem, const EllipticPoint& p);
cplx green_strip(const GreenProblem& problem, const EllipticPoint& p);

struct HalfPlaneProblem {
  double theta = 9.869604401089358;
  double a = 2.0;
  double x0 = 1.0, y0 = 3.0;  ///< source, strictly off the wall y = 0
  Boundary bc = Boundary::Neumann;
  int n_terms = 60;
  double exclusion = 0.05;  ///< excluded disc radius around source and image, in wavelengths
  EvaluatorConfig evaluator;

  void validate() const;
};

struct HalfPlaneResult {
  FieldGrid lhs;  ///< (H0(k r) +- H0(k r')) / 4i
  FieldGrid rhs;  ///< Mathieu series
  double max_err = 0.0;
  std::pair<double, double> worst{0.0, 0.0};
  int excluded = 0;
};

/// Wall reflection identity: the Neumann (+) or Dirichlet (-) combination of
/// the free Hankel function and its image against its Mathieu expansion.
HalfPlaneResult half_plane_identity(const HalfPlaneProblem& problem,
                                    const std::vector<std::pair<double, double>>& xy);

/// |G(u_m, alpha)|^2 over alpha, scaled to unit maximum.  Needs u_m and the
/// source u both >= 5.
std::vector<double> far_field(const GreenProblem& problem, double u_m, const std::vector<double>& alphas);

/// Single-slit Fraunhofer intensity, unit at alpha = v0.
std::vector<double> fraunhofer(double theta, double v0, const std::vector<double>& alphas);

}  // namespace mathieu
