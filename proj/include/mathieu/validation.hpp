#pragma once

#include <string>
#include <vector>

#include "mathieu/scattering.hpp"

namespace mathieu {

struct CheckResult {
  std::string name;
  double value = 0.0;  ///< measured quantity
  double tol = 0.0;    ///< pass iff value <= tol
  bool pass = false;
  std::string detail;
};

/// Scattering setup shared by the checks: a/lambda = 2 with a = 2, so
/// lambda = 1, k = 2 pi and theta = pi^2.
struct ValidationSetup {
  double a_over_lambda = 2.0;
  double a = 2.0;
  int n_terms = 60;
  EvaluatorConfig evaluator;

  double k() const { return 2.0 * 3.141592653589793 * a_over_lambda / a; }
  double theta() const;
};

/// Wall identity on x in [-4, 4], y in [0, 6] with spacing `step`, source
/// (1, 3); max abs error outside 0.05 wavelengths of source and image.
struct IdentityOptions {
  int n_terms = 200;
  double step = 0.1;
};
CheckResult check_identity(const ValidationSetup& s, Boundary bc, const IdentityOptions& opt = {});

/// Boundary condition on the scatterer relative to the local field (or
/// gradient) scale on nearby rings.  Tolerances: slit 1e-10 / 1e-6, strip
/// 1e-8 / 1e-6 (Dirichlet / Neumann).
CheckResult check_boundary(const ValidationSetup& s, Geometry g, Boundary bc);

/// max |G(p,s) - G(s,p)| / |G(p,s)| over `pairs` random off-scatterer pairs.
CheckResult check_reciprocity(const ValidationSetup& s, Geometry g, Boundary bc, int pairs = 50,
                              unsigned seed = 12345);

/// Identity (both conditions), boundary conditions and reciprocity (all four
/// geometry x condition pairs).
std::vector<CheckResult> validation_suite(const ValidationSetup& s, const IdentityOptions& opt = {});

/// Default sources: slit (1.091, -0.831), strip (0, -2.129), in units a = 2.
EllipticPoint default_source(Geometry g, double a);

}  // namespace mathieu
