#include "mathieu/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "mathieu/angular_basis.hpp"

namespace mathieu {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

CheckResult finish(std::string name, double value, double tol, std::string detail = "") {
  return {std::move(name), value, tol, value <= tol, std::move(detail)};
}

GreenProblem make_problem(const ValidationSetup& s, Geometry g, Boundary bc) {
  GreenProblem p;
  p.geometry = g;
  p.bc = bc;
  p.k = s.k();
  p.a = s.a;
  p.n_terms = s.n_terms;
  p.evaluator = s.evaluator;
  p.source = default_source(g, s.a);
  return p;
}

}  // namespace

double ValidationSetup::theta() const {
  const double q = k() * a / 4.0;
  return q * q;
}

EllipticPoint default_source(Geometry g, double a) {
  // reference sources, given for a = 2 and scaled
  const double sc = a / 2.0;
  return g == Geometry::Slit ? to_elliptic(1.091 * sc, -0.831 * sc, a) : to_elliptic(0.0, -2.129 * sc, a);
}

CheckResult check_identity(const ValidationSetup& s, Boundary bc, const IdentityOptions& opt) {
  HalfPlaneProblem hp;
  hp.theta = s.theta();
  hp.a = s.a;
  hp.x0 = 1.0 * s.a / 2.0;
  hp.y0 = 3.0 * s.a / 2.0;
  hp.bc = bc;
  hp.n_terms = opt.n_terms;
  hp.evaluator = s.evaluator;
  const double sc = s.a / 2.0;
  const int nx = static_cast<int>(std::lround(8.0 / opt.step)) + 1;
  const int ny = static_cast<int>(std::lround(6.0 / opt.step)) + 1;
  const auto pts = cartesian_grid(-4.0 * sc, 4.0 * sc, 0.0, 6.0 * sc, nx, ny);
  const HalfPlaneResult r = half_plane_identity(hp, pts);
  return finish(std::string("wall identity ") + to_string(bc), r.max_err, 1e-3,
                fmt("worst at (%.3f, %.3f)", r.worst.first, r.worst.second) +
                    fmt(", n_terms %.0f, step %.3g", opt.n_terms, opt.step));
}

CheckResult check_boundary(const ValidationSetup& s, Geometry g, Boundary bc) {
  const GreenProblem p = make_problem(s, g, bc);
  const GreenFunction gf(p);
  std::vector<double> ring;
  const int nv = 72;
  for (int i = 0; i < nv; ++i) ring.push_back(-kPi + 2.0 * kPi * (i + 0.5) / nv);

  double worst = 0.0;
  if (g == Geometry::Slit) {
    // screen faces: v = +0 and -0 (x > a/2), v = pi (x < -a/2)
    const std::vector<double> screen{0.0, -0.0, kPi};
    for (int i = 0; i < 30; ++i) {
      const double u = 0.05 + 0.1 * i;
      double scale = 0.0;
      for (const GreenValue& gv : gf.eval_at_u(u, ring))
        scale = std::max(scale, bc == Boundary::Dirichlet ? std::abs(gv.value) : std::hypot(std::abs(gv.du), std::abs(gv.dv)));
      for (const GreenValue& gv : gf.eval_at_u(u, screen)) {
        const double b = bc == Boundary::Dirichlet ? std::abs(gv.value) : std::abs(gv.dv);
        worst = std::max(worst, b / scale);
      }
    }
  } else {
    // strip: u = 0, scale from the ring just outside
    double scale = 0.0;
    for (const GreenValue& gv : gf.eval_at_u(0.1, ring))
      scale = std::max(scale, bc == Boundary::Dirichlet ? std::abs(gv.value) : std::hypot(std::abs(gv.du), std::abs(gv.dv)));
    for (const GreenValue& gv : gf.eval_at_u(0.0, ring)) {
      const double b = bc == Boundary::Dirichlet ? std::abs(gv.value) : std::abs(gv.du);
      worst = std::max(worst, b / scale);
    }
  }
  const double tol = bc == Boundary::Neumann ? 1e-6 : (g == Geometry::Slit ? 1e-10 : 1e-8);
  return finish(std::string("boundary ") + to_string(g) + " " + to_string(bc), worst, tol);
}

CheckResult check_reciprocity(const ValidationSetup& s, Geometry g, Boundary bc, int pairs, unsigned seed) {
  GreenProblem base = make_problem(s, g, bc);
  auto table = std::make_shared<const CoefficientTable>(build_tables(base.theta(), base.n_terms));
  std::mt19937 rng(seed);
  const double sc = s.a / 2.0;
  std::uniform_real_distribution<double> d(-4.0 * sc, 4.0 * sc);
  auto draw = [&] {
    for (;;) {
      const double x = d(rng), y = d(rng);
      if (std::abs(y) > 0.05 * sc) return to_elliptic(x, y, s.a);  // off the scatterer line
    }
  };
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    EllipticPoint ps = draw(), pp = draw();
    const auto [x1, y1] = to_cartesian(ps, s.a);
    const auto [x2, y2] = to_cartesian(pp, s.a);
    if (std::hypot(x1 - x2, y1 - y2) < 0.1 * sc) {
      --i;
      continue;
    }
    GreenProblem a = base, b = base;
    a.source = ps;
    b.source = pp;
    const cplx gab = GreenFunction(a, table).eval(pp).value;
    const cplx gba = GreenFunction(b, table).eval(ps).value;
    worst = std::max(worst, std::abs(gab - gba) / std::abs(gab));
  }
  return finish(std::string("reciprocity ") + to_string(g) + " " + to_string(bc), worst, 1e-3,
                fmt("%.0f pairs", pairs));
}

std::vector<CheckResult> validation_suite(const ValidationSetup& s, const IdentityOptions& opt) {
  std::vector<CheckResult> out;
  for (Boundary bc : {Boundary::Neumann, Boundary::Dirichlet}) out.push_back(check_identity(s, bc, opt));
  for (Geometry g : {Geometry::Slit, Geometry::Strip})
    for (Boundary bc : {Boundary::Neumann, Boundary::Dirichlet}) out.push_back(check_boundary(s, g, bc));
  for (Geometry g : {Geometry::Slit, Geometry::Strip})
    for (Boundary bc : {Boundary::Neumann, Boundary::Dirichlet}) out.push_back(check_reciprocity(s, g, bc));
  return out;
}

}  // namespace mathieu
