#include "mathieu/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <string>
#include <thread>

#include "mathieu/diagnostics.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/special_functions.hpp"

namespace mathieu {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI(0.0, 1.0);

bool finite_point(const EllipticPoint& p) { return std::isfinite(p.u) && std::isfinite(p.v); }

}  // namespace

double normalize_angle(double v) {
  if (!std::isfinite(v)) throw DomainError("normalize_angle: non-finite angle");
  if (v > -kPi && v <= kPi) return v;
  double r = std::remainder(v, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

EllipticPoint to_elliptic(double x, double y, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("to_elliptic: a must be > 0");
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("to_elliptic: non-finite point");
  y += 0.0;  // -0 -> +0
  const cplx w = std::acosh(cplx(x, y) / (a / 2.0));
  EllipticPoint p{std::max(0.0, w.real()), w.imag()};
  if (p.u == 0.0) p.v = std::abs(p.v);
  p.v = normalize_angle(p.v);
  return p;
}

std::pair<double, double> to_cartesian(const EllipticPoint& p, double a) {
  if (!(a > 0.0)) throw DomainError("to_cartesian: a must be > 0");
  return {a / 2.0 * std::cosh(p.u) * std::cos(p.v), a / 2.0 * std::sinh(p.u) * std::sin(p.v)};
}

const char* to_string(Geometry g) { return g == Geometry::Slit ? "slit" : "strip"; }
const char* to_string(Boundary b) { return b == Boundary::Neumann ? "neumann" : "dirichlet"; }

void GreenProblem::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("green: k must be > 0");
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("green: a must be > 0");
  if (n_terms < 1 || n_terms > 1000) throw ConfigError("green: n_terms must lie in [1, 1000]");
  evaluator.validate();
  if (!finite_point(source) || source.u < 0.0) throw DomainError("green: invalid source point");
  if (!(source.u > 0.0)) throw DomainError(std::string("green: source lies on the focal segment (u0 = 0)") +
                                           (geometry == Geometry::Strip ? ", i.e. on the strip" : ""));
  if (geometry == Geometry::Slit) {
    const double v = std::abs(normalize_angle(source.v));
    if (v == 0.0 || v == kPi) throw DomainError("green: source lies on the screen");
  }
}

std::vector<std::pair<double, double>> cartesian_grid(double x0, double x1, double y0, double y1, int nx,
                                                      int ny) {
  if (nx < 1 || ny < 1) throw ConfigError("grid: sample counts must be >= 1");
  if (!(x1 >= x0) || !(y1 >= y0)) throw ConfigError("grid: window must satisfy x0 <= x1, y0 <= y1");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    const double y = ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1);
    for (int i = 0; i < nx; ++i) pts.emplace_back(nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1), y);
  }
  return pts;
}

// Every formula is (1/pi) sum_n [cm M_n + cd D_n] phi_n(v) phi_n(v0), with
// M_n = R(u>) c(u<) and D_n = R(u) R(u0) / R(0) (even, R = Me1/Me1'(0),
// c = Ce/Ce(0)) or the odd analogue with Q = Ne1/Ne1(0), s = Se/Se'(0)
// and Q'(0) in the denominator, plus a closed-form Hankel part for the strip.
namespace {

enum class Kernel { SlitN, SlitD, StripN, StripD };

Kernel kernel_of(const GreenProblem& p) {
  if (p.geometry == Geometry::Slit) return p.bc == Boundary::Neumann ? Kernel::SlitN : Kernel::SlitD;
  return p.bc == Boundary::Neumann ? Kernel::StripN : Kernel::StripD;
}

SymmetryClass class_of(Kernel k) {
  switch (k) {
    case Kernel::SlitN:
    case Kernel::StripD: return SymmetryClass::Even;
    default: return SymmetryClass::Odd;
  }
}

// (cm, cd) for a field point on the upper (v >= +0) or lower side.
std::pair<double, double> weights(Kernel k, bool upper) {
  switch (k) {
    case Kernel::SlitN: return upper ? std::pair{0.0, 1.0} : std::pair{2.0, -1.0};
    case Kernel::SlitD: return upper ? std::pair{0.0, -1.0} : std::pair{-2.0, 1.0};
    case Kernel::StripN: return {-1.0, 1.0};
    case Kernel::StripD: return {1.0, -1.0};
  }
  return {0.0, 0.0};
}

}  // namespace

GreenFunction::GreenFunction(const GreenProblem& problem) : problem_(problem) {
  problem_.validate();
  table_ = std::make_shared<const CoefficientTable>(build_tables(problem_.theta(), problem_.n_terms));
  init();
}

GreenFunction::GreenFunction(const GreenProblem& problem, std::shared_ptr<const CoefficientTable> table)
    : problem_(problem), table_(std::move(table)) {
  problem_.validate();
  if (!table_ || table_->n_max < problem_.n_terms)
    throw ConfigError("green: table does not cover n_terms modes");
  if (std::abs(table_->theta - problem_.theta()) > 1e-12 * problem_.theta())
    throw ConfigError("green: table theta does not match (k a / 4)^2");
  init();
}

void GreenFunction::init() {
  src_ = problem_.source;
  src_.v = normalize_angle(src_.v);
  // The slit formulas assume the source below the screen; the geometry is
  // mirror symmetric, so a source above is handled by y -> -y.
  reflected_ = problem_.geometry == Geometry::Slit && src_.v > 0.0;
  std::tie(xs_, ys_) = to_cartesian(problem_.source, problem_.a);
  if (reflected_) src_.v = -src_.v;

  const Kernel kern = kernel_of(problem_);
  const SymmetryClass cls = class_of(kern);
  const int first = cls == SymmetryClass::Even ? 0 : 1;
  const int last = cls == SymmetryClass::Even ? problem_.n_terms - 1 : problem_.n_terms;
  modes_.reserve(last - first + 1);
  for (int n = first; n <= last; ++n) {
    Mode m{ModeEvaluator(*table_, problem_.evaluator, cls, n), {}, 0.0, {}, 0.0};
    m.src = m.eval.eval(src_.u);
    m.src_first = m.eval.first_kind(src_.u).first;
    m.norm = cls == SymmetryClass::Even ? m.eval.at_zero().value : m.eval.at_zero().derivative;
    m.ang_src = angular_eval(*table_, cls, n, src_.v, 0);
    modes_.push_back(std::move(m));
  }
}

std::vector<GreenFunction::Radial> GreenFunction::radial_at(double u) const {
  const Kernel kern = kernel_of(problem_);
  const bool need_first = u < src_.u && weights(kern, false).first != 0.0;
  std::vector<Radial> out(modes_.size());
  for (size_t i = 0; i < modes_.size(); ++i) {
    out[i].r = modes_[i].eval.eval(u);
    if (need_first) std::tie(out[i].f, out[i].fp) = modes_[i].eval.first_kind(u);
  }
  return out;
}

GreenValue GreenFunction::eval_quiet(const EllipticPoint& p_in, const std::vector<Radial>* radial) const {
  if (!finite_point(p_in) || p_in.u < 0.0) throw DomainError("green: invalid field point");
  const auto [x, y] = to_cartesian(p_in, problem_.a);
  const double scale = problem_.a + std::hypot(xs_, ys_);
  if (std::hypot(x - xs_, y - ys_) <= 1e-12 * scale)
    throw SingularityError("green: field point coincides with the source");

  const Kernel kern = kernel_of(problem_);
  const SymmetryClass cls = class_of(kern);
  EllipticPoint p = p_in;
  if (reflected_) p.v = -p.v;
  const bool upper = !std::signbit(p.v);
  const auto [cm, cd] = weights(kern, upper);

  std::vector<Radial> local;
  if (!radial) {
    local = radial_at(p.u);
    radial = &local;
  }
  const auto ang = angular_eval_all(*table_, cls, p.v, 0);
  const auto dang = angular_eval_all(*table_, cls, p.v, 1);

  GreenValue g;
  // Closed-form half-sums of the strip
  if (kern == Kernel::StripN || kern == Kernel::StripD) {
    const double sgn = kern == Kernel::StripN ? 1.0 : -1.0;
    const double r1 = std::hypot(x - xs_, y - ys_);
    const double r2 = std::hypot(x - xs_, y + ys_);
    if (r2 <= 1e-12 * scale)
      throw SingularityError("green: field point at the image source, where the strip formula has a removable singularity");
    const double xu = problem_.a / 2.0 * std::sinh(p.u) * std::cos(p.v);
    const double yu = problem_.a / 2.0 * std::cosh(p.u) * std::sin(p.v);
    const double xv = -yu, yv = xu;
    const double kk = problem_.k;
    const cplx h0a = hankel1(0, kk * r1), h0b = hankel1(0, kk * r2);
    const cplx h1a = hankel1(1, kk * r1), h1b = hankel1(1, kk * r2);
    // d/du H0(k r) = -k H1(k r) dr/du
    const double r1u = ((x - xs_) * xu + (y - ys_) * yu) / r1, r1v = ((x - xs_) * xv + (y - ys_) * yv) / r1;
    const double r2u = ((x - xs_) * xu + (y + ys_) * yu) / r2, r2v = ((x - xs_) * xv + (y + ys_) * yv) / r2;
    const cplx c8 = 1.0 / (8.0 * kI);
    g.value = c8 * (h0a + sgn * h0b);
    g.du = -kk * c8 * (h1a * r1u + sgn * h1b * r2u);
    g.dv = -kk * c8 * (h1a * r1v + sgn * h1b * r2v);
  }

  double max_partial = std::abs(g.value);
  std::vector<double> mags;
  mags.reserve(modes_.size());
  const bool above = p.u >= src_.u;
  for (size_t i = 0; i < modes_.size(); ++i) {
    const Mode& m = modes_[i];
    const Radial& rad = (*radial)[i];
    const int n = m.eval.index();
    cplx term(0.0), dterm(0.0);
    if (cd != 0.0) {
      const cplx fac = m.src.value / m.norm;
      term += cd * rad.r.value * fac;
      dterm += cd * rad.r.derivative * fac;
    }
    if (cm != 0.0) {
      if (above) {
        term += cm * rad.r.value * m.src_first;
        dterm += cm * rad.r.derivative * m.src_first;
      } else {
        term += cm * m.src.value * rad.f;
        dterm += cm * m.src.value * rad.fp;
      }
    }
    const double w = m.ang_src / kPi;
    const cplx t = term * ang[n] * w;
    g.value += t;
    g.du += dterm * ang[n] * w;
    g.dv += term * dang[n] * w;
    max_partial = std::max(max_partial, std::abs(g.value));
    mags.push_back(std::abs(t));
  }
  double last5 = 0.0;
  for (size_t i = mags.size() > 5 ? mags.size() - 5 : 0; i < mags.size(); ++i) last5 += mags[i];
  g.tail = max_partial > 0.0 ? last5 / max_partial : 0.0;
  if (reflected_) g.dv = -g.dv;
  return g;
}

std::vector<GreenValue> GreenFunction::eval_at_u(double u, const std::vector<double>& vs) const {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("green: u must be finite and >= 0");
  const auto radial = radial_at(u);
  std::vector<GreenValue> out;
  out.reserve(vs.size());
  for (double v : vs) out.push_back(eval_quiet({u, normalize_angle(v)}, &radial));
  return out;
}

GreenValue GreenFunction::eval(const EllipticPoint& p) const {
  const GreenValue g = eval_quiet(p, nullptr);
  if (g.tail > kGreenTailTol)
    diag::warn("green: truncation tail " + std::to_string(g.tail) + " at (u, v) = (" + std::to_string(p.u) +
               ", " + std::to_string(p.v) + ") exceeds " + std::to_string(kGreenTailTol) +
               "; raise n_terms");
  return g;
}

FieldGrid GreenFunction::grid(const std::vector<std::pair<double, double>>& xy) const {
  FieldGrid out;
  out.problem = problem_;
  out.points.resize(xy.size());
  out.values.resize(xy.size());
  std::map<double, std::vector<size_t>> by_u;
  for (size_t i = 0; i < xy.size(); ++i) {
    const EllipticPoint e = to_elliptic(xy[i].first, xy[i].second, problem_.a);
    out.points[i] = {xy[i].first, xy[i].second, e.u, e.v};
    by_u[e.u].push_back(i);
  }
  std::vector<const std::pair<const double, std::vector<size_t>>*> groups;
  groups.reserve(by_u.size());
  for (const auto& g : by_u) groups.push_back(&g);
  std::vector<double> tails(xy.size(), 0.0);

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const size_t nthreads = std::min<size_t>(hw, std::max<size_t>(1, groups.size()));
  std::vector<std::exception_ptr> errors(nthreads);
  auto work = [&](size_t t) {
    try {
      for (size_t gi = t; gi < groups.size(); gi += nthreads) {
        const auto radial = radial_at(groups[gi]->first);
        for (size_t i : groups[gi]->second) {
          const FieldPoint& fp = out.points[i];
          const GreenValue g = eval_quiet({fp.u, fp.v}, &radial);
          out.values[i] = g.value;
          tails[i] = g.tail;
        }
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (double t : tails) {
    out.max_tail = std::max(out.max_tail, t);
    if (t > kGreenTailTol) ++out.tail_warnings;
  }
  if (out.tail_warnings > 0)
    diag::warn("green: truncation tail above " + std::to_string(kGreenTailTol) + " at " +
               std::to_string(out.tail_warnings) + " of " + std::to_string(xy.size()) +
               " points (max " + std::to_string(out.max_tail) + "); raise n_terms");
  return out;
}

cplx green_slit(const GreenProblem& problem, const EllipticPoint& p) {
  if (problem.geometry != Geometry::Slit) throw ConfigError("green_slit: geometry must be slit");
  return GreenFunction(problem).eval(p).value;
}

cplx green_strip(const GreenProblem& problem, const EllipticPoint& p) {
  if (problem.geometry != Geometry::Strip) throw ConfigError("green_strip: geometry must be strip");
  return GreenFunction(problem).eval(p).value;
}

// ---------------------------------------------------------------------------

void HalfPlaneProblem::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw ConfigError("identity: theta must be > 0");
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("identity: a must be > 0");
  if (!std::isfinite(x0) || !std::isfinite(y0) || y0 == 0.0)
    throw DomainError("identity: source must lie strictly off the wall y = 0");
  if (n_terms < 1 || n_terms > 1000) throw ConfigError("identity: n_terms must lie in [1, 1000]");
  if (!(exclusion >= 0.0)) throw ConfigError("identity: exclusion radius must be >= 0");
  evaluator.validate();
}

HalfPlaneResult half_plane_identity(const HalfPlaneProblem& hp,
                                    const std::vector<std::pair<double, double>>& xy) {
  hp.validate();
  const double k = 4.0 * std::sqrt(hp.theta) / hp.a;
  const double lambda = 2.0 * kPi / k;
  const SymmetryClass cls = hp.bc == Boundary::Neumann ? SymmetryClass::Even : SymmetryClass::Odd;
  const double sgn = hp.bc == Boundary::Neumann ? 1.0 : -1.0;
  const CoefficientTable table = build_tables(hp.theta, hp.n_terms);
  const EllipticPoint src = to_elliptic(hp.x0, hp.y0, hp.a);

  struct WallMode {
    ModeEvaluator eval;
    Evaluation src;
    double src_first;
    double ang_src;
  };
  std::vector<WallMode> modes;
  const int first = cls == SymmetryClass::Even ? 0 : 1;
  const int last = cls == SymmetryClass::Even ? hp.n_terms - 1 : hp.n_terms;
  for (int n = first; n <= last; ++n) {
    ModeEvaluator me(table, hp.evaluator, cls, n);
    const Evaluation s = me.eval(src.u);
    const double f = me.first_kind(src.u).first;
    modes.push_back({std::move(me), s, f, angular_eval(table, cls, n, src.v, 0)});
  }

  HalfPlaneResult res;
  res.lhs.points.resize(xy.size());
  res.lhs.values.assign(xy.size(), cplx(0.0));
  std::map<double, std::vector<size_t>> by_u;
  for (size_t i = 0; i < xy.size(); ++i) {
    const EllipticPoint e = to_elliptic(xy[i].first, xy[i].second, hp.a);
    res.lhs.points[i] = {xy[i].first, xy[i].second, e.u, e.v};
    by_u[e.u].push_back(i);
  }
  res.rhs = res.lhs;
  const cplx c4 = 1.0 / (4.0 * kI);
  for (const auto& [u, idx] : by_u) {
    // R(u>) c(u<) for every mode at this u
    std::vector<cplx> mixed(modes.size());
    for (size_t m = 0; m < modes.size(); ++m) {
      if (u >= src.u)
        mixed[m] = modes[m].eval.eval(u).value * modes[m].src_first;
      else
        mixed[m] = modes[m].src.value * modes[m].eval.first_kind(u).first;
    }
    for (size_t i : idx) {
      const FieldPoint& fp = res.lhs.points[i];
      const double r1 = std::hypot(fp.x - hp.x0, fp.y - hp.y0);
      const double r2 = std::hypot(fp.x - hp.x0, fp.y + hp.y0);
      // Both sides are singular at the source and, for the mirrored half
      // plane, at its image.
      if (r1 < hp.exclusion * lambda || r1 == 0.0 || r2 < hp.exclusion * lambda || r2 == 0.0) {
        ++res.excluded;
        res.lhs.values[i] = res.rhs.values[i] = cplx(std::nan(""), std::nan(""));
        continue;
      }
      res.lhs.values[i] = c4 * (hankel1(0, k * r1) + sgn * hankel1(0, k * r2));
      const auto ang = angular_eval_all(table, cls, fp.v, 0);
      cplx s(0.0);
      for (size_t m = 0; m < modes.size(); ++m)
        s += mixed[m] * ang[modes[m].eval.index()] * modes[m].ang_src;
      res.rhs.values[i] = 2.0 * sgn / kPi * s;
      const double err = std::abs(res.rhs.values[i] - res.lhs.values[i]);
      if (err > res.max_err) {
        res.max_err = err;
        res.worst = {fp.x, fp.y};
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

std::vector<double> far_field(const GreenProblem& problem, double u_m, const std::vector<double>& alphas) {
  if (!(u_m >= 5.0) || !std::isfinite(u_m)) throw DomainError("far_field: u_m must be >= 5");
  if (!(problem.source.u >= 5.0)) throw DomainError("far_field: source u0 must be >= 5");
  const GreenFunction g(problem);
  std::vector<double> out;
  out.reserve(alphas.size());
  double mx = 0.0;
  for (const GreenValue& v : g.eval_at_u(u_m, alphas)) {
    out.push_back(std::norm(v.value));
    mx = std::max(mx, out.back());
  }
  if (mx > 0.0)
    for (double& v : out) v /= mx;
  return out;
}

std::vector<double> fraunhofer(double theta, double v0, const std::vector<double>& alphas) {
  if (!(theta > 0.0)) throw DomainError("fraunhofer: theta must be > 0");
  const double b = 2.0 * std::sqrt(theta);
  std::vector<double> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    const double x = b * std::sin(a - v0);
    const double f = x == 0.0 ? 1.0 : std::sin(x) / x;
    out.push_back(f * f);
  }
  return out;
}

}  // namespace mathieu
