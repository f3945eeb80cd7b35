#include "mathieu/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "mathieu/angular_basis.hpp"
#include "mathieu/csv.hpp"
#include "mathieu/diagnostics.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/evaluator.hpp"
#include "mathieu/scattering.hpp"
#include "mathieu/table_cache.hpp"
#include "mathieu/validation.hpp"
#include "mathieu/wkb.hpp"

namespace mathieu::cli {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using csv::num;

// theta given directly or through a/lambda
struct ThetaFlags {
  std::optional<double> theta;
  std::optional<double> a_over_lambda;

  void add(CLI::App* app) {
    auto* t = app->add_option("--theta", theta, "size parameter theta >= 0");
    auto* r = app->add_option("--a-over-lambda", a_over_lambda, "width over wavelength; theta = (pi R / 2)^2");
    t->excludes(r);
  }
  double value() const {
    if (theta) {
      if (!(*theta >= 0.0) || !std::isfinite(*theta)) throw ConfigError("--theta must be finite and >= 0");
      return *theta;
    }
    if (a_over_lambda) {
      if (!(*a_over_lambda > 0.0)) throw ConfigError("--a-over-lambda must be > 0");
      return std::pow(kPi * *a_over_lambda / 2.0, 2);
    }
    throw ConfigError("one of --theta or --a-over-lambda is required");
  }
};

struct EvalFlags {
  EvaluatorConfig cfg;
  void add(CLI::App* app) {
    app->add_option("--n0", cfg.n0, "modes below n0 always use the series")->capture_default_str();
    app->add_option("--eps0", cfg.eps0, "series whenever 1/h >= eps0")->capture_default_str();
    app->add_option("--eps1", cfg.eps1, "inside-barrier formula while 2 theta cosh(2u)/h < eps1")
        ->capture_default_str();
    app->add_flag("--literal-cosh-u", cfg.literal_cosh_u, "dispatch on cosh(u) instead of cosh(2u)");
  }
};

SymmetryClass parse_class(const std::string& s) {
  if (s == "even") return SymmetryClass::Even;
  if (s == "odd") return SymmetryClass::Odd;
  throw ConfigError("--class must be even or odd");
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw ConfigError("--samples must be >= 1");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> split_numbers(const std::string& s, char sep, size_t count, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(csv::to_double(item));
  if (out.size() != count)
    throw ConfigError(std::string(flag) + " expects " + std::to_string(count) + " values separated by '" + sep + "'");
  return out;
}

CoefficientTable table_for(double theta, int n_max, int p_max, const std::string& cache) {
  return cached_tables(theta, n_max, p_max, cache);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mathieu functions, WKB approximations and slit/strip Green functions"};
  app.require_subcommand(1);
  std::string output;
  std::string cache = table_cache_dir();
  app.add_option("-o,--output", output, "write CSV here instead of stdout");
  app.add_option("--cache", cache, "table cache directory (default: $MATHIEU_TABLE_CACHE)");

  // Each subcommand registers a validate-then-compute action.
  std::function<int(std::ostream&)> action;

  // tables
  auto* tables = app.add_subcommand("tables", "characteristic values (or coefficients) at one theta");
  ThetaFlags t_theta;
  t_theta.add(tables);
  int t_nmax = 100, t_pmax = 200;
  bool t_coeff = false;
  tables->add_option("--nmax", t_nmax, "highest mode")->capture_default_str();
  tables->add_option("--pmax", t_pmax, "highest Fourier index")->capture_default_str();
  tables->add_flag("--coefficients", t_coeff, "emit kind,n,p,value with the Fourier coefficients");
  tables->callback([&] {
    action = [&](std::ostream& os) {
      const double th = t_theta.value();
      if (t_nmax < 0) throw ConfigError("--nmax must be >= 0");
      if (t_pmax < t_nmax) throw ConfigError("--pmax must be >= --nmax");
      const CoefficientTable t = table_for(th, t_nmax, t_pmax, cache);
      if (t_coeff) {
        csv::write_row(os, {"kind", "n", "p", "value"});
        for (int n = 0; n <= t.n_max; ++n)
          for (int p = 0; p <= t.p_max; ++p) {
            if (t.coeff_even[n][p] != 0.0)
              csv::write_row(os, {"A", std::to_string(n), std::to_string(p), num(t.coeff_even[n][p])});
            if (n > 0 && t.coeff_odd[n][p] != 0.0)
              csv::write_row(os, {"B", std::to_string(n), std::to_string(p), num(t.coeff_odd[n][p])});
          }
      } else {
        csv::write_row(os, {"n", "a", "b"});
        for (int n = 0; n <= t.n_max; ++n)
          csv::write_row(os, {std::to_string(n), num(t.char_even[n]), n == 0 ? "" : num(t.char_odd[n])});
      }
      return kOk;
    };
  });

  // angular
  auto* angular = app.add_subcommand("angular", "ce_n or se_n on a v grid");
  ThetaFlags a_theta;
  a_theta.add(angular);
  std::string a_class = "even";
  int a_n = 0, a_samples = 361, a_deriv = 0;
  angular->add_option("--class", a_class, "even (ce) or odd (se)")->capture_default_str();
  angular->add_option("--n", a_n, "mode index")->required();
  angular->add_option("--samples", a_samples, "points on [0, 2 pi]")->capture_default_str();
  angular->add_option("--deriv", a_deriv, "derivative order 0, 1 or 2")->capture_default_str();
  angular->callback([&] {
    action = [&](std::ostream& os) {
      const double th = a_theta.value();
      const SymmetryClass c = parse_class(a_class);
      if (a_n < (c == SymmetryClass::Odd ? 1 : 0)) throw ConfigError("--n out of range for the class");
      if (a_deriv < 0 || a_deriv > 2) throw ConfigError("--deriv must be 0, 1 or 2");
      const auto vs = linspace(0.0, 2.0 * kPi, a_samples);
      const CoefficientTable t = table_for(th, a_n, a_n + kDefaultPMaxMargin, cache);
      csv::write_row(os, {"v", "value"});
      for (double v : vs) csv::write_row(os, {num(v), num(angular_eval(t, c, a_n, v, a_deriv))});
      return kOk;
    };
  });

  // radial
  auto* radial = app.add_subcommand("radial", "normalized third-kind ratio on a u grid");
  ThetaFlags r_theta;
  r_theta.add(radial);
  EvalFlags r_eval;
  r_eval.add(radial);
  std::string r_class = "even", r_method = "dispatch";
  int r_n = 0, r_samples = 301;
  double r_u0 = 0.0, r_u1 = 3.0;
  radial->add_option("--class", r_class, "even (Me1) or odd (Ne1)")->capture_default_str();
  radial->add_option("--n", r_n, "mode index")->required();
  radial->add_option("--u0", r_u0, "first u")->capture_default_str();
  radial->add_option("--u1", r_u1, "last u")->capture_default_str();
  radial->add_option("--samples", r_samples, "grid points")->capture_default_str();
  radial->add_option("--method", r_method, "dispatch, series, inside or turning")->capture_default_str();
  radial->callback([&] {
    action = [&](std::ostream& os) {
      const double th = r_theta.value();
      r_eval.cfg.validate();
      const SymmetryClass c = parse_class(r_class);
      if (r_n < (c == SymmetryClass::Odd ? 1 : 0)) throw ConfigError("--n out of range for the class");
      if (!(r_u0 >= 0.0) || !(r_u1 >= r_u0)) throw ConfigError("need 0 <= --u0 <= --u1");
      std::optional<Branch> forced;
      if (r_method == "series") forced = Branch::Series;
      else if (r_method == "inside") forced = Branch::WkbInside;
      else if (r_method == "turning") forced = Branch::WkbTurning;
      else if (r_method != "dispatch") throw ConfigError("--method must be dispatch, series, inside or turning");
      const auto us = linspace(r_u0, r_u1, r_samples);
      const CoefficientTable t = table_for(th, r_n, r_n + kDefaultPMaxMargin, cache);
      const ModeEvaluator m(t, r_eval.cfg, c, r_n);
      csv::write_row(os, {"u", "re", "im", "dre", "dim", "branch"});
      for (double u : us) {
        const Evaluation e = forced ? m.eval_branch(u, *forced) : m.eval(u);
        csv::write_row(os, {num(u), num(e.value.real()), num(e.value.imag()), num(e.derivative.real()),
                            num(e.derivative.imag()), to_string(e.branch)});
      }
      return kOk;
    };
  });

  // residual
  auto* resid = app.add_subcommand("residual", "relative ODE residual of the dispatched evaluator");
  ThetaFlags e_theta;
  e_theta.add(resid);
  EvalFlags e_eval;
  e_eval.add(resid);
  std::string e_class = "even";
  int e_n = 6;
  double e_u0 = 0.0, e_u1 = 3.0, e_step = 0.01;
  resid->add_option("--class", e_class, "even or odd")->capture_default_str();
  resid->add_option("--n", e_n, "mode index")->required();
  resid->add_option("--u0", e_u0, "first u")->capture_default_str();
  resid->add_option("--u1", e_u1, "last u")->capture_default_str();
  resid->add_option("--step", e_step, "grid spacing (>= 4e-4)")->capture_default_str();
  resid->callback([&] {
    action = [&](std::ostream& os) {
      const double th = e_theta.value();
      e_eval.cfg.validate();
      const SymmetryClass c = parse_class(e_class);
      if (e_n < (c == SymmetryClass::Odd ? 1 : 0)) throw ConfigError("--n out of range for the class");
      if (!(e_u0 >= 0.0) || !(e_u1 >= e_u0) || !(e_step > 0.0)) throw ConfigError("need 0 <= --u0 <= --u1, --step > 0");
      std::vector<double> us;
      const int cnt = static_cast<int>(std::floor((e_u1 - e_u0) / e_step + 1e-9));
      for (int i = 0; i <= cnt; ++i) us.push_back(e_u0 + i * e_step);
      const CoefficientTable t = table_for(th, e_n, e_n + kDefaultPMaxMargin, cache);
      const auto r = residual(t, e_eval.cfg, c, e_n, us);
      const ModeEvaluator m(t, e_eval.cfg, c, e_n);
      csv::write_row(os, {"u", "residual", "branch"});
      for (size_t i = 0; i < us.size(); ++i)
        csv::write_row(os, {num(us[i]), r[i] ? num(*r[i]) : "", to_string(m.branch_at(us[i]))});
      return kOk;
    };
  });

  // wkbdemo
  auto* demo = app.add_subcommand("wkbdemo", "piecewise WKB solution in a cosh barrier");
  WkbDemoProblem d_prob;
  double d_x1 = 3.0;
  int d_samples = 301;
  demo->add_option("--v0", d_prob.v0, "barrier height V0")->capture_default_str();
  demo->add_option("--energy", d_prob.energy, "energy E < 0")->capture_default_str();
  demo->add_option("--cosh-factor", d_prob.cosh_factor, "c in V0 cosh(c x)")->capture_default_str();
  demo->add_option("--x1", d_x1, "last x")->capture_default_str();
  demo->add_option("--samples", d_samples, "points on [0, x1]")->capture_default_str();
  demo->callback([&] {
    action = [&](std::ostream& os) {
      if (!(d_x1 > 0.0)) throw ConfigError("--x1 must be > 0");
      const DemoCoshWell w(d_prob);
      err << "x_star " << num(w.x_star()) << " seams " << num(w.seam_in()) << ' ' << num(w.seam_out()) << '\n';
      csv::write_row(os, {"x", "psi", "regime"});
      for (double x : linspace(0.0, d_x1, d_samples)) {
        const DemoPoint p = w.eval(x);
        csv::write_row(os, {num(x), num(p.psi), std::to_string(static_cast<int>(p.regime))});
      }
      return kOk;
    };
  });

  // green
  auto* green = app.add_subcommand("green", "Green function of a slit or strip on a Cartesian window");
  std::string g_geom = "slit", g_bc = "neumann", g_window = "-4,4,-4,4", g_samples = "81x81";
  double g_r = 2.0, g_width = 2.0;
  std::optional<double> g_sx, g_sy;
  int g_terms = 60;
  EvalFlags g_eval;
  g_eval.add(green);
  green->add_option("--geometry", g_geom, "slit or strip")->capture_default_str();
  green->add_option("--bc", g_bc, "neumann or dirichlet")->capture_default_str();
  green->add_option("--a-over-lambda", g_r, "width over wavelength")->capture_default_str();
  green->add_option("--width", g_width, "width a in output length units")
      ->capture_default_str();
  green->add_option("--source-x", g_sx, "source x")->required();
  green->add_option("--source-y", g_sy, "source y")->required();
  green->add_option("--window", g_window, "x0,x1,y0,y1")->capture_default_str();
  green->add_option("--samples", g_samples, "NxM grid")->capture_default_str();
  green->add_option("--n-terms", g_terms, "series truncation")->capture_default_str();
  green->callback([&] {
    action = [&](std::ostream& os) {
      GreenProblem p;
      if (g_geom == "slit") p.geometry = Geometry::Slit;
      else if (g_geom == "strip") p.geometry = Geometry::Strip;
      else throw ConfigError("--geometry must be slit or strip");
      if (g_bc == "neumann") p.bc = Boundary::Neumann;
      else if (g_bc == "dirichlet") p.bc = Boundary::Dirichlet;
      else throw ConfigError("--bc must be neumann or dirichlet");
      if (!(g_r > 0.0) || !(g_width > 0.0)) throw ConfigError("--a-over-lambda and --width must be > 0");
      p.a = g_width;
      p.k = 2.0 * kPi * g_r / g_width;
      p.n_terms = g_terms;
      p.evaluator = g_eval.cfg;
      p.source = to_elliptic(*g_sx, *g_sy, p.a);
      const auto w = split_numbers(g_window, ',', 4, "--window");
      const auto s = split_numbers(g_samples, 'x', 2, "--samples");
      if (s[0] != std::floor(s[0]) || s[1] != std::floor(s[1])) throw ConfigError("--samples must be integers NxM");
      const auto pts = cartesian_grid(w[0], w[1], w[2], w[3], static_cast<int>(s[0]), static_cast<int>(s[1]));
      p.validate();
      auto table = std::make_shared<const CoefficientTable>(
          table_for(p.theta(), p.n_terms, p.n_terms + kDefaultPMaxMargin, cache));
      const GreenFunction gf(p, table);
      const FieldGrid grid = gf.grid(pts);
      csv::write_row(os, {"x", "y", "u", "v", "re", "im"});
      for (size_t i = 0; i < grid.points.size(); ++i) {
        const FieldPoint& f = grid.points[i];
        csv::write_row(os, {num(f.x), num(f.y), num(f.u), num(f.v), num(grid.values[i].real()),
                            num(grid.values[i].imag())});
      }
      return kOk;
    };
  });

  // farfield
  auto* far = app.add_subcommand("farfield", "normalized far-field intensity of the slit");
  std::string f_bc = "dirichlet";
  double f_r = 2.0, f_v0 = kPi / 2.0, f_u0 = 5.0, f_um = 5.0;
  int f_samples = 721, f_terms = 60;
  EvalFlags f_eval;
  f_eval.add(far);
  far->add_option("--bc", f_bc, "neumann or dirichlet")->capture_default_str();
  far->add_option("--a-over-lambda", f_r, "width over wavelength")->capture_default_str();
  far->add_option("--v0", f_v0, "incidence angle (source v)")->capture_default_str();
  far->add_option("--u0", f_u0, "source u (>= 5)")->capture_default_str();
  far->add_option("--um", f_um, "observation u (>= 5)")->capture_default_str();
  far->add_option("--samples", f_samples, "angles on the far side of the screen")->capture_default_str();
  far->add_option("--n-terms", f_terms, "series truncation")->capture_default_str();
  far->callback([&] {
    action = [&](std::ostream& os) {
      GreenProblem p;
      if (f_bc == "neumann") p.bc = Boundary::Neumann;
      else if (f_bc == "dirichlet") p.bc = Boundary::Dirichlet;
      else throw ConfigError("--bc must be neumann or dirichlet");
      if (!(f_r > 0.0)) throw ConfigError("--a-over-lambda must be > 0");
      if (f_samples < 2) throw ConfigError("--samples must be >= 2");
      p.k = kPi * f_r;
      p.a = 2.0;
      p.n_terms = f_terms;
      p.evaluator = f_eval.cfg;
      p.source = {f_u0, normalize_angle(f_v0)};
      p.validate();
      if (!(f_u0 >= 5.0) || !(f_um >= 5.0)) throw DomainError("--u0 and --um must be >= 5");
      // angles open on the side opposite the source
      const double lo = p.source.v > 0.0 ? -kPi : 0.0;
      std::vector<double> al;
      for (int i = 0; i < f_samples; ++i) al.push_back(lo + kPi * (i + 0.5) / f_samples);
      const auto I = far_field(p, f_um, al);
      const auto F = fraunhofer(p.theta(), p.source.v, al);
      csv::write_row(os, {"alpha", "I_norm", "I_fraunhofer"});
      for (size_t i = 0; i < al.size(); ++i) csv::write_row(os, {num(al[i]), num(I[i]), num(F[i])});
      return kOk;
    };
  });

  // validate
  auto* val = app.add_subcommand("validate", "wall identity, boundary conditions and reciprocity");
  ValidationSetup v_setup;
  IdentityOptions v_id;
  EvalFlags v_eval;
  v_eval.add(val);
  val->add_option("--n-terms", v_setup.n_terms, "Green series truncation")->capture_default_str();
  val->add_option("--identity-terms", v_id.n_terms, "wall identity truncation")->capture_default_str();
  val->add_option("--identity-step", v_id.step, "wall identity grid spacing")->capture_default_str();
  val->callback([&] {
    action = [&](std::ostream& os) {
      v_setup.evaluator = v_eval.cfg;
      v_eval.cfg.validate();
      if (v_setup.n_terms < 1 || v_id.n_terms < 1) throw ConfigError("truncations must be >= 1");
      if (!(v_id.step > 0.0 && v_id.step <= 1.0)) throw ConfigError("--identity-step must lie in (0, 1]");
      bool ok = true;
      csv::write_row(os, {"check", "value", "tol", "pass", "detail"});
      for (const CheckResult& r : validation_suite(v_setup, v_id)) {
        csv::write_row(os, {r.name, num(r.value), num(r.tol), r.pass ? "1" : "0", r.detail});
        os.flush();
        ok = ok && r.pass;
      }
      return ok ? kOk : kValidation;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help is a "successful" parse error
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  std::ostream* prev = diag::set_stream(&err);
  struct Restore {
    std::ostream* p;
    ~Restore() { diag::set_stream(p); }
  } restore{prev};
  try {
    if (!output.empty()) {
      // compute into memory so a failed run leaves no partial file
      std::ostringstream buf;
      const int rc = action(buf);
      std::ofstream f(output);
      if (!f) throw ConfigError("cannot open --output " + output);
      f << buf.str();
      return rc;
    }
    return action(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"mathieu"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mathieu::cli
