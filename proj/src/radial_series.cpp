#include "mathieu/radial_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mathieu/errors.hpp"
#include "mathieu/special_functions.hpp"

namespace mathieu {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

void check_mode(const CoefficientTable& t, SymmetryClass c, int n, double u, const char* who) {
  if (n < 0 || n > t.n_max) throw DomainError(std::string(who) + ": index out of table range");
  if (c == SymmetryClass::Odd && n == 0) throw DomainError(std::string(who) + ": Ne_0 does not exist");
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError(std::string(who) + ": u must be finite and >= 0");
  if (!(t.theta > 0.0)) throw DomainError(std::string(who) + ": needs theta > 0");
}

ModePrefactor angular_prefactor(const CoefficientTable& table, SymmetryClass c, int n);
double safe_prefactor(const CoefficientTable& table, SymmetryClass c, int n);

SeriesResult bare_series(const CoefficientTable& table, SymmetryClass c, int n, double u,
                         const SeriesOptions& opts, double pref) {
  const double s = std::sqrt(table.theta);
  const int pm = table.p_max;
  // Bessel orders reach (p_max + 1) / 2 + 1 for Fourier index p_max.
  const int order_max = pm / 2 + 2;
  const BesselProducts bp(order_max, s * std::exp(u), s * std::exp(-u));
  const auto& coef = table.coefficients(c, n);
  const bool even_class = c == SymmetryClass::Even;
  const bool even_index = n % 2 == 0;

  SeriesResult r;
  cplx sum(0.0), dsum(0.0);
  double abs_re = 0.0, abs_im = 0.0, abs_dre = 0.0;
  int small_run = 0;
  int k = (!even_class && even_index) ? 1 : 0;
  for (;; ++k) {
    const int p = even_index ? 2 * k : 2 * k + 1;
    if (p > pm) break;
    const double a = coef[p];
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    cplx term, dterm;
    if (even_class && even_index) {
      term = bp.hj(k, k);
      dterm = bp.hj_du(k, k);
    } else if (even_class) {
      term = bp.hj(k + 1, k) + bp.hj(k, k + 1);
      dterm = bp.hj_du(k + 1, k) + bp.hj_du(k, k + 1);
    } else if (!even_index) {
      term = bp.hj(k + 1, k) - bp.hj(k, k + 1);
      dterm = bp.hj_du(k + 1, k) - bp.hj_du(k, k + 1);
    } else {
      term = bp.hj(k - 1, k + 1) - bp.hj(k + 1, k - 1);
      dterm = bp.hj_du(k - 1, k + 1) - bp.hj_du(k + 1, k - 1);
    }
    term *= sgn * a;
    dterm *= sgn * a;
    sum += term;
    dsum += dterm;
    ++r.terms;
    abs_re += std::abs(term.real());
    abs_im += std::abs(term.imag());
    abs_dre += std::abs(dterm.real());
    // Leading coefficients of high modes are tiny, so only start testing for
    // convergence past the coefficient peak.
    if (p > n) {
      const bool small = std::abs(term) <= opts.rel_tol * std::abs(sum) &&
                         std::abs(dterm) <= opts.rel_tol * std::abs(dsum);
      small_run = small ? small_run + 1 : 0;
      if (small_run >= opts.consecutive) break;
    }
  }
  if (small_run < opts.consecutive) {
    // Ran out of coefficients.  Accept if the tail is already negligible at
    // double precision, otherwise report.
    const double last = std::abs(coef[pm - (pm - n) % 2]);
    if (!(last <= 1e-15)) throw TruncationError("radial_series: series not converged at p_max", last);
  }
  // Cancellation per component, sum of |terms| over |sum|.  The first-kind
  // (real) part is where the alternating terms cancel.  A component that is
  // exactly zero (odd class at u = 0) carries no information.
  auto ratio = [](double mags, double v) { return v != 0.0 ? mags / std::abs(v) : 1.0; };
  double canc_re = std::max(ratio(abs_re, sum.real()), ratio(abs_dre, dsum.real()));
  const double canc_im = ratio(abs_im, sum.imag());

  // Near u = 0 the same first-kind function is far better conditioned as
  // the continued Fourier series ce(iu) = sum A_p cosh(pu) (se: -i se(iu) =
  // sum B_p sinh(pu)).  Use it whenever it cancels less.
  if (pref != 0.0 && std::isfinite(pref) && u * pm < 600.0) {
    double f = 0.0, df = 0.0, fmag = 0.0, dfmag = 0.0;
    for (int p = n % 2; p <= pm; p += 2) {
      const double a = coef[p];
      if (a == 0.0) continue;
      const double ch = std::cosh(p * u), sh = std::sinh(p * u);
      const double t = even_class ? a * ch : a * sh;
      const double dt = even_class ? p * a * sh : p * a * ch;
      f += t;
      df += dt;
      fmag += std::abs(t);
      dfmag += std::abs(dt);
    }
    const double canc_f = std::max(ratio(fmag, f), ratio(dfmag, df));
    if (canc_f < canc_re) {
      sum.real(f / pref);
      dsum.real(df / pref);
      canc_re = canc_f;
    }
  }
  r.raw_value = sum;
  r.raw_derivative = dsum;
  r.cancellation = std::max(canc_re, canc_im);
  r.cancellation_flag = r.cancellation > 1e6;
  return r;
}

// Angular-data form of C_n / D_n and the boundary value it implies.
// Throws PrecisionError only if the leading coefficient has underflowed.
ModePrefactor angular_prefactor(const CoefficientTable& table, SymmetryClass c, int n) {
  const double th = table.theta;
  const double st = std::sqrt(th);
  const double h = kPi / 2.0;
  const auto& a = table.coefficients(c, n);
  ModePrefactor m;
  double denom;
  if (c == SymmetryClass::Even) {
    const double ce0 = angular_eval(table, c, n, 0.0, 0);
    if (n % 2 == 0) {
      const double ceh = angular_eval(table, c, n, h, 0);
      denom = a[0] * a[0];
      m.value = ceh * ce0 / denom;
      m.boundary = 2.0 * kI * ceh * m.value / kPi;
    } else {
      const double cehp = angular_eval(table, c, n, h, 1);
      denom = st * a[1] * a[1];
      m.value = -cehp * ce0 / denom;
      m.boundary = -2.0 * kI * cehp * m.value / (kPi * st);
    }
  } else {
    const double se0p = angular_eval(table, c, n, 0.0, 1);
    if (n % 2 == 1) {
      const double seh = angular_eval(table, c, n, h, 0);
      denom = st * a[1] * a[1];
      m.value = seh * se0p / denom;
      m.boundary = -2.0 * kI * seh * m.value / (kPi * st);
    } else {
      const double sehp = angular_eval(table, c, n, h, 1);
      denom = th * a[2] * a[2];
      m.value = -sehp * se0p / denom;
      m.boundary = 2.0 * kI * sehp * m.value / (kPi * th);
    }
  }
  const std::string tag = std::string(c == SymmetryClass::Even ? "C_" : "D_") + std::to_string(n);
  if (!(denom > std::numeric_limits<double>::min() * 1e20) || !std::isfinite(m.value) || m.value == 0.0)
    throw PrecisionError("prefactor " + tag + ": leading Fourier coefficient underflows");
  return m;
}

double safe_prefactor(const CoefficientTable& table, SymmetryClass c, int n) {
  try {
    return angular_prefactor(table, c, n).value;
  } catch (const PrecisionError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

SeriesResult radial_series(const CoefficientTable& table, SymmetryClass c, int n, double u,
                           const SeriesOptions& opts) {
  check_mode(table, c, n, u, "radial_series");
  const double pref = safe_prefactor(table, c, n);
  SeriesResult r = bare_series(table, c, n, u, opts, pref);
  r.value = pref * r.raw_value;
  r.derivative = pref * r.raw_derivative;
  return r;
}

ModePrefactor prefactor(const CoefficientTable& table, SymmetryClass c, int n) {
  check_mode(table, c, n, 0.0, "prefactor");
  ModePrefactor m = angular_prefactor(table, c, n);
  const std::string tag = std::string(c == SymmetryClass::Even ? "C_" : "D_") + std::to_string(n);
  // The other closed form: the series itself must reproduce the boundary value.
  SeriesResult at0;
  try {
    at0 = bare_series(table, c, n, 0.0, SeriesOptions{}, m.value);
  } catch (const TruncationError&) {
    throw PrecisionError("prefactor " + tag + ": series does not converge at u = 0");
  }
  const cplx series_boundary =
      m.value * (c == SymmetryClass::Even ? at0.raw_derivative : at0.raw_value);
  m.discrepancy = std::abs(series_boundary / m.boundary - 1.0);
  m.trusted = m.discrepancy <= kPrefactorTrustTol;
  if (!m.trusted)
    throw PrecisionError("prefactor " + tag + ": closed forms disagree by " +
                         std::to_string(m.discrepancy) + " (series cancellation)");
  return m;
}

Prefactors prefactors(const CoefficientTable& table) {
  Prefactors out;
  out.c.resize(table.n_max + 1);
  out.d.resize(table.n_max + 1);
  for (int n = 0; n <= table.n_max; ++n) {
    for (SymmetryClass c : {SymmetryClass::Even, SymmetryClass::Odd}) {
      if (c == SymmetryClass::Odd && n == 0) continue;
      ModePrefactor& slot = c == SymmetryClass::Even ? out.c[n] : out.d[n];
      try {
        slot = angular_prefactor(table, c, n);
        const SeriesResult at0 = bare_series(table, c, n, 0.0, SeriesOptions{}, slot.value);
        const cplx sb = slot.value * (c == SymmetryClass::Even ? at0.raw_derivative : at0.raw_value);
        slot.discrepancy = std::abs(sb / slot.boundary - 1.0);
        slot.trusted = slot.discrepancy <= kPrefactorTrustTol;
      } catch (const std::exception&) {
        slot.trusted = false;
        slot.discrepancy = std::numeric_limits<double>::infinity();
      }
    }
  }
  return out;
}

cplx me1_series(const CoefficientTable& table, int n, double u) {
  return radial_series(table, SymmetryClass::Even, n, u).value;
}

cplx ne1_series(const CoefficientTable& table, int n, double u) {
  if (n < 1) throw DomainError("ne1_series: n must be >= 1");
  return radial_series(table, SymmetryClass::Odd, n, u).value;
}

RadialKindValue radial_kind(const CoefficientTable& table, SymmetryClass c, int n, double u) {
  return {radial_series(table, c, n, u).value};
}

}  // namespace mathieu
