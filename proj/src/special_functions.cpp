#include "mathieu/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mathieu/errors.hpp"

namespace mathieu {

void KernelAccuracy::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1e-6))
    throw ConfigError("KernelAccuracy: rel_tol must lie in (0, 1e-6)");
  if (max_terms < 50) throw ConfigError("KernelAccuracy: max_terms must be >= 50");
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr int kRescaleBits = 500;
const double kRescaleUp = std::ldexp(1.0, kRescaleBits);
const double kRescaleDown = std::ldexp(1.0, -kRescaleBits);

// Above this argument Y_0, Y_1 come from Hankel's asymptotic expansion.
constexpr double kHankelAsymptoticMin = 25.0;

void check_order(int p, const char* who) {
  if (p < 0 || p > kMaxBesselOrder)
    throw DomainError(std::string(who) + ": order out of range [0, " +
                      std::to_string(kMaxBesselOrder) + "]");
}

void check_argument(double x, bool strictly_positive, const char* who) {
  if (!std::isfinite(x)) throw DomainError(std::string(who) + ": non-finite argument");
  if (strictly_positive ? !(x > 0.0) : !(x >= 0.0))
    throw DomainError(std::string(who) + (strictly_positive ? ": argument must be > 0"
                                                            : ": argument must be >= 0"));
}

// Hankel's expansion for integer order nu at large x; returns (J, Y).
std::pair<double, double> hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0, q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      term *= (mu - odd * odd) / (k * 8.0 * x);
    }
    const double mag = std::abs(term);
    if (mag > prev) break;  // asymptotic series started to diverge
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0)
      p += sign * term;
    else
      q += sign * term;
    if (mag < 1e-18) break;
    prev = mag;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double c = std::cos(chi), s = std::sin(chi);
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

int miller_start(int p_max, double x) {
  const double top = std::max(static_cast<double>(p_max), std::ceil(x));
  int n = static_cast<int>(top) + 40 + 6 * static_cast<int>(std::ceil(std::cbrt(x + 1.0)));
  if (n % 2) ++n;
  return n;
}

// Normalized downward recurrence.  Stores mantissa/exponent pairs for
// orders 0..p_max.
void miller_scaled(int p_max, double x, std::vector<double>& mant, std::vector<int>& expo) {
  mant.assign(p_max + 1, 0.0);
  expo.assign(p_max + 1, 0);
  if (x == 0.0) {
    mant[0] = 1.0;
    return;
  }
  const int start = miller_start(p_max, x);
  std::vector<int> level(p_max + 1, 0);
  int cur_level = 0;
  double f_next = 0.0;  // f_{p+1}
  double f = 1e-200;    // f_p at p = start
  double norm = 0.0;    // J_0 + 2 sum J_{2k}, in units of 2^{cur_level}
  for (int p = start; p >= 0; --p) {
    if (p <= p_max) {
      mant[p] = f;
      level[p] = cur_level;
    }
    if (p % 2 == 0) norm += (p == 0 ? 1.0 : 2.0) * f;
    if (p == 0) break;
    double f_prev = (2.0 * p / x) * f - f_next;
    if (std::abs(f_prev) > kRescaleUp) {
      f_prev *= kRescaleDown;
      f *= kRescaleDown;
      norm *= kRescaleDown;
      cur_level += kRescaleBits;
    }
    f_next = f;
    f = f_prev;
  }
  for (int p = 0; p <= p_max; ++p) {
    mant[p] /= norm;
    expo[p] = level[p] - cur_level;
    // renormalize mantissa into a sane range
    int e = 0;
    const double m = std::frexp(mant[p], &e);
    mant[p] = m;
    expo[p] += e;
  }
}

// Y_0, Y_1 from the Neumann series in J_k (valid for all x > 0, used below
// the asymptotic threshold).
std::pair<double, double> y01_neumann(double x) {
  const int kmax = static_cast<int>(x) + 40;
  std::vector<double> m;
  std::vector<int> e;
  miller_scaled(2 * kmax + 2, x, m, e);
  auto jv = [&](int p) { return std::ldexp(m[p], e[p]); };
  const double lg = std::log(0.5 * x) + kEulerGamma;
  double s0 = 0.0, s1 = 0.0;
  for (int k = kmax; k >= 1; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sign * jv(2 * k) / k;
    s1 += sign * (2.0 * k + 1.0) * jv(2 * k + 1) / (static_cast<double>(k) * (k + 1.0));
  }
  const double y0 = (2.0 / kPi) * (lg * jv(0) - 2.0 * s0);
  const double y1 = (2.0 / kPi) * (-jv(0) / x + (lg - 1.0) * jv(1) - s1);
  return {y0, y1};
}

}  // namespace

BesselBatch::BesselBatch(int p_max, double x, bool with_y) : x_(x) {
  if (p_max < 0 || p_max > kMaxBesselOrder) throw DomainError("BesselBatch: order out of range");
  check_argument(x, with_y, "BesselBatch");
  miller_scaled(p_max, x, j_mant_, j_exp_);
  if (!with_y) return;

  double y0, y1;
  if (x >= kHankelAsymptoticMin) {
    y0 = hankel_asymptotic(0, x).second;
    y1 = hankel_asymptotic(1, x).second;
  } else {
    std::tie(y0, y1) = y01_neumann(x);
  }
  y_mant_.assign(p_max + 1, 0.0);
  y_exp_.assign(p_max + 1, 0);
  int cur_level = 0;
  double prev = y0, cur = y1;
  y_mant_[0] = y0;
  if (p_max >= 1) y_mant_[1] = y1;
  for (int p = 1; p < p_max; ++p) {
    double next = (2.0 * p / x) * cur - prev;
    if (std::abs(next) > kRescaleUp) {
      next *= kRescaleDown;
      cur *= kRescaleDown;
      cur_level += kRescaleBits;
    }
    prev = cur;
    cur = next;
    y_mant_[p + 1] = next;
    y_exp_[p + 1] = cur_level;
  }
  for (int p = 0; p <= p_max; ++p) {
    int e = 0;
    y_mant_[p] = std::frexp(y_mant_[p], &e);
    y_exp_[p] += e;
  }
}

Scaled BesselBatch::j(int p) const { return {j_mant_.at(p), j_exp_.at(p)}; }
Scaled BesselBatch::y(int p) const { return {y_mant_.at(p), y_exp_.at(p)}; }

BesselProducts::BesselProducts(int p_max, double x1, double x2)
    : p_max_(p_max), h_(p_max + 2, x1, true), j_(p_max + 2, x2, false) {}

std::complex<double> BesselProducts::hj(int a, int b) const {
  double sign = 1.0;
  if (a < 0) {
    a = -a;
    if (a % 2) sign = -sign;
  }
  if (b < 0) {
    b = -b;
    if (b % 2) sign = -sign;
  }
  const Scaled jb = j_.j(b);
  if (jb.mant == 0.0) return {0.0, 0.0};
  const Scaled ja = h_.j(a);
  const Scaled ya = h_.y(a);
  const double re = std::ldexp(ja.mant * jb.mant, ja.exp2 + jb.exp2);
  const double im = std::ldexp(ya.mant * jb.mant, ya.exp2 + jb.exp2);
  return {sign * re, sign * im};
}

std::complex<double> BesselProducts::hj_du(int a, int b) const {
  // Z'_m(x) = Z_{m-1}(x) - (m/x) Z_m(x) for both kinds.
  return x1() * hj(a - 1, b) - x2() * hj(a, b - 1) + static_cast<double>(b - a) * hj(a, b);
}

double bessel_j(int p, double x) {
  check_order(p, "bessel_j");
  check_argument(x, false, "bessel_j");
  return BesselBatch(p, x, false).j_value(p);
}

double bessel_y(int p, double x) {
  check_order(p, "bessel_y");
  check_argument(x, true, "bessel_y");
  return BesselBatch(p, x, true).y_value(p);
}

std::complex<double> hankel1(int p, double x) {
  check_order(p, "hankel1");
  check_argument(x, true, "hankel1");
  BesselBatch b(p, x, true);
  return {b.j_value(p), b.y_value(p)};
}

std::vector<double> bessel_j_all(int p_max, double x) {
  check_order(p_max, "bessel_j_all");
  check_argument(x, false, "bessel_j_all");
  BesselBatch b(p_max, x, false);
  std::vector<double> out(p_max + 1);
  for (int p = 0; p <= p_max; ++p) out[p] = b.j_value(p);
  return out;
}

std::vector<std::complex<double>> hankel1_all(int p_max, double x) {
  check_order(p_max, "hankel1_all");
  check_argument(x, true, "hankel1_all");
  BesselBatch b(p_max, x, true);
  std::vector<std::complex<double>> out(p_max + 1);
  for (int p = 0; p <= p_max; ++p) out[p] = {b.j_value(p), b.y_value(p)};
  return out;
}

// ---------------------------------------------------------------------------
// Airy functions

namespace {

// Ai(0), -Ai'(0), sqrt(3) to quad precision.
template <typename Real>
struct AiryConstants;

template <>
struct AiryConstants<long double> {
  static constexpr long double c1 = 0.355028053887817239260063186004183176L;
  static constexpr long double c2 = 0.258819403792806798405183560189203963L;
  static constexpr long double sqrt3 = 1.732050807568877293527446341505872367L;
};

// No quad literals without GNU extensions: build each constant as hi + lo.
template <>
struct AiryConstants<__float128> {
  static constexpr __float128 c1 =
      __float128(0.3550280538878172) + __float128(2.05233632436212e-17);
  static constexpr __float128 c2 =
      __float128(0.2588194037928068) + __float128(-2.522243111610832e-17);
  static constexpr __float128 sqrt3 =
      __float128(1.7320508075688772) + __float128(1.0035084221806903e-16);
};

// Maclaurin series Ai = c1 f - c2 g, Bi = sqrt3 (c1 f + c2 g).
template <typename Real>
AiryValues airy_maclaurin(double xd) {
  using C = AiryConstants<Real>;
  const Real x = xd;
  const Real x3 = x * x * x;
  Real f = 1, g = x, fp = 0, gp = 1;
  Real tf = 1, tg = x, tfp = x * x / 2, tgp = 1;
  fp = tfp;
  const Real eps = std::numeric_limits<long double>::epsilon() * 1e-16L;
  for (int k = 1; k < 200; ++k) {
    tf *= x3 / Real((3 * k - 1) * (3 * k));
    tg *= x3 / Real((3 * k) * (3 * k + 1));
    gp += (tgp *= x3 / Real((3 * k) * (3 * k - 2)));
    f += tf;
    g += tg;
    if (k >= 2) fp += (tfp *= x3 / Real((3 * k - 3) * (3 * k - 1)));
    const Real mag = (tf < 0 ? -tf : tf) + (tg < 0 ? -tg : tg);
    if (mag < Real(eps) && k > 3) break;
  }
  AiryValues v;
  v.ai = static_cast<double>(C::c1 * f - C::c2 * g);
  v.bi = static_cast<double>(C::sqrt3 * (C::c1 * f + C::c2 * g));
  v.aip = static_cast<double>(C::c1 * fp - C::c2 * gp);
  v.bip = static_cast<double>(C::sqrt3 * (C::c1 * fp + C::c2 * gp));
  return v;
}

// Coefficients u_k, v_k of the large-argument expansions.
struct AiryAsymptoticCoefficients {
  static constexpr int kTerms = 24;
  double u[kTerms];
  double v[kTerms];
  AiryAsymptoticCoefficients() {
    u[0] = v[0] = 1.0;
    for (int k = 1; k < kTerms; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
             ((2.0 * k - 1.0) * 216.0 * k);
      v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
    }
  }
};

const AiryAsymptoticCoefficients& asym() {
  static const AiryAsymptoticCoefficients c;
  return c;
}

// Scaled values for x > limit (positive side).
AiryValues airy_asymptotic_positive_scaled(double x) {
  const auto& c = asym();
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double su_alt = 0, sv_alt = 0, su = 0, sv = 0, pw = 1.0;
  for (int k = 0; k < AiryAsymptoticCoefficients::kTerms; ++k) {
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    su_alt += sgn * c.u[k] * pw;
    sv_alt += sgn * c.v[k] * pw;
    su += c.u[k] * pw;
    sv += c.v[k] * pw;
    pw /= zeta;
  }
  const double rpi = 1.0 / std::sqrt(kPi);
  const double x14 = std::sqrt(std::sqrt(x));
  AiryValues r;
  r.ai = 0.5 * rpi / x14 * su_alt;
  r.aip = -0.5 * rpi * x14 * sv_alt;
  r.bi = rpi / x14 * su;
  r.bip = rpi * x14 * sv;
  return r;
}

AiryValues airy_asymptotic_negative(double x) {
  const auto& c = asym();
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double ue = 0, uo = 0, ve = 0, vo = 0;
  double pw = 1.0;
  for (int k = 0; k < AiryAsymptoticCoefficients::kTerms; ++k) {
    const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      ue += sgn * c.u[k] * pw;
      ve += sgn * c.v[k] * pw;
    } else {
      uo += sgn * c.u[k] * pw;
      vo += sgn * c.v[k] * pw;
    }
    pw /= zeta;
  }
  const double phase = zeta + 0.25 * kPi;
  const double s = std::sin(phase), co = std::cos(phase);
  const double rpi = 1.0 / std::sqrt(kPi);
  const double z14 = std::sqrt(std::sqrt(z));
  AiryValues r;
  r.ai = rpi / z14 * (s * ue - co * uo);
  r.bi = rpi / z14 * (co * ue + s * uo);
  r.aip = -rpi * z14 * (co * ve + s * vo);
  r.bip = rpi * z14 * (s * ve - co * vo);
  return r;
}

AiryValues airy_power_series(double x) {
  // Long double is enough where the cancellation in Ai stays below ~1e5.
  if (x >= -7.0 && x <= 4.5) return airy_maclaurin<long double>(x);
  return airy_maclaurin<__float128>(x);
}

}  // namespace

AiryValues airy(double x) {
  if (!std::isfinite(x)) throw DomainError("airy: non-finite argument");
  if (std::abs(x) <= kAiryPowerSeriesLimit) return airy_power_series(x);
  if (x < 0) return airy_asymptotic_negative(x);
  AiryValues s = airy_asymptotic_positive_scaled(x);
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double em = std::exp(-zeta), ep = std::exp(zeta);
  return {s.ai * em, s.aip * em, s.bi * ep, s.bip * ep};
}

AiryValues airy_scaled(double x) {
  if (!std::isfinite(x)) throw DomainError("airy_scaled: non-finite argument");
  if (x <= 0.0) return airy(x);
  if (x > kAiryPowerSeriesLimit) return airy_asymptotic_positive_scaled(x);
  AiryValues v = airy_power_series(x);
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double ep = std::exp(zeta), em = std::exp(-zeta);
  return {v.ai * ep, v.aip * ep, v.bi * em, v.bip * em};
}

}  // namespace mathieu
