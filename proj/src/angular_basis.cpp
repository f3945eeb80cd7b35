#include "mathieu/angular_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mathieu/diagnostics.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/tridiagonal.hpp"

namespace mathieu {

const char* to_string(SymmetryClass c) { return c == SymmetryClass::Even ? "even" : "odd"; }

double CoefficientTable::characteristic(SymmetryClass c, int n) const {
  if (n < 0 || n > n_max) throw DomainError("characteristic: index out of table range");
  if (c == SymmetryClass::Odd && n == 0) throw DomainError("characteristic: b_0 does not exist");
  return c == SymmetryClass::Even ? char_even[n] : char_odd[n];
}

const std::vector<double>& CoefficientTable::coefficients(SymmetryClass c, int n) const {
  if (n < 0 || n > n_max) throw DomainError("coefficients: index out of table range");
  if (c == SymmetryClass::Odd && n == 0) throw DomainError("coefficients: se_0 does not exist");
  return c == SymmetryClass::Even ? coeff_even[n] : coeff_odd[n];
}

namespace {

// The four parity sub-problems of the Fourier recursion.  Each is a symmetric
// tridiagonal matrix in the index k, with Fourier index p = first_p + 2k.
enum class Block { CeEven, CeOdd, SeOdd, SeEven };

struct Subproblem {
  Block block;
  int first_p;
  std::vector<double> diag;
  std::vector<double> off;
  // ce_{2n} is symmetrized with x_0 = sqrt(2) A_0.
  bool scaled_first() const { return block == Block::CeEven; }
};

Subproblem make_subproblem(Block b, double theta, int p_max) {
  Subproblem s{b, 0, {}, {}};
  switch (b) {
    case Block::CeEven: s.first_p = 0; break;
    case Block::CeOdd:
    case Block::SeOdd: s.first_p = 1; break;
    case Block::SeEven: s.first_p = 2; break;
  }
  const int size = p_max >= s.first_p ? (p_max - s.first_p) / 2 + 1 : 0;
  s.diag.resize(size);
  for (int k = 0; k < size; ++k) {
    const double p = s.first_p + 2.0 * k;
    s.diag[k] = p * p;
  }
  if (size > 0) {
    if (b == Block::CeOdd) s.diag[0] += theta;
    if (b == Block::SeOdd) s.diag[0] -= theta;
  }
  s.off.assign(std::max(size - 1, 0), theta);
  if (b == Block::CeEven && size > 1) s.off[0] = std::numbers::sqrt2 * theta;
  return s;
}

double safe_den(double d) {
  constexpr double tiny = 1e-300;
  return d == 0.0 ? tiny : d;
}

// Continued-fraction matching condition at the pivot row m, and its
// derivative in lambda.  sigma[k] = x_k / x_{k+1} (k < m) is built upward from
// the top row and tau[k] = x_k / x_{k-1} (k > m) downward from the bottom;
// each direction runs toward the eigenvector's peak, so both are stable.
struct Matching {
  double g = 0.0;
  double dg = 0.0;
  std::vector<double> sigma;
  std::vector<double> tau;
};

Matching matching(const Subproblem& s, int m, double lambda) {
  const int n = static_cast<int>(s.diag.size());
  Matching r;
  r.sigma.assign(n, 0.0);
  r.tau.assign(n, 0.0);
  double sig_prev = 0.0, dsig_prev = 0.0;
  for (int k = 0; k < m; ++k) {
    const double coupling = k > 0 ? s.off[k - 1] : 0.0;
    const double den = safe_den((lambda - s.diag[k]) - coupling * sig_prev);
    const double dden = 1.0 - coupling * dsig_prev;
    const double sig = s.off[k] / den;
    const double dsig = -sig * dden / den;
    r.sigma[k] = sig;
    sig_prev = sig;
    dsig_prev = dsig;
  }
  double tau_next = 0.0, dtau_next = 0.0;
  for (int k = n - 1; k > m; --k) {
    const double coupling = k < n - 1 ? s.off[k] : 0.0;
    const double den = safe_den((lambda - s.diag[k]) - coupling * tau_next);
    const double dden = 1.0 - coupling * dtau_next;
    const double t = s.off[k - 1] / den;
    const double dt = -t * dden / den;
    r.tau[k] = t;
    tau_next = t;
    dtau_next = dt;
  }
  r.g = s.diag[m] - lambda;
  r.dg = -1.0;
  if (m > 0) {
    r.g += s.off[m - 1] * sig_prev;
    r.dg += s.off[m - 1] * dsig_prev;
  }
  if (m < n - 1) {
    r.g += s.off[m] * tau_next;
    r.dg += s.off[m] * dtau_next;
  }
  return r;
}

// Polishes one eigenpair from QL: Newton on the matching condition for the
// eigenvalue, then the eigenvector from the continued-fraction ratios.  This
// resolves coefficients many orders of magnitude below the peak to full
// relative precision, which plain QL vectors cannot.
void refine(const Subproblem& s, double& lambda, std::vector<double>& x) {
  const int n = static_cast<int>(s.diag.size());
  int m = 0;
  for (int k = 1; k < n; ++k)
    if (std::abs(x[k]) > std::abs(x[m])) m = k;

  const double lambda0 = lambda;
  const double guard = 1e-8 * (1.0 + std::abs(lambda0));
  double lam = lambda0;
  Matching mt = matching(s, m, lam);
  for (int it = 0; it < 20; ++it) {
    if (mt.dg == 0.0) break;
    const double step = -mt.g / mt.dg;
    const double next = lam + step;
    if (std::abs(next - lambda0) > guard) break;  // left the QL basin; keep the last good value
    lam = next;
    mt = matching(s, m, lam);
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(lam)))
      break;
  }
  lambda = lam;

  x.assign(n, 0.0);
  x[m] = 1.0;
  for (int k = m - 1; k >= 0; --k) x[k] = mt.sigma[k] * x[k + 1];
  for (int k = m + 1; k < n; ++k) x[k] = mt.tau[k] * x[k - 1];
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : x) v /= norm;
}

struct SolvedBlock {
  std::vector<double> values;
  std::vector<std::vector<double>> coeffs;  // by Fourier index, length p_max + 1
};

SolvedBlock solve_block(Block b, double theta, int p_max, int count) {
  const Subproblem s = make_subproblem(b, theta, p_max);
  const int size = static_cast<int>(s.diag.size());
  if (count > size) throw ConfigError("build_tables: p_max too small for requested n_max");
  TridiagonalEigen eig = tridiagonal_eigen(s.diag, s.off, true);
  SolvedBlock out;
  out.values.resize(count);
  out.coeffs.assign(count, std::vector<double>(p_max + 1, 0.0));
  const bool is_ce = (b == Block::CeEven || b == Block::CeOdd);
  for (int j = 0; j < count; ++j) {
    double lam = eig.values[j];
    std::vector<double> x = eig.vectors[j];
    refine(s, lam, x);
    if (s.scaled_first()) x[0] /= std::numbers::sqrt2;
    double sign_sum = 0.0;
    for (int k = 0; k < size; ++k) {
      const int p = s.first_p + 2 * k;
      sign_sum += is_ce ? x[k] : p * x[k];
    }
    if (sign_sum == 0.0 || !std::isfinite(sign_sum))
      throw PrecisionError("build_tables: eigenvector sign condition is degenerate");
    const double sgn = sign_sum > 0 ? 1.0 : -1.0;
    for (int k = 0; k < size; ++k) out.coeffs[j][s.first_p + 2 * k] = sgn * x[k];
    out.values[j] = lam;
  }
  return out;
}

}  // namespace

CoefficientTable build_tables(double theta, int n_max, int p_max) {
  if (!std::isfinite(theta) || theta < 0.0) throw DomainError("build_tables: theta must be >= 0");
  if (n_max < 0) throw DomainError("build_tables: n_max must be >= 0");
  if (p_max < n_max) throw ConfigError("build_tables: p_max must be >= n_max");
  if (p_max < 2) p_max = 2;

  CoefficientTable t;
  t.theta = theta;
  t.n_max = n_max;
  t.p_max = p_max;
  t.char_even.assign(n_max + 1, 0.0);
  t.char_odd.assign(n_max + 1, std::numeric_limits<double>::quiet_NaN());
  t.coeff_even.assign(n_max + 1, std::vector<double>(p_max + 1, 0.0));
  t.coeff_odd.assign(n_max + 1, std::vector<double>(p_max + 1, 0.0));

  // Mode n of each class sits in the block matching its parity, at position
  // n / 2 (ce, se odd) or n / 2 - 1 (se even).
  const int n_ce_even = n_max / 2 + 1;
  const int n_ce_odd = (n_max + 1) / 2;
  const int n_se_odd = (n_max + 1) / 2;
  const int n_se_even = n_max / 2;

  SolvedBlock ce_e = solve_block(Block::CeEven, theta, p_max, n_ce_even);
  SolvedBlock ce_o = solve_block(Block::CeOdd, theta, p_max, n_ce_odd);
  SolvedBlock se_o = solve_block(Block::SeOdd, theta, p_max, n_se_odd);
  SolvedBlock se_e = solve_block(Block::SeEven, theta, p_max, n_se_even);

  for (int n = 0; n <= n_max; ++n) {
    if (n % 2 == 0) {
      t.char_even[n] = ce_e.values[n / 2];
      t.coeff_even[n] = std::move(ce_e.coeffs[n / 2]);
      if (n > 0) {
        t.char_odd[n] = se_e.values[n / 2 - 1];
        t.coeff_odd[n] = std::move(se_e.coeffs[n / 2 - 1]);
      }
    } else {
      t.char_even[n] = ce_o.values[n / 2];
      t.coeff_even[n] = std::move(ce_o.coeffs[n / 2]);
      t.char_odd[n] = se_o.values[n / 2];
      t.coeff_odd[n] = std::move(se_o.coeffs[n / 2]);
    }
  }

  // Truncation guard on the highest even-class value.
  {
    const Block b = (n_max % 2 == 0) ? Block::CeEven : Block::CeOdd;
    const Subproblem s = make_subproblem(b, theta, p_max + 50);
    const TridiagonalEigen e = tridiagonal_eigen(s.diag, s.off, false);
    const double wide = e.values[n_max / 2];
    const double here = t.char_even[n_max];
    t.truncation_drift = std::abs(wide - here) / std::max(1.0, std::abs(here));
    if (t.truncation_drift > 1e-10)
      diag::warn("build_tables: a_" + std::to_string(n_max) + " changes by " +
                 std::to_string(t.truncation_drift) + " (relative) when p_max grows by 50");
  }
  return t;
}

CoefficientTable build_tables(double theta, int n_max) {
  return build_tables(theta, n_max, n_max + kDefaultPMaxMargin);
}

std::vector<double> angular_eval_all(const CoefficientTable& table, SymmetryClass c, double v,
                                     int deriv) {
  if (deriv < 0 || deriv > 2) throw DomainError("angular_eval: deriv must be 0, 1 or 2");
  if (!std::isfinite(v)) throw DomainError("angular_eval: non-finite angle");
  const int pm = table.p_max;
  std::vector<double> cs(pm + 1), sn(pm + 1);
  for (int p = 0; p <= pm; ++p) {
    cs[p] = std::cos(p * v);
    sn[p] = std::sin(p * v);
  }
  // basis[p] is the deriv-th derivative of cos(pv) or sin(pv).
  std::vector<double> basis(pm + 1);
  for (int p = 0; p <= pm; ++p) {
    const double pp = p;
    if (c == SymmetryClass::Even) {
      basis[p] = deriv == 0 ? cs[p] : deriv == 1 ? -pp * sn[p] : -pp * pp * cs[p];
    } else {
      basis[p] = deriv == 0 ? sn[p] : deriv == 1 ? pp * cs[p] : -pp * pp * sn[p];
    }
  }
  std::vector<double> out(table.n_max + 1, 0.0);
  const auto& coeffs = c == SymmetryClass::Even ? table.coeff_even : table.coeff_odd;
  for (int n = (c == SymmetryClass::Odd ? 1 : 0); n <= table.n_max; ++n) {
    const auto& a = coeffs[n];
    double s = 0.0;
    for (int p = n % 2; p <= pm; p += 2) s += a[p] * basis[p];
    out[n] = s;
  }
  return out;
}

double angular_eval(const CoefficientTable& table, SymmetryClass c, int n, double v, int deriv) {
  if (c == SymmetryClass::Odd && n == 0) throw DomainError("angular_eval: se_0 does not exist");
  if (n < 0 || n > table.n_max) throw DomainError("angular_eval: index out of table range");
  if (deriv < 0 || deriv > 2) throw DomainError("angular_eval: deriv must be 0, 1 or 2");
  if (!std::isfinite(v)) throw DomainError("angular_eval: non-finite angle");
  const auto& a = table.coefficients(c, n);
  double s = 0.0;
  for (int p = n % 2; p <= table.p_max; p += 2) {
    if (a[p] == 0.0) continue;
    const double pp = p;
    double b;
    if (c == SymmetryClass::Even)
      b = deriv == 0 ? std::cos(p * v) : deriv == 1 ? -pp * std::sin(p * v) : -pp * pp * std::cos(p * v);
    else
      b = deriv == 0 ? std::sin(p * v) : deriv == 1 ? pp * std::cos(p * v) : -pp * pp * std::sin(p * v);
    s += a[p] * b;
  }
  return s;
}

double recursion_residual(const CoefficientTable& table, SymmetryClass c, int n) {
  const auto& a = table.coefficients(c, n);
  const double h = table.characteristic(c, n);
  const double th = table.theta;
  const int pm = table.p_max;
  auto coef = [&](int p) { return (p < 0 || p > pm) ? 0.0 : a[p]; };
  double amax = 0.0;
  for (double v : a) amax = std::max(amax, std::abs(v));
  double worst = 0.0;
  // Skip the last two rows: they feel the truncation by construction.
  for (int p = n % 2; p <= pm - 2; p += 2) {
    if (c == SymmetryClass::Odd && p == 0) continue;
    double r = (h - double(p) * p) * coef(p) - th * (coef(p - 2) + coef(p + 2));
    if (c == SymmetryClass::Even && p == 0) r = h * coef(0) - th * coef(2);
    if (c == SymmetryClass::Even && p == 2) r = (h - 4.0) * coef(2) - th * (2.0 * coef(0) + coef(4));
    if (p == 1) r = (h - 1.0 - (c == SymmetryClass::Even ? th : -th)) * coef(1) - th * coef(3);
    if (c == SymmetryClass::Odd && p == 2) r = (h - 4.0) * coef(2) - th * coef(4);
    worst = std::max(worst, std::abs(r));
  }
  return amax > 0 ? worst / amax : worst;
}

}  // namespace mathieu
