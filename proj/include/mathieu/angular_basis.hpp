#pragma once

#include <vector>

namespace mathieu {

/// Even class: ce_n with characteristic value a_n.  Odd class: se_n with b_n.
enum class SymmetryClass { Even, Odd };

const char* to_string(SymmetryClass c);

/// Characteristic values and Fourier coefficients at one theta.
///
/// coeff_even[n][p] is A^(n)_p and coeff_odd[n][p] is B^(n)_p for
/// p = 0..p_max; entries whose parity differs from n are zero, as is
/// coeff_odd[n][0].  char_odd[0] and coeff_odd[0] are placeholders (NaN / 0)
/// since se_0 does not exist.
struct CoefficientTable {
  double theta = 0.0;
  int n_max = 0;
  int p_max = 0;
  std::vector<double> char_even;
  std::vector<double> char_odd;
  std::vector<std::vector<double>> coeff_even;
  std::vector<std::vector<double>> coeff_odd;
  /// |a_nmax(p_max) - a_nmax(p_max + 50)| / |a_nmax|, filled by build_tables.
  double truncation_drift = 0.0;

  double characteristic(SymmetryClass c, int n) const;
  const std::vector<double>& coefficients(SymmetryClass c, int n) const;
};

inline constexpr int kDefaultPMaxMargin = 100;

/// Builds the table for modes 0..n_max with Fourier indices 0..p_max.
/// Throws DomainError for theta < 0 or n_max < 0, ConfigError if p_max < n_max.
CoefficientTable build_tables(double theta, int n_max, int p_max);

/// Convenience: p_max = n_max + kDefaultPMaxMargin.
CoefficientTable build_tables(double theta, int n_max);

/// ce_n(v) / se_n(v) or their first or second derivative (deriv in {0,1,2}).
double angular_eval(const CoefficientTable& table, SymmetryClass c, int n, double v, int deriv = 0);

/// All modes at one angle: out[n] for n = 0..n_max (out[0] = 0 for Odd).
std::vector<double> angular_eval_all(const CoefficientTable& table, SymmetryClass c, double v,
                                     int deriv = 0);

/// Residual of the three-term recursion for one mode, relative to the
/// largest coefficient magnitude.
double recursion_residual(const CoefficientTable& table, SymmetryClass c, int n);

}  // namespace mathieu
