#pragma once

#include <complex>
#include <vector>

#include "mathieu/angular_basis.hpp"

namespace mathieu {

using cplx = std::complex<double>;

/// Third-kind radial value with its first/second-kind decomposition:
/// Me1 = Ce + i Fey (even class), Ne1 = Se + i Gey (odd class).
struct RadialKindValue {
  cplx me1;

  double first_kind() const { return me1.real(); }
  double second_kind() const { return me1.imag(); }
  /// Second solution of the fourth kind, Ce - i Fey; never stored.
  cplx fourth_kind() const { return std::conj(me1); }
};

/// Result of one Bessel-product series evaluation.
struct SeriesResult {
  cplx value;       ///< with prefactor
  cplx derivative;  ///< d/du, with prefactor
  cplx raw_value;   ///< bare sum, prefactor not applied
  cplx raw_derivative;
  int terms = 0;
  /// max |partial sum| / |final sum|; above 1e6 the result has lost most digits.
  double cancellation = 1.0;
  bool cancellation_flag = false;
};

struct SeriesOptions {
  double rel_tol = 1e-14;  ///< per-term stop threshold relative to the running sum
  int consecutive = 3;     ///< number of consecutive small terms required
};

/// Prefactor of one mode: C_n (even class) or D_n (odd class) from the
/// angular data, plus the boundary value implied by the other closed form.
struct ModePrefactor {
  double value = 0.0;  ///< C_n or D_n, angular form
  /// Me1'(0) (even) or Ne1(0) (odd) predicted from the angular data; purely
  /// imaginary.
  cplx boundary;
  /// |series form / angular form - 1| from the two closed expressions.
  double discrepancy = 0.0;
  bool trusted = false;
};

struct Prefactors {
  std::vector<ModePrefactor> c;  ///< index n = 0..n_max
  std::vector<ModePrefactor> d;  ///< index n = 1..n_max (d[0] unused)
};

/// Relative agreement between the two closed forms required to trust a mode.
inline constexpr double kPrefactorTrustTol = 1e-6;

/// Bare sum and derivative of the series for one mode.
SeriesResult radial_series(const CoefficientTable& table, SymmetryClass c, int n, double u,
                           const SeriesOptions& opts = {});

/// Me^(1)_n(u) with the angular-form prefactor.
cplx me1_series(const CoefficientTable& table, int n, double u);

/// Ne^(1)_n(u), n >= 1.
cplx ne1_series(const CoefficientTable& table, int n, double u);

RadialKindValue radial_kind(const CoefficientTable& table, SymmetryClass c, int n, double u);

/// Prefactor of one mode.  Throws PrecisionError when the angular data it
/// divides by has underflowed or the two closed forms disagree by more than
/// kPrefactorTrustTol (the series has lost its digits to cancellation).
ModePrefactor prefactor(const CoefficientTable& table, SymmetryClass c, int n);

/// All prefactors; untrusted modes are marked rather than raised.
Prefactors prefactors(const CoefficientTable& table);

}  // namespace mathieu
