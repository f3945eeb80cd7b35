#pragma once

#include <complex>
#include <cmath>
#include <vector>

namespace mathieu {

/// Tolerances shared by the series kernels.
struct KernelAccuracy {
  double rel_tol = 1e-12;  ///< 0 < rel_tol < 1e-6
  int max_terms = 500;     ///< >= 50

  void validate() const;
};

/// Highest integer order accepted by the Bessel kernels.
inline constexpr int kMaxBesselOrder = 2000;

/// A double with an extra binary exponent: value = ldexp(mant, exp2).
/// High-order Bessel values at small argument leave the double range long
/// before the products the radial series need do.
struct Scaled {
  double mant = 0.0;
  int exp2 = 0;

  double value() const { return std::ldexp(mant, exp2); }
};

/// J_0..J_pmax and Y_0..Y_pmax at one argument, in scaled form.
///
/// J is obtained by normalized downward (Miller) recurrence, Y by upward
/// recurrence from Y_0, Y_1.  Y is only filled when requested.
class BesselBatch {
public:
  BesselBatch() = default;
  BesselBatch(int p_max, double x, bool with_y);

  int p_max() const { return static_cast<int>(j_mant_.size()) - 1; }
  double x() const { return x_; }
  bool has_y() const { return !y_mant_.empty(); }

  Scaled j(int p) const;
  Scaled y(int p) const;

  /// J_p(x) as a plain double (may underflow to 0).
  double j_value(int p) const { return j(p).value(); }
  /// Y_p(x) as a plain double (may overflow to -inf).
  double y_value(int p) const { return y(p).value(); }

private:
  double x_ = 0.0;
  std::vector<double> j_mant_;
  std::vector<int> j_exp_;
  std::vector<double> y_mant_;
  std::vector<int> y_exp_;
};

/// Products H^(1)_a(x1) J_b(x2) for the radial series, with negative orders
/// mapped through Z_{-k} = (-1)^k Z_k.
class BesselProducts {
public:
  BesselProducts(int p_max, double x1, double x2);

  int p_max() const { return p_max_; }
  double x1() const { return h_.x(); }
  double x2() const { return j_.x(); }

  std::complex<double> hj(int a, int b) const;

  /// d/du [H_a(s e^u) J_b(s e^{-u})] where x1 = s e^u, x2 = s e^{-u}.
  std::complex<double> hj_du(int a, int b) const;

private:
  int p_max_;
  BesselBatch h_;
  BesselBatch j_;
};

/// J_p(x), p >= 0, x >= 0.
double bessel_j(int p, double x);

/// Y_p(x), p >= 0, x > 0.
double bessel_y(int p, double x);

/// H^(1)_p(x) = J_p(x) + i Y_p(x), x > 0.
std::complex<double> hankel1(int p, double x);

/// J_0..J_pmax in plain doubles (underflowing tail flushed to zero).
std::vector<double> bessel_j_all(int p_max, double x);

/// H^(1)_0..H^(1)_pmax; entries that overflow are returned as infinities.
std::vector<std::complex<double>> hankel1_all(int p_max, double x);

struct AiryValues {
  double ai = 0.0;
  double aip = 0.0;
  double bi = 0.0;
  double bip = 0.0;
};

/// Ai, Ai', Bi, Bi' at real x.
AiryValues airy(double x);

/// Exponentially scaled Airy functions.  For x > 0 with zeta = 2/3 x^{3/2}
/// returns Ai e^{zeta}, Ai' e^{zeta}, Bi e^{-zeta}, Bi' e^{-zeta}; for x <= 0
/// the plain values.
AiryValues airy_scaled(double x);

/// Largest |x| handled by the power series; asymptotic expansions beyond.
inline constexpr double kAiryPowerSeriesLimit = 10.0;

}  // namespace mathieu
