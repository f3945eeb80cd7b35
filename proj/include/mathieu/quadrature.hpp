#pragma once

#include <functional>

namespace mathieu {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b].  Intervals are bisected
/// until the Kronrod/Gauss difference over the whole range meets
/// max(abs_tol, rel_tol * |integral|) or max_depth is reached.
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                double rel_tol = 1e-13, double abs_tol = 0.0,
                                int max_depth = 30);

}  // namespace mathieu
