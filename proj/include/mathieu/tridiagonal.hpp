#pragma once

#include <vector>

namespace mathieu {

/// Eigen-decomposition of a real symmetric tridiagonal matrix.
struct TridiagonalEigen {
  std::vector<double> values;                ///< ascending
  std::vector<std::vector<double>> vectors;  ///< vectors[k] pairs with values[k]
};

/// Implicit QL with Wilkinson-style shifts.  `diag` has size n, `off` has
/// size n-1 (off[i] couples rows i and i+1).  Throws std::runtime_error if an
/// eigenvalue fails to converge within 60 sweeps.
TridiagonalEigen tridiagonal_eigen(const std::vector<double>& diag, const std::vector<double>& off,
                                   bool want_vectors = true);

}  // namespace mathieu
