#include "mathieu/tridiagonal.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mathieu {

TridiagonalEigen tridiagonal_eigen(const std::vector<double>& diag, const std::vector<double>& off,
                                   bool want_vectors) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) return {};
  if (static_cast<int>(off.size()) != n - 1)
    throw std::invalid_argument("tridiagonal_eigen: off-diagonal must have n-1 entries");

  std::vector<double> d = diag;
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());

  // z is stored column-major: z[i * n + k] is component i of vector k.
  std::vector<double> z;
  if (want_vectors) {
    z.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) z[static_cast<size_t>(i) * n + i] = 1.0;
  }

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw std::runtime_error("tridiagonal_eigen: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (want_vectors) {
            for (int k = 0; k < n; ++k) {
              double* row = &z[static_cast<size_t>(k) * n];
              f = row[i + 1];
              row[i + 1] = s * row[i] + c * f;
              row[i] = c * row[i] - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.values.resize(n);
  if (want_vectors) out.vectors.assign(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    if (want_vectors)
      for (int i = 0; i < n; ++i) out.vectors[k][i] = z[static_cast<size_t>(i) * n + order[k]];
  }
  return out;
}

}  // namespace mathieu
