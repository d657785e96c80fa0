#pragma once

#include <vector>

namespace rkdg {

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule, 1 <= n <= 32; exact for degree 2n-1.
QuadratureRule gauss_legendre(int n);

}  // namespace rkdg
