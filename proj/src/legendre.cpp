#include "rkdg/legendre.hpp"

#include <cmath>

#include "rkdg/error.hpp"

namespace rkdg {

std::array<std::vector<double>, kMaxDerivative + 1> legendre_table(int k, double xi) {
  std::array<std::vector<double>, kMaxDerivative + 1> t;
  for (auto& row : t) row.assign(static_cast<std::size_t>(k) + 1, 0.0);
  t[0][0] = 1.0;
  if (k >= 1) t[0][1] = xi;
  for (int m = 1; m < k; ++m) t[0][m + 1] = ((2.0 * m + 1.0) * xi * t[0][m] - m * t[0][m - 1]) / (m + 1.0);
  // P^{(d)}_{m+1} = P^{(d)}_{m-1} + (2m+1) P^{(d-1)}_m
  for (int d = 1; d <= kMaxDerivative; ++d) {
    if (k >= 1) t[d][1] = d == 1 ? 1.0 : 0.0;
    for (int m = 1; m < k; ++m) t[d][m + 1] = t[d][m - 1] + (2.0 * m + 1.0) * t[d - 1][m];
  }
  return t;
}

std::vector<double> cell_basis(int k, double width, double xi, int derivative) {
  if (derivative < 0 || derivative > kMaxDerivative) throw InvalidArgument("cell_basis: derivative order out of range");
  const auto t = legendre_table(k, xi);
  const double scale = std::pow(2.0 / width, derivative);
  std::vector<double> out(static_cast<std::size_t>(k) + 1);
  for (int m = 0; m <= k; ++m) out[m] = std::sqrt((2.0 * m + 1.0) / width) * scale * t[derivative][m];
  return out;
}

}  // namespace rkdg
