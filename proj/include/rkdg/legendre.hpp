#pragma once

#include <array>
#include <vector>

namespace rkdg {

/// Maximum derivative order tabulated by the basis evaluators.
inline constexpr int kMaxDerivative = 3;

/// Values of P_0..P_k and their first kMaxDerivative derivatives at xi.
/// Row d holds the d-th derivative.
std::array<std::vector<double>, kMaxDerivative + 1> legendre_table(int k, double xi);

/// Orthonormal modal basis on a cell of width h:
///   phi_m(x) = sqrt((2m+1)/h) P_m(2(x - x_j)/h).
/// Returns d^d/dx^d phi_m at reference point xi for m = 0..k.
std::vector<double> cell_basis(int k, double width, double xi, int derivative = 0);

}  // namespace rkdg
