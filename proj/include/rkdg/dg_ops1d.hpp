#pragma once

#include <vector>

#include "rkdg/dg_function.hpp"
#include "rkdg/linear_operator.hpp"
#include "rkdg/mesh.hpp"

namespace rkdg {

/// D_{h,theta}: the DG first-derivative operator
///   <D w, v> = -<w, v_x> - sum_j what_{j+1/2} [v]_{j+1/2},
///   what = theta w^- + (1 - theta) w^+.
/// Any real theta is accepted.
LinearOperator assemble_d_theta(const Mesh1D& mesh, int k, double theta);

/// Parameters of the LDG family for d_t u = beta d_x^q u.
struct LdgParams {
  int q = 1;
  double beta = -1.0;
  double theta0 = 1.0;             ///< used only for odd q
  std::vector<double> thetas;      ///< theta_1..theta_gamma, gamma = q/2
};

/// L_h = beta D_{1-theta_g}...D_{1-theta_1} [D_{theta_0}] D_{theta_1}...D_{theta_g},
/// i.e. beta (-1)^g K^T [D_{theta_0}] K with K = D_{theta_1}...D_{theta_g}.
/// Rejects parameter sets for which <L_h v, v> <= 0 fails:
/// beta (-1)^g < 0 for even q, beta (-1)^g (theta_0 - 1/2) <= 0 for odd q.
LinearOperator assemble_high_order_lh(const Mesh1D& mesh, int k, const LdgParams& params);

/// K^T assembled from its closed form (-1)^g D_{1-theta_g}...D_{1-theta_1}.
LinearOperator assemble_k_transpose(const Mesh1D& mesh, int k, const std::vector<double>& thetas);

/// Ultra-weak DG operator for d_t u = beta d_xxx u with fluxes
/// what = w^+, (w_x)~ = w_x^+, (w_xx)v = w_xx^-:
///   <L w, v> = beta [ -<w, v_xxx> - sum (what [v_xx] - (w_x)~ [v_x] + (w_xx)v [v]) ].
/// With these fluxes <L v, v> = (beta/2) sum [v_x]^2, so beta defaults to -1
/// (u_t + u_xxx = 0). Warns when k < 3.
LinearOperator assemble_ultraweak3(const Mesh1D& mesh, int k, double beta = -1.0);

/// <D v, v> - (theta - 1/2) sum_j [v]^2 for an operator from assemble_d_theta.
double quadratic_form_defect(const LinearOperator& d_theta, const DGFunction& v);

}  // namespace rkdg
