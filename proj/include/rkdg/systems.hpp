#pragma once

#include "rkdg/dg_function.hpp"
#include "rkdg/linear_operator.hpp"
#include "rkdg/mesh.hpp"

namespace rkdg {

/// Two-component DG function (u, phi). For central DG the phi component
/// lives on the dual mesh. Coefficients stack as [u; phi].
class SystemDGFunction {
 public:
  SystemDGFunction(DGFunction u, DGFunction phi);
  /// Splits a stacked vector; the second component uses `phi_mesh`.
  static SystemDGFunction from_stacked(const Mesh1D& u_mesh, const Mesh1D& phi_mesh, int k, const Vector& stacked);

  const DGFunction& u() const { return u_; }
  const DGFunction& phi() const { return phi_; }
  int degree() const { return u_.degree(); }
  Vector stacked() const;
  /// sqrt(||u||^2 + ||phi||^2)
  double norm() const;

 private:
  DGFunction u_;
  DGFunction phi_;
};

/// Component-wise Pi_0 projection; phi is projected on `phi_mesh`.
SystemDGFunction project_system(const ScalarFunction& u, const ScalarFunction& phi, const Mesh1D& u_mesh,
                                const Mesh1D& phi_mesh, int k, int quad_order = 0);

/// Flux parameters of the wave-system family
///   (w)^ = {w} + alpha [w] + beta1 [chi],  (chi)^ = {chi} - alpha [chi] + beta2 [w].
struct WaveFlux {
  double alpha = 0.5;
  double beta1 = 0.0;
  double beta2 = 0.0;
  /// alpha^2 + beta1 beta2 - 1/4 (zero for the optimal "alpha-beta" fluxes)
  double defect() const { return alpha * alpha + beta1 * beta2 - 0.25; }
};

/// Perturbed flux with alpha^2 = 1/4 + c h^delta and beta1 = beta2 = 0.
WaveFlux perturbed_wave_flux(double h, double delta, double c = 1.0);

/// DG operator for u_t + phi_x = 0, phi_t + u_x = 0 (L = -A d_x with
/// A = [[0,1],[1,0]]). Requires beta1, beta2 <= 0, which gives
/// <L v, v> = sum (beta2 [v_u]^2 + beta1 [v_phi]^2) <= 0.
LinearOperator assemble_wave_alphabeta(const Mesh1D& mesh, int k, const WaveFlux& flux);

/// Augmented advection system u_t + u_x = 0, phi_t - phi_x = 0 with the
/// flux alpha = 0, beta1 = beta2 = 1/2 coupling the components. The
/// operator is exactly skew.
LinearOperator assemble_energy_conserving(const Mesh1D& mesh, int k);

/// Central DG for u_t + u_x = 0 on overlapping meshes: u on `mesh`, phi on
/// mesh.dual(). Each copy is advected with traces taken from the other
/// copy (single-valued there) plus the relaxation source (phi - u)/tau_max
/// and (u - phi)/tau_max. <L v, v> = -||v_u - v_phi||^2 / tau_max.
LinearOperator assemble_central_dg(const Mesh1D& mesh, int k, double tau_max);

/// ||Pi_0^{primal} phi - u|| for u on the primal mesh and phi on the dual
/// mesh: the size of the relaxation source.
double cross_mesh_difference(const DGFunction& u, const DGFunction& phi);

}  // namespace rkdg
