#pragma once

#include <Eigen/SparseLU>
#include <functional>
#include <memory>
#include <vector>

#include "rkdg/dg_function.hpp"
#include "rkdg/dg_ops1d.hpp"
#include "rkdg/linear_operator.hpp"

namespace rkdg {

/// f(x, d) = d^d f / dx^d at x, for d up to the order the caller needs.
using DerivativeFunction = std::function<double(double x, int derivative)>;

/// A DG function with zero mean, <z, 1> = 0.
class MeanZeroFunction {
 public:
  /// Validates |<z,1>| <= 1e-11 ||z|| (absolute 1e-13 for z = 0).
  explicit MeanZeroFunction(DGFunction z);
  /// Removes the mean of u.
  static MeanZeroFunction remove_mean(DGFunction u);
  static bool is_mean_zero(const DGFunction& u);

  const DGFunction& function() const { return z_; }
  operator const DGFunction&() const { return z_; }

 private:
  DGFunction z_;
};

/// Pi_theta: the projection with cell moments against P^{k-1} and flux
/// matching theta w^- + (1-theta) w^+ = w at every interface. The defining
/// system is assembled and factored once and can be reused for many w.
class PiThetaProjector {
 public:
  PiThetaProjector(Mesh1D mesh, int k, double theta);

  const Mesh1D& mesh() const { return mesh_; }
  int degree() const { return k_; }
  double theta() const { return theta_; }

  /// The defining data of w: entry (j, m<k) is <w, phi_m>_j and entry
  /// (j, k) is w(x_{j+1/2}); w is assumed continuous.
  Vector functionals(const ScalarFunction& w, int quad_order = 0) const;
  /// Coefficients from a functional vector (linear map, also used for the
  /// tensor-product projection in 2D).
  Vector solve(const Vector& functionals) const;
  DGFunction project(const ScalarFunction& w, int quad_order = 0) const;
  /// Residual of the defining conditions for u against the data of w.
  double residual(const DGFunction& u, const Vector& functionals) const;
  /// Dense matrix of the linear map functionals -> coefficients.
  Matrix solution_matrix() const;

 private:
  Mesh1D mesh_;
  int k_;
  double theta_;
  SparseMatrix conditions_;
  std::shared_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu_;
};

/// Pi_theta w for theta != 1/2; throws NumericalFailure when
/// |theta - 1/2| < 1e-8.
DGFunction pi_theta(const ScalarFunction& w, const Mesh1D& mesh, int k, double theta, int quad_order = 0);

/// D_{h,theta}^{-1} on the mean-zero subspace, via the saddle-point system
///   [A m; m^T 0] (x, s) = (z, 0),  m = coefficients of the constant 1.
class DThetaInverse {
 public:
  DThetaInverse(Mesh1D mesh, int k, double theta);

  const LinearOperator& d_theta() const { return d_; }
  double theta() const { return theta_; }
  /// x in Z_h with D x = z. Residual is checked against 1e-10 ||z||.
  MeanZeroFunction apply(const MeanZeroFunction& z) const;
  Vector apply(const Vector& z) const;

 private:
  Mesh1D mesh_;
  int k_;
  double theta_;
  LinearOperator d_;
  Vector constant1_;
  std::shared_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu_;
};

MeanZeroFunction d_theta_inverse_apply(double theta, const MeanZeroFunction& z);

/// Composed projection for d_t u = beta d_x^q u with the LDG operator of
/// assemble_high_order_lh:
///   q = 2g:   (D_{t_g}^{-1}..D_{t_1}^{-1})(D_{1-t_1}^{-1}..D_{1-t_g}^{-1}) Pi_0 d^q w + <w,1>/<1,1>
///   q = 2g+1: (D_{t_g}^{-1}..D_{t_1}^{-1}) D_{t_0}^{-1} (D_{1-t_1}^{-1}..D_{1-t_g}^{-1}) Pi_0 d^q w + <w,1>/<1,1>
/// Satisfies L_h Pi w = Pi_0 L w.
DGFunction composed_projection(const DerivativeFunction& w, int q, double theta0, const std::vector<double>& thetas,
                               const Mesh1D& mesh, int k, int quad_order = 0);

enum class ProjectionKind { L2, PiTheta, Composed };

/// ||L_h Pi w - Pi_0 L w|| / max(1, ||Pi_0 L w||) given Pi w and Pi_0 L w.
double commuting_defect(const LinearOperator& lh, const DGFunction& projected, const DGFunction& projected_lw);

/// Convenience form building Pi w with the requested projection on `mesh`;
/// L w is beta d_x^q w with (q, beta, thetas) read from an LDG operator (or
/// theta from a D_theta operator, in which case L = d_x).
double commuting_defect(ProjectionKind kind, const DerivativeFunction& w, const LinearOperator& lh,
                        const Mesh1D& mesh, int quad_order = 0);

}  // namespace rkdg
