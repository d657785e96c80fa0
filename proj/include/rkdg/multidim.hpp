#pragma once

#include <functional>

#include "rkdg/dg_function.hpp"
#include "rkdg/linear_operator.hpp"
#include "rkdg/mesh.hpp"

namespace rkdg {

using Function2D = std::function<double(double, double)>;

/// Q^k function on a Cartesian periodic mesh in the tensor modal basis
/// phi_{m1}(x1) phi_{m2}(x2). Coefficients are stored at index
/// i1 * n2 + i2 with i_d = j_d (k+1) + m_d and n2 = N2 (k+1), so 1D
/// operators act through Kronecker products.
class DGFunction2D {
 public:
  DGFunction2D(Mesh2D mesh, int degree);
  DGFunction2D(Mesh2D mesh, int degree, Vector coefficients);

  const Mesh2D& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  const Vector& coefficients() const { return coeffs_; }
  Vector& coefficients() { return coeffs_; }
  Eigen::Index index(int j1, int j2, int m1, int m2) const;
  double coeff(int j1, int j2, int m1, int m2) const { return coeffs_[index(j1, j2, m1, m2)]; }
  /// Value in cell (j1, j2) at reference point (xi1, xi2).
  double cell_value(int j1, int j2, double xi1, double xi2) const;

 private:
  Mesh2D mesh_;
  int degree_;
  Vector coeffs_;
};

/// Cell-wise L2 projection onto Q^k (quad_order <= 0 selects k+5 points
/// per direction).
DGFunction2D l2_project_2d(const Function2D& f, const Mesh2D& mesh, int k, int quad_order = 0);

/// sqrt(sum over cells of int (u - f)^2) by tensor Gauss quadrature.
double l2_error_2d(const DGFunction2D& u, const Function2D& exact, int quad_order = 0);

/// Q^k DG operator for u_t + u_{x1} + u_{x2} = 0 with upwind-biased fluxes
/// theta1, theta2 > 1/2, assembled by direct 2D volume and edge
/// quadrature. Equals -(D_{theta1} (x) I + I (x) D_{theta2}).
LinearOperator assemble_qk_2d(const Mesh2D& mesh, int k, double theta1, double theta2);

/// Kronecker-product form -(D_{theta1} (x) I + I (x) D_{theta2}), used as
/// an independent check of assemble_qk_2d.
LinearOperator assemble_qk_2d_kronecker(const Mesh2D& mesh, int k, double theta1, double theta2);

/// Pi_{theta1,theta2} w built as the tensor product Pi_{theta1} (x) Pi_{theta2}
/// and checked against its defining volume, edge and corner conditions
/// (NumericalFailure if the residual exceeds 1e-10 relative).
DGFunction2D pi_tensor_2d(const Function2D& w, const Mesh2D& mesh, int k, double theta1, double theta2,
                          int quad_order = 0);

/// Largest violation of the defining conditions of Pi_{theta1,theta2} w
/// by u, computed from traces of u: volume moments against Q^{k-1}, edge
/// moments of the one-sided fluxes against P^{k-1}, and the bilinear
/// corner flux. Relative to max(1, max |w|-scale data).
double pi_tensor_2d_residual(const DGFunction2D& u, const Function2D& w, double theta1, double theta2,
                             int quad_order = 0);

}  // namespace rkdg
