#pragma once

#include <Eigen/Dense>
#include <functional>

#include "rkdg/mesh.hpp"

namespace rkdg {

using Vector = Eigen::VectorXd;
using ScalarFunction = std::function<double(double)>;

enum class Side { Left, Right, Interior };

/// Piecewise polynomial of degree k on a periodic mesh, stored as modal
/// coefficients c[j*(k+1) + m] in the orthonormal Legendre basis.
class DGFunction {
 public:
  DGFunction(Mesh1D mesh, int degree);
  DGFunction(Mesh1D mesh, int degree, Vector coefficients);

  const Mesh1D& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int block() const { return degree_ + 1; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  const Vector& coefficients() const { return coeffs_; }
  Vector& coefficients() { return coeffs_; }
  double coeff(int cell, int mode) const { return coeffs_[cell * block() + mode]; }
  double& coeff(int cell, int mode) { return coeffs_[cell * block() + mode]; }

  /// Value of the polynomial of `cell` at reference point xi (derivative
  /// order d w.r.t. x).
  double cell_value(int cell, double xi, int derivative = 0) const;

  /// Adds the constant c to the function.
  void add_constant(double c);
  /// <u, 1> over the whole domain.
  double integral() const;

 private:
  Mesh1D mesh_;
  int degree_;
  Vector coeffs_;
};

/// Pi_0 f: cell-wise L2 projection with an n-point Gauss rule
/// (quad_order <= 0 selects k+5).
DGFunction l2_project(const ScalarFunction& f, const Mesh1D& mesh, int k, int quad_order = 0);

/// Point evaluation. At an interface, Side::Left gives u^- and Side::Right
/// gives u^+; Side::Interior resolves to the cell on the right. x wraps
/// periodically.
double evaluate(const DGFunction& u, double x, Side side = Side::Interior);
/// d-th derivative, same side conventions.
double evaluate_derivative(const DGFunction& u, double x, int derivative, Side side = Side::Interior);

/// Trace u^- / u^+ at x_{i+1/2}, i = 0..N-1 (periodic: i = N-1 is the
/// right end of the domain, identified with the left end).
double trace_left(const DGFunction& u, int interface, int derivative = 0);
double trace_right(const DGFunction& u, int interface, int derivative = 0);
/// [u] = u^+ - u^- and {u} = (u^+ + u^-)/2 at x_{i+1/2}.
double jump(const DGFunction& u, int interface, int derivative = 0);
double average(const DGFunction& u, int interface, int derivative = 0);

/// sqrt(sum_j int_{I_j} (u - f)^2) with an n-point Gauss rule per cell
/// (quad_order <= 0 selects k+5).
double l2_error(const DGFunction& u, const ScalarFunction& exact, int quad_order = 0);
/// ||u|| computed by quadrature (equals the coefficient norm by Parseval).
double l2_norm(const DGFunction& u, int quad_order = 0);

/// Integral of f over the mesh with an n-point Gauss rule per cell.
double integrate(const ScalarFunction& f, const Mesh1D& mesh, int quad_order);

}  // namespace rkdg
