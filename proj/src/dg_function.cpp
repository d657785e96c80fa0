#include "rkdg/dg_function.hpp"

#include <cmath>

#include "rkdg/error.hpp"
#include "rkdg/legendre.hpp"
#include "rkdg/quadrature.hpp"

namespace rkdg {

DGFunction::DGFunction(Mesh1D mesh, int degree) : mesh_(std::move(mesh)), degree_(degree) {
  if (degree < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  coeffs_ = Vector::Zero(static_cast<Eigen::Index>(mesh_.cells()) * (degree + 1));
}

DGFunction::DGFunction(Mesh1D mesh, int degree, Vector coefficients)
    : mesh_(std::move(mesh)), degree_(degree), coeffs_(std::move(coefficients)) {
  if (degree < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  if (coeffs_.size() != static_cast<Eigen::Index>(mesh_.cells()) * (degree + 1)) {
    throw InvalidArgument("coefficient array does not match mesh and degree");
  }
}

double DGFunction::cell_value(int cell, double xi, int derivative) const {
  const auto phi = cell_basis(degree_, mesh_.width(cell), xi, derivative);
  double s = 0.0;
  for (int m = 0; m <= degree_; ++m) s += coeff(cell, m) * phi[m];
  return s;
}

void DGFunction::add_constant(double c) {
  for (int j = 0; j < mesh_.cells(); ++j) coeff(j, 0) += c * std::sqrt(mesh_.width(j));
}

double DGFunction::integral() const {
  double s = 0.0;
  for (int j = 0; j < mesh_.cells(); ++j) s += coeff(j, 0) * std::sqrt(mesh_.width(j));
  return s;
}

DGFunction l2_project(const ScalarFunction& f, const Mesh1D& mesh, int k, int quad_order) {
  const auto rule = gauss_legendre(quad_order > 0 ? quad_order : k + 5);
  DGFunction u(mesh, k);
  for (int j = 0; j < mesh.cells(); ++j) {
    const double hj = mesh.width(j);
    const double xc = mesh.center(j);
    for (int q = 0; q < rule.size(); ++q) {
      const double xi = rule.points[q];
      const double fx = f(xc + 0.5 * hj * xi);
      const auto phi = cell_basis(k, hj, xi);
      for (int m = 0; m <= k; ++m) u.coeff(j, m) += 0.5 * hj * rule.weights[q] * fx * phi[m];
    }
  }
  return u;
}

namespace {

// Cell and reference coordinate for a point, honoring one-sided limits.
std::pair<int, double> resolve(const Mesh1D& mesh, double x, Side side) {
  const double y = mesh.wrap(x);
  int j = mesh.locate(y);
  const double tol = 1e-13 * mesh.length();
  if (side == Side::Left && std::abs(y - mesh.boundary(j)) <= tol) {
    j = mesh.cell(j - 1);
    return {j, 1.0};
  }
  if (side == Side::Left && std::abs(y - mesh.boundary(j + 1)) <= tol) return {j, 1.0};
  if (side != Side::Left && std::abs(y - mesh.boundary(j + 1)) <= tol) {
    j = mesh.cell(j + 1);
    return {j, -1.0};
  }
  if (side != Side::Left && std::abs(y - mesh.boundary(j)) <= tol) return {j, -1.0};
  return {j, mesh.to_reference(j, y)};
}

}  // namespace

double evaluate(const DGFunction& u, double x, Side side) { return evaluate_derivative(u, x, 0, side); }

double evaluate_derivative(const DGFunction& u, double x, int derivative, Side side) {
  const auto [j, xi] = resolve(u.mesh(), x, side);
  return u.cell_value(j, xi, derivative);
}

double trace_left(const DGFunction& u, int interface, int derivative) {
  return u.cell_value(u.mesh().cell(interface), 1.0, derivative);
}

double trace_right(const DGFunction& u, int interface, int derivative) {
  return u.cell_value(u.mesh().cell(interface + 1), -1.0, derivative);
}

double jump(const DGFunction& u, int interface, int derivative) {
  return trace_right(u, interface, derivative) - trace_left(u, interface, derivative);
}

double average(const DGFunction& u, int interface, int derivative) {
  return 0.5 * (trace_right(u, interface, derivative) + trace_left(u, interface, derivative));
}

double l2_error(const DGFunction& u, const ScalarFunction& exact, int quad_order) {
  const auto rule = gauss_legendre(quad_order > 0 ? quad_order : u.degree() + 5);
  const Mesh1D& mesh = u.mesh();
  double s = 0.0;
  for (int j = 0; j < mesh.cells(); ++j) {
    const double hj = mesh.width(j);
    const double xc = mesh.center(j);
    for (int q = 0; q < rule.size(); ++q) {
      const double xi = rule.points[q];
      const double e = u.cell_value(j, xi) - (exact ? exact(xc + 0.5 * hj * xi) : 0.0);
      s += 0.5 * hj * rule.weights[q] * e * e;
    }
  }
  return std::sqrt(s);
}

double l2_norm(const DGFunction& u, int quad_order) { return l2_error(u, nullptr, quad_order); }

double integrate(const ScalarFunction& f, const Mesh1D& mesh, int quad_order) {
  const auto rule = gauss_legendre(quad_order);
  double s = 0.0;
  for (int j = 0; j < mesh.cells(); ++j) {
    const double hj = mesh.width(j);
    const double xc = mesh.center(j);
    for (int q = 0; q < rule.size(); ++q) s += 0.5 * hj * rule.weights[q] * f(xc + 0.5 * hj * rule.points[q]);
  }
  return s;
}

}  // namespace rkdg
