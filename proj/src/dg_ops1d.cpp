#include "rkdg/dg_ops1d.hpp"

#include <cmath>
#include <sstream>

#include "detail/assembly.hpp"
#include "rkdg/error.hpp"
#include "rkdg/legendre.hpp"
#include "rkdg/quadrature.hpp"

namespace rkdg {

namespace detail {

void add_volume(const Mesh1D& mesh, int k, int trial_d, int test_d, double c, Triplets& t, int ro, int co) {
  const auto rule = gauss_legendre(k + 2);
  const int b = k + 1;
  for (int j = 0; j < mesh.cells(); ++j) {
    const double hj = mesh.width(j);
    for (int q = 0; q < rule.size(); ++q) {
      const auto trial = cell_basis(k, hj, rule.points[q], trial_d);
      const auto test = cell_basis(k, hj, rule.points[q], test_d);
      const double w = c * 0.5 * hj * rule.weights[q];
      for (int m = 0; m <= k; ++m) {
        for (int n = 0; n <= k; ++n) t.emplace_back(ro + j * b + m, co + j * b + n, w * test[m] * trial[n]);
      }
    }
  }
}

void add_interface(const Mesh1D& mesh, int k, int trial_d, double wl, double wr, int test_d, double c, Triplets& t, int ro, int co) {
  const int b = k + 1;
  for (int s = 0; s < mesh.cells(); ++s) {
    const int jl = s;
    const int jr = mesh.cell(s + 1);
    const auto trial_l = cell_basis(k, mesh.width(jl), 1.0, trial_d);
    const auto trial_r = cell_basis(k, mesh.width(jr), -1.0, trial_d);
    const auto test_l = cell_basis(k, mesh.width(jl), 1.0, test_d);
    const auto test_r = cell_basis(k, mesh.width(jr), -1.0, test_d);
    for (int m = 0; m <= k; ++m) {
      for (int n = 0; n <= k; ++n) {
        // [v] = v^+ - v^-: test on the right cell enters with +, left with -.
        t.emplace_back(ro + jr * b + m, co + jl * b + n, c * wl * trial_l[n] * test_r[m]);
        t.emplace_back(ro + jr * b + m, co + jr * b + n, c * wr * trial_r[n] * test_r[m]);
        t.emplace_back(ro + jl * b + m, co + jl * b + n, -c * wl * trial_l[n] * test_l[m]);
        t.emplace_back(ro + jl * b + m, co + jr * b + n, -c * wr * trial_r[n] * test_l[m]);
      }
    }
  }
}

}  // namespace detail

namespace {

using detail::add_interface;
using detail::add_volume;
using detail::Triplets;

SparseMatrix build(const Mesh1D& mesh, int k, const Triplets& t) {
  const Eigen::Index n = static_cast<Eigen::Index>(mesh.cells()) * (k + 1);
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.prune(0.0);
  return m;
}

OperatorInfo base_info(const Mesh1D& mesh, int k, std::string scheme) {
  OperatorInfo info;
  info.scheme = std::move(scheme);
  info.block = k + 1;
  info.cells = mesh.cells();
  return info;
}

}  // namespace

LinearOperator assemble_d_theta(const Mesh1D& mesh, int k, double theta) {
  if (k < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  Triplets t;
  add_volume(mesh, k, 0, 1, -1.0, t);
  add_interface(mesh, k, 0, theta, 1.0 - theta, 0, -1.0, t);
  OperatorInfo info = base_info(mesh, k, "D_theta");
  info.thetas = {theta};
  info.order = 1;
  return LinearOperator(build(mesh, k, t), info);
}

LinearOperator assemble_k_transpose(const Mesh1D& mesh, int k, const std::vector<double>& thetas) {
  const int g = static_cast<int>(thetas.size());
  OperatorInfo info = base_info(mesh, k, "K^T");
  info.order = g;
  info.thetas = thetas;
  if (g == 0) {
    SparseMatrix id(static_cast<Eigen::Index>(mesh.cells()) * (k + 1), static_cast<Eigen::Index>(mesh.cells()) * (k + 1));
    id.setIdentity();
    return LinearOperator(id, info);
  }
  std::vector<LinearOperator> factors;
  for (int i = g - 1; i >= 0; --i) factors.push_back(assemble_d_theta(mesh, k, 1.0 - thetas[i]));
  LinearOperator kt = compose(factors, info);
  return g % 2 == 0 ? kt : kt.scaled(-1.0);
}

LinearOperator assemble_high_order_lh(const Mesh1D& mesh, int k, const LdgParams& p) {
  if (p.q < 1) throw InvalidArgument("derivative order q must be >= 1");
  const int g = p.q / 2;
  if (static_cast<int>(p.thetas.size()) != g) {
    std::ostringstream os;
    os << "q = " << p.q << " needs " << g << " flux parameters theta_1..theta_gamma, got " << p.thetas.size();
    throw InvalidArgument(os.str());
  }
  const double sign = g % 2 == 0 ? 1.0 : -1.0;
  if (p.q % 2 == 0 && !(p.beta * sign < 0.0)) {
    throw InvalidArgument("unstable LDG parameters: even q requires beta (-1)^gamma < 0");
  }
  if (p.q % 2 == 1 && !(p.beta * sign * (p.theta0 - 0.5) <= 0.0)) {
    throw InvalidArgument("unstable LDG parameters: odd q requires beta (-1)^gamma (theta_0 - 1/2) <= 0");
  }
  std::vector<LinearOperator> factors;
  for (int i = g - 1; i >= 0; --i) factors.push_back(assemble_d_theta(mesh, k, 1.0 - p.thetas[i]));
  if (p.q % 2 == 1) factors.push_back(assemble_d_theta(mesh, k, p.theta0));
  for (int i = 0; i < g; ++i) factors.push_back(assemble_d_theta(mesh, k, p.thetas[i]));

  OperatorInfo info = base_info(mesh, k, "ldg");
  info.order = p.q;
  info.beta = p.beta;
  info.thetas.push_back(p.theta0);
  info.thetas.insert(info.thetas.end(), p.thetas.begin(), p.thetas.end());
  return compose(factors, info).scaled(p.beta);
}

LinearOperator assemble_ultraweak3(const Mesh1D& mesh, int k, double beta) {
  if (k < 1) throw InvalidArgument("ultra-weak third-order operator needs k >= 1");
  if (k < 3) {
    warn("ultra-weak third-order operator with k < 3: optimal convergence is not guaranteed");
  }
  Triplets t;
  add_volume(mesh, k, 0, 3, -beta, t);
  add_interface(mesh, k, 0, 0.0, 1.0, 2, -beta, t);
  add_interface(mesh, k, 1, 0.0, 1.0, 1, beta, t);
  add_interface(mesh, k, 2, 1.0, 0.0, 0, -beta, t);
  OperatorInfo info = base_info(mesh, k, "ultraweak3");
  info.order = 3;
  info.beta = beta;
  return LinearOperator(build(mesh, k, t), info);
}

double quadratic_form_defect(const LinearOperator& d_theta, const DGFunction& v) {
  if (d_theta.info().scheme != "D_theta" || d_theta.info().thetas.size() != 1) {
    throw InvalidArgument("quadratic_form_defect expects an operator from assemble_d_theta");
  }
  if (d_theta.dim() != v.size()) throw InvalidArgument("quadratic_form_defect: dimension mismatch");
  const double theta = d_theta.info().thetas[0];
  const double form = v.coefficients().dot(d_theta.apply(v.coefficients()));
  double jumps = 0.0;
  for (int s = 0; s < v.mesh().cells(); ++s) {
    const double jv = jump(v, s);
    jumps += jv * jv;
  }
  return form - (theta - 0.5) * jumps;
}

}  // namespace rkdg
