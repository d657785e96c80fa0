#include "rkdg/systems.hpp"

#include <array>
#include <cmath>

#include "detail/assembly.hpp"
#include "rkdg/error.hpp"
#include "rkdg/legendre.hpp"
#include "rkdg/quadrature.hpp"

namespace rkdg {

namespace {

using detail::Triplets;
using Mat2 = std::array<std::array<double, 2>, 2>;

OperatorInfo system_info(const Mesh1D& mesh, int k, std::string scheme) {
  OperatorInfo info;
  info.scheme = std::move(scheme);
  info.order = 1;
  info.block = k + 1;
  info.cells = mesh.cells();
  info.components = 2;
  return info;
}

SparseMatrix build2(const Mesh1D& mesh, int k, const Triplets& t) {
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(mesh.cells()) * (k + 1);
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.prune(0.0);
  return m;
}

// <L(w,chi),(v,psi)> = <M(w,chi), d_x(v,psi)> + sum (M g)([v],[psi]), with
// g = G^- (w,chi)^- + G^+ (w,chi)^+.
SparseMatrix assemble_flux_system(const Mesh1D& mesh, int k, const Mat2& m, const WaveFlux& f) {
  const Mat2 gm = {{{0.5 - f.alpha, -f.beta1}, {-f.beta2, 0.5 + f.alpha}}};
  const Mat2 gp = {{{0.5 + f.alpha, f.beta1}, {f.beta2, 0.5 - f.alpha}}};
  const int n = mesh.cells() * (k + 1);
  Triplets t;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (m[r][c] != 0.0) detail::add_volume(mesh, k, 0, 1, m[r][c], t, r * n, c * n);
      double wl = 0.0;
      double wr = 0.0;
      for (int a = 0; a < 2; ++a) {
        wl += m[r][a] * gm[a][c];
        wr += m[r][a] * gp[a][c];
      }
      if (wl != 0.0 || wr != 0.0) detail::add_interface(mesh, k, 0, wl, wr, 0, 1.0, t, r * n, c * n);
    }
  }
  return build2(mesh, k, t);
}

}  // namespace

SystemDGFunction::SystemDGFunction(DGFunction u, DGFunction phi) : u_(std::move(u)), phi_(std::move(phi)) {
  if (u_.degree() != phi_.degree()) throw InvalidArgument("system components must share the polynomial degree");
}

SystemDGFunction SystemDGFunction::from_stacked(const Mesh1D& u_mesh, const Mesh1D& phi_mesh, int k,
                                                const Vector& stacked) {
  const int nu = u_mesh.cells() * (k + 1);
  const int np = phi_mesh.cells() * (k + 1);
  if (stacked.size() != nu + np) throw InvalidArgument("SystemDGFunction: stacked vector has the wrong size");
  return SystemDGFunction(DGFunction(u_mesh, k, stacked.head(nu)), DGFunction(phi_mesh, k, stacked.tail(np)));
}

Vector SystemDGFunction::stacked() const {
  Vector s(u_.size() + phi_.size());
  s << u_.coefficients(), phi_.coefficients();
  return s;
}

double SystemDGFunction::norm() const {
  return std::sqrt(u_.coefficients().squaredNorm() + phi_.coefficients().squaredNorm());
}

SystemDGFunction project_system(const ScalarFunction& u, const ScalarFunction& phi, const Mesh1D& u_mesh,
                                const Mesh1D& phi_mesh, int k, int quad_order) {
  return SystemDGFunction(l2_project(u, u_mesh, k, quad_order), l2_project(phi, phi_mesh, k, quad_order));
}

WaveFlux perturbed_wave_flux(double h, double delta, double c) {
  if (!(h > 0.0)) throw InvalidArgument("perturbed_wave_flux: h must be positive");
  const double a2 = 0.25 + c * std::pow(h, delta);
  if (a2 < 0.0) throw InvalidArgument("perturbed_wave_flux: alpha^2 would be negative");
  return WaveFlux{std::sqrt(a2), 0.0, 0.0};
}

LinearOperator assemble_wave_alphabeta(const Mesh1D& mesh, int k, const WaveFlux& flux) {
  if (k < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  if (flux.beta1 > 0.0 || flux.beta2 > 0.0) {
    throw InvalidArgument("wave alpha-beta flux requires beta1 <= 0 and beta2 <= 0");
  }
  const Mat2 a = {{{0.0, 1.0}, {1.0, 0.0}}};
  OperatorInfo info = system_info(mesh, k, "wave_ab");
  info.thetas = {flux.alpha, flux.beta1, flux.beta2};
  return LinearOperator(assemble_flux_system(mesh, k, a, flux), info);
}

LinearOperator assemble_energy_conserving(const Mesh1D& mesh, int k) {
  if (k < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  const Mat2 b = {{{1.0, 0.0}, {0.0, -1.0}}};
  const WaveFlux flux{0.0, 0.5, 0.5};
  OperatorInfo info = system_info(mesh, k, "energy_conserving");
  info.thetas = {flux.alpha, flux.beta1, flux.beta2};
  return LinearOperator(assemble_flux_system(mesh, k, b, flux), info);
}

LinearOperator assemble_central_dg(const Mesh1D& mesh, int k, double tau_max) {
  if (!(tau_max > 0.0)) throw InvalidArgument("central DG requires tau_max > 0");
  if (k < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  const Mesh1D dual = mesh.dual();
  const int N = mesh.cells();
  const int b = k + 1;
  const int n = N * b;
  const double L = mesh.length();
  const double r = 1.0 / tau_max;
  const auto rule = gauss_legendre(k + 2);
  Triplets t;

  // Same-mesh relaxation: the basis is orthonormal, so -(1/tau_max) I per copy.
  for (int i = 0; i < 2 * n; ++i) t.emplace_back(i, i, -r);

  // Cross-mesh integrals over the two halves of each primal cell j. The
  // left half lies in dual cell j-1, the right half in dual cell j.
  for (int j = 0; j < N; ++j) {
    const double hj = mesh.width(j);
    for (int half = 0; half < 2; ++half) {
      const int d = half == 0 ? dual.cell(j - 1) : j;
      const double shift = (half == 0 && j == 0) ? L : 0.0;
      const double x0 = half == 0 ? mesh.boundary(j) : mesh.center(j);
      const double x1 = half == 0 ? mesh.center(j) : mesh.boundary(j + 1);
      const double hd = dual.width(d);
      for (int q = 0; q < rule.size(); ++q) {
        const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * rule.points[q];
        const double w = 0.5 * (x1 - x0) * rule.weights[q];
        const double xp = mesh.to_reference(j, x);
        const double xd = dual.to_reference(d, x + shift);
        const auto p0 = cell_basis(k, hj, xp, 0);
        const auto p1 = cell_basis(k, hj, xp, 1);
        const auto d0 = cell_basis(k, hd, xd, 0);
        const auto d1 = cell_basis(k, hd, xd, 1);
        for (int m = 0; m <= k; ++m) {
          for (int l = 0; l <= k; ++l) {
            // u-equation, test v = primal phi_m, trial chi = dual phi_l:
            // (1/tau) chi v + chi v_x.
            t.emplace_back(j * b + m, n + d * b + l, w * d0[l] * (r * p0[m] + p1[m]));
            // phi-equation, test psi = dual phi_m, trial w = primal phi_l:
            // (1/tau) w psi + w psi_x.
            t.emplace_back(n + d * b + m, j * b + l, w * p0[l] * (r * d0[m] + d1[m]));
          }
        }
      }
    }
  }

  // u-equation traces: chi(x_{j+1/2}) [v]. The primal interface x_{j+1/2}
  // is interior to dual cell j.
  for (int s = 0; s < N; ++s) {
    const int jl = s;
    const int jr = mesh.cell(s + 1);
    const auto chi = cell_basis(k, dual.width(s), dual.to_reference(s, mesh.boundary(s + 1)), 0);
    const auto vl = cell_basis(k, mesh.width(jl), 1.0, 0);
    const auto vr = cell_basis(k, mesh.width(jr), -1.0, 0);
    for (int m = 0; m <= k; ++m) {
      for (int l = 0; l <= k; ++l) {
        t.emplace_back(jr * b + m, n + s * b + l, chi[l] * vr[m]);
        t.emplace_back(jl * b + m, n + s * b + l, -chi[l] * vl[m]);
      }
    }
  }

  // phi-equation traces: w(x_j) [psi]. The dual interface x_j (left end of
  // dual cell j) is the center of primal cell j.
  for (int j = 0; j < N; ++j) {
    const int dl = dual.cell(j - 1);
    const int dr = j;
    const auto w = cell_basis(k, mesh.width(j), 0.0, 0);
    const auto pl = cell_basis(k, dual.width(dl), 1.0, 0);
    const auto pr = cell_basis(k, dual.width(dr), -1.0, 0);
    for (int m = 0; m <= k; ++m) {
      for (int l = 0; l <= k; ++l) {
        t.emplace_back(n + dr * b + m, j * b + l, w[l] * pr[m]);
        t.emplace_back(n + dl * b + m, j * b + l, -w[l] * pl[m]);
      }
    }
  }

  OperatorInfo info = system_info(mesh, k, "central_dg");
  info.thetas = {tau_max};
  return LinearOperator(build2(mesh, k, t), info);
}

double cross_mesh_difference(const DGFunction& u, const DGFunction& phi) {
  const Mesh1D& mesh = u.mesh();
  const Mesh1D& dual = phi.mesh();
  if (dual.cells() != mesh.cells() || phi.degree() != u.degree()) {
    throw InvalidArgument("cross_mesh_difference: components are not on matching primal/dual meshes");
  }
  const int k = u.degree();
  const int N = mesh.cells();
  const double L = mesh.length();
  const auto rule = gauss_legendre(k + 2);
  double sum = 0.0;
  for (int j = 0; j < N; ++j) {
    const double hj = mesh.width(j);
    std::vector<double> moments(static_cast<std::size_t>(k) + 1, 0.0);
    for (int half = 0; half < 2; ++half) {
      const int d = half == 0 ? dual.cell(j - 1) : j;
      const double shift = (half == 0 && j == 0) ? L : 0.0;
      const double x0 = half == 0 ? mesh.boundary(j) : mesh.center(j);
      const double x1 = half == 0 ? mesh.center(j) : mesh.boundary(j + 1);
      for (int q = 0; q < rule.size(); ++q) {
        const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * rule.points[q];
        const double w = 0.5 * (x1 - x0) * rule.weights[q];
        const double diff = phi.cell_value(d, dual.to_reference(d, x + shift)) - u.cell_value(j, mesh.to_reference(j, x));
        const auto p0 = cell_basis(k, hj, mesh.to_reference(j, x), 0);
        for (int m = 0; m <= k; ++m) moments[m] += w * diff * p0[m];
      }
    }
    for (double mo : moments) sum += mo * mo;
  }
  return std::sqrt(sum);
}

}  // namespace rkdg
