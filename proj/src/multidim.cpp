#include "rkdg/multidim.hpp"

#include <algorithm>
#include <cmath>

#include "rkdg/dg_ops1d.hpp"
#include "rkdg/error.hpp"
#include "rkdg/legendre.hpp"
#include "rkdg/projections.hpp"
#include "rkdg/quadrature.hpp"

namespace rkdg {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

Eigen::Index dim_1d(const Mesh1D& m, int k) { return static_cast<Eigen::Index>(m.cells()) * (k + 1); }

SparseMatrix identity(Eigen::Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  Triplets t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Eigen::Index r = 0; r < a.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator ia(a, r); ia; ++ia) {
      for (Eigen::Index s = 0; s < b.outerSize(); ++s) {
        for (SparseMatrix::InnerIterator ib(b, s); ib; ++ib) {
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(), ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

OperatorInfo info_2d(const Mesh2D& mesh, int k, std::string scheme, double t1, double t2) {
  OperatorInfo info;
  info.scheme = std::move(scheme);
  info.order = 1;
  info.beta = -1.0;
  info.thetas = {t1, t2};
  info.block = (k + 1) * (k + 1);
  info.cells = mesh.x.cells() * mesh.y.cells();
  return info;
}

void check_thetas(double t1, double t2) {
  if (!(t1 > 0.5) || !(t2 > 0.5)) throw InvalidArgument("Q^k DG operator requires theta1, theta2 > 1/2");
}

}  // namespace

DGFunction2D::DGFunction2D(Mesh2D mesh, int degree) : mesh_(std::move(mesh)), degree_(degree) {
  if (degree_ < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  coeffs_ = Vector::Zero(dim_1d(mesh_.x, degree_) * dim_1d(mesh_.y, degree_));
}

DGFunction2D::DGFunction2D(Mesh2D mesh, int degree, Vector coefficients) : DGFunction2D(std::move(mesh), degree) {
  if (coefficients.size() != coeffs_.size()) throw InvalidArgument("DGFunction2D: coefficient vector has the wrong size");
  coeffs_ = std::move(coefficients);
}

Eigen::Index DGFunction2D::index(int j1, int j2, int m1, int m2) const {
  const int b = degree_ + 1;
  const Eigen::Index i1 = static_cast<Eigen::Index>(j1) * b + m1;
  const Eigen::Index i2 = static_cast<Eigen::Index>(j2) * b + m2;
  return i1 * dim_1d(mesh_.y, degree_) + i2;
}

double DGFunction2D::cell_value(int j1, int j2, double xi1, double xi2) const {
  const auto p1 = cell_basis(degree_, mesh_.x.width(j1), xi1);
  const auto p2 = cell_basis(degree_, mesh_.y.width(j2), xi2);
  double s = 0.0;
  for (int m1 = 0; m1 <= degree_; ++m1) {
    for (int m2 = 0; m2 <= degree_; ++m2) s += coeff(j1, j2, m1, m2) * p1[m1] * p2[m2];
  }
  return s;
}

DGFunction2D l2_project_2d(const Function2D& f, const Mesh2D& mesh, int k, int quad_order) {
  const auto rule = gauss_legendre(quad_order > 0 ? quad_order : k + 5);
  DGFunction2D u(mesh, k);
  for (int j1 = 0; j1 < mesh.x.cells(); ++j1) {
    const double h1 = mesh.x.width(j1);
    for (int j2 = 0; j2 < mesh.y.cells(); ++j2) {
      const double h2 = mesh.y.width(j2);
      for (int q1 = 0; q1 < rule.size(); ++q1) {
        const auto p1 = cell_basis(k, h1, rule.points[q1]);
        const double x = mesh.x.center(j1) + 0.5 * h1 * rule.points[q1];
        for (int q2 = 0; q2 < rule.size(); ++q2) {
          const auto p2 = cell_basis(k, h2, rule.points[q2]);
          const double y = mesh.y.center(j2) + 0.5 * h2 * rule.points[q2];
          const double w = 0.25 * h1 * h2 * rule.weights[q1] * rule.weights[q2] * f(x, y);
          for (int m1 = 0; m1 <= k; ++m1) {
            for (int m2 = 0; m2 <= k; ++m2) u.coefficients()[u.index(j1, j2, m1, m2)] += w * p1[m1] * p2[m2];
          }
        }
      }
    }
  }
  return u;
}

double l2_error_2d(const DGFunction2D& u, const Function2D& exact, int quad_order) {
  const Mesh2D& mesh = u.mesh();
  const auto rule = gauss_legendre(quad_order > 0 ? quad_order : u.degree() + 5);
  double sum = 0.0;
  for (int j1 = 0; j1 < mesh.x.cells(); ++j1) {
    const double h1 = mesh.x.width(j1);
    for (int j2 = 0; j2 < mesh.y.cells(); ++j2) {
      const double h2 = mesh.y.width(j2);
      for (int q1 = 0; q1 < rule.size(); ++q1) {
        const double x = mesh.x.center(j1) + 0.5 * h1 * rule.points[q1];
        for (int q2 = 0; q2 < rule.size(); ++q2) {
          const double y = mesh.y.center(j2) + 0.5 * h2 * rule.points[q2];
          const double e = u.cell_value(j1, j2, rule.points[q1], rule.points[q2]) - exact(x, y);
          sum += 0.25 * h1 * h2 * rule.weights[q1] * rule.weights[q2] * e * e;
        }
      }
    }
  }
  return std::sqrt(sum);
}

LinearOperator assemble_qk_2d(const Mesh2D& mesh, int k, double theta1, double theta2) {
  check_thetas(theta1, theta2);
  if (k < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  const int N1 = mesh.x.cells();
  const int N2 = mesh.y.cells();
  const int b = k + 1;
  const DGFunction2D layout(mesh, k);
  const auto rule = gauss_legendre(k + 2);
  Triplets t;

  // Volume: <w, d1 v + d2 v> over each cell with a tensor Gauss rule.
  for (int j1 = 0; j1 < N1; ++j1) {
    const double h1 = mesh.x.width(j1);
    for (int j2 = 0; j2 < N2; ++j2) {
      const double h2 = mesh.y.width(j2);
      for (int q1 = 0; q1 < rule.size(); ++q1) {
        const auto a0 = cell_basis(k, h1, rule.points[q1], 0);
        const auto a1 = cell_basis(k, h1, rule.points[q1], 1);
        for (int q2 = 0; q2 < rule.size(); ++q2) {
          const auto c0 = cell_basis(k, h2, rule.points[q2], 0);
          const auto c1 = cell_basis(k, h2, rule.points[q2], 1);
          const double w = 0.25 * h1 * h2 * rule.weights[q1] * rule.weights[q2];
          for (int m1 = 0; m1 < b; ++m1) {
            for (int m2 = 0; m2 < b; ++m2) {
              const double grad = a1[m1] * c0[m2] + a0[m1] * c1[m2];
              for (int n1 = 0; n1 < b; ++n1) {
                for (int n2 = 0; n2 < b; ++n2) {
                  t.emplace_back(layout.index(j1, j2, m1, m2), layout.index(j1, j2, n1, n2),
                                 w * grad * a0[n1] * c0[n2]);
                }
              }
            }
          }
        }
      }
    }
  }

  // Vertical edges x1 = x_{j1+1/2}: + int what^{theta1} [v]_1 dx2.
  for (int s = 0; s < N1; ++s) {
    const int jl = s;
    const int jr = mesh.x.cell(s + 1);
    const auto bl = cell_basis(k, mesh.x.width(jl), 1.0);
    const auto br = cell_basis(k, mesh.x.width(jr), -1.0);
    for (int j2 = 0; j2 < N2; ++j2) {
      const double h2 = mesh.y.width(j2);
      for (int q = 0; q < rule.size(); ++q) {
        const auto c0 = cell_basis(k, h2, rule.points[q]);
        const double w = 0.5 * h2 * rule.weights[q];
        for (int m1 = 0; m1 < b; ++m1) {
          for (int m2 = 0; m2 < b; ++m2) {
            for (int n1 = 0; n1 < b; ++n1) {
              for (int n2 = 0; n2 < b; ++n2) {
                const double y = w * c0[m2] * c0[n2];
                const double fl = theta1 * bl[n1] * y;
                const double fr = (1.0 - theta1) * br[n1] * y;
                t.emplace_back(layout.index(jr, j2, m1, m2), layout.index(jl, j2, n1, n2), fl * br[m1]);
                t.emplace_back(layout.index(jr, j2, m1, m2), layout.index(jr, j2, n1, n2), fr * br[m1]);
                t.emplace_back(layout.index(jl, j2, m1, m2), layout.index(jl, j2, n1, n2), -fl * bl[m1]);
                t.emplace_back(layout.index(jl, j2, m1, m2), layout.index(jr, j2, n1, n2), -fr * bl[m1]);
              }
            }
          }
        }
      }
    }
  }

  // Horizontal edges x2 = x_{j2+1/2}: + int what^{theta2} [v]_2 dx1.
  for (int s = 0; s < N2; ++s) {
    const int jl = s;
    const int jr = mesh.y.cell(s + 1);
    const auto bl = cell_basis(k, mesh.y.width(jl), 1.0);
    const auto br = cell_basis(k, mesh.y.width(jr), -1.0);
    for (int j1 = 0; j1 < N1; ++j1) {
      const double h1 = mesh.x.width(j1);
      for (int q = 0; q < rule.size(); ++q) {
        const auto a0 = cell_basis(k, h1, rule.points[q]);
        const double w = 0.5 * h1 * rule.weights[q];
        for (int m1 = 0; m1 < b; ++m1) {
          for (int m2 = 0; m2 < b; ++m2) {
            for (int n1 = 0; n1 < b; ++n1) {
              for (int n2 = 0; n2 < b; ++n2) {
                const double x = w * a0[m1] * a0[n1];
                const double fl = theta2 * bl[n2] * x;
                const double fr = (1.0 - theta2) * br[n2] * x;
                t.emplace_back(layout.index(j1, jr, m1, m2), layout.index(j1, jl, n1, n2), fl * br[m2]);
                t.emplace_back(layout.index(j1, jr, m1, m2), layout.index(j1, jr, n1, n2), fr * br[m2]);
                t.emplace_back(layout.index(j1, jl, m1, m2), layout.index(j1, jl, n1, n2), -fl * bl[m2]);
                t.emplace_back(layout.index(j1, jl, m1, m2), layout.index(j1, jr, n1, n2), -fr * bl[m2]);
              }
            }
          }
        }
      }
    }
  }

  SparseMatrix m(layout.size(), layout.size());
  m.setFromTriplets(t.begin(), t.end());
  m.prune(1e-300, 1.0);
  return LinearOperator(std::move(m), info_2d(mesh, k, "qk_2d", theta1, theta2));
}

LinearOperator assemble_qk_2d_kronecker(const Mesh2D& mesh, int k, double theta1, double theta2) {
  check_thetas(theta1, theta2);
  const SparseMatrix d1 = assemble_d_theta(mesh.x, k, theta1).matrix();
  const SparseMatrix d2 = assemble_d_theta(mesh.y, k, theta2).matrix();
  SparseMatrix m = kron(d1, identity(d2.rows())) + kron(identity(d1.rows()), d2);
  m *= -1.0;
  return LinearOperator(std::move(m), info_2d(mesh, k, "qk_2d_kron", theta1, theta2));
}

namespace {

// The data of w dual to the tensor conditions: entry (i1, i2) pairs the
// 1D functional i1 (moment m1 < k on cell j1, or point value at x_{j1+1/2}
// for m1 = k) with i2 likewise.
Matrix tensor_functionals(const Function2D& w, const Mesh2D& mesh, int k, int quad_order) {
  const auto rule = gauss_legendre(quad_order > 0 ? quad_order : k + 5);
  const int b = k + 1;
  const int N1 = mesh.x.cells();
  const int N2 = mesh.y.cells();
  Matrix f = Matrix::Zero(N1 * b, N2 * b);
  // Nodes and weights of each 1D functional: a moment uses the cell rule,
  // the point value a single unit-weight node.
  auto nodes = [&](const Mesh1D& m, int j, int mode, std::vector<double>& x, std::vector<double>& wt) {
    x.clear();
    wt.clear();
    if (mode == k) {
      x.push_back(m.boundary(j + 1));
      wt.push_back(1.0);
      return;
    }
    const double h = m.width(j);
    for (int q = 0; q < rule.size(); ++q) {
      x.push_back(m.center(j) + 0.5 * h * rule.points[q]);
      wt.push_back(0.5 * h * rule.weights[q] * cell_basis(k, h, rule.points[q])[mode]);
    }
  };
  std::vector<double> x1, w1, x2, w2;
  for (int j1 = 0; j1 < N1; ++j1) {
    for (int m1 = 0; m1 < b; ++m1) {
      nodes(mesh.x, j1, m1, x1, w1);
      for (int j2 = 0; j2 < N2; ++j2) {
        for (int m2 = 0; m2 < b; ++m2) {
          nodes(mesh.y, j2, m2, x2, w2);
          double s = 0.0;
          for (std::size_t a = 0; a < x1.size(); ++a) {
            for (std::size_t c = 0; c < x2.size(); ++c) s += w1[a] * w2[c] * w(x1[a], x2[c]);
          }
          f(j1 * b + m1, j2 * b + m2) = s;
        }
      }
    }
  }
  return f;
}

}  // namespace

double pi_tensor_2d_residual(const DGFunction2D& u, const Function2D& w, double theta1, double theta2,
                             int quad_order) {
  const Mesh2D& mesh = u.mesh();
  const int k = u.degree();
  const int N1 = mesh.x.cells();
  const int N2 = mesh.y.cells();
  const Matrix data = tensor_functionals(w, mesh, k, quad_order);
  const auto rule = gauss_legendre(k + 2);
  double worst = 0.0;
  const double scale = std::max(1.0, data.cwiseAbs().maxCoeff());

  for (int j1 = 0; j1 < N1; ++j1) {
    const int r1 = mesh.x.cell(j1 + 1);
    for (int j2 = 0; j2 < N2; ++j2) {
      const int r2 = mesh.y.cell(j2 + 1);
      const double h1 = mesh.x.width(j1);
      const double h2 = mesh.y.width(j2);
      // Volume moments against Q^{k-1}: orthonormality makes them coefficients.
      for (int m1 = 0; m1 < k; ++m1) {
        for (int m2 = 0; m2 < k; ++m2) {
          worst = std::max(worst, std::abs(u.coeff(j1, j2, m1, m2) - data(j1 * (k + 1) + m1, j2 * (k + 1) + m2)));
        }
      }
      // Vertical edge x_{j1+1/2} against P^{k-1} in x2.
      for (int m2 = 0; m2 < k; ++m2) {
        double s = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
          const double flux = theta1 * u.cell_value(j1, j2, 1.0, rule.points[q]) +
                              (1.0 - theta1) * u.cell_value(r1, j2, -1.0, rule.points[q]);
          s += 0.5 * h2 * rule.weights[q] * flux * cell_basis(k, h2, rule.points[q])[m2];
        }
        worst = std::max(worst, std::abs(s - data(j1 * (k + 1) + k, j2 * (k + 1) + m2)));
      }
      // Horizontal edge x_{j2+1/2} against P^{k-1} in x1.
      for (int m1 = 0; m1 < k; ++m1) {
        double s = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
          const double flux = theta2 * u.cell_value(j1, j2, rule.points[q], 1.0) +
                              (1.0 - theta2) * u.cell_value(j1, r2, rule.points[q], -1.0);
          s += 0.5 * h1 * rule.weights[q] * flux * cell_basis(k, h1, rule.points[q])[m1];
        }
        worst = std::max(worst, std::abs(s - data(j1 * (k + 1) + m1, j2 * (k + 1) + k)));
      }
      // Corner (x_{j1+1/2}, x_{j2+1/2}): bilinear flux of the four cells.
      const double corner = theta1 * theta2 * u.cell_value(j1, j2, 1.0, 1.0) +
                            theta1 * (1.0 - theta2) * u.cell_value(j1, r2, 1.0, -1.0) +
                            (1.0 - theta1) * theta2 * u.cell_value(r1, j2, -1.0, 1.0) +
                            (1.0 - theta1) * (1.0 - theta2) * u.cell_value(r1, r2, -1.0, -1.0);
      worst = std::max(worst, std::abs(corner - data(j1 * (k + 1) + k, j2 * (k + 1) + k)));
    }
  }
  return worst / scale;
}

DGFunction2D pi_tensor_2d(const Function2D& w, const Mesh2D& mesh, int k, double theta1, double theta2,
                          int quad_order) {
  const PiThetaProjector p1(mesh.x, k, theta1);
  const PiThetaProjector p2(mesh.y, k, theta2);
  const Matrix data = tensor_functionals(w, mesh, k, quad_order);
  const Matrix c = p1.solution_matrix() * data * p2.solution_matrix().transpose();
  Vector coeffs(c.size());
  for (Eigen::Index i1 = 0; i1 < c.rows(); ++i1) coeffs.segment(i1 * c.cols(), c.cols()) = c.row(i1).transpose();
  DGFunction2D u(mesh, k, std::move(coeffs));
  const double res = pi_tensor_2d_residual(u, w, theta1, theta2, quad_order);
  if (res > 1e-10) {
    throw NumericalFailure("tensor projection violates its defining conditions (residual " + std::to_string(res) + ")");
  }
  return u;
}

}  // namespace rkdg
