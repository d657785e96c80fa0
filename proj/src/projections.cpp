#include "rkdg/projections.hpp"

#include <cmath>
#include <sstream>

#include "rkdg/error.hpp"
#include "rkdg/legendre.hpp"
#include "rkdg/quadrature.hpp"

namespace rkdg {

namespace {

using ColSparse = Eigen::SparseMatrix<double>;

Vector constant_one(const Mesh1D& mesh, int k) {
  Vector m = Vector::Zero(static_cast<Eigen::Index>(mesh.cells()) * (k + 1));
  for (int j = 0; j < mesh.cells(); ++j) m[j * (k + 1)] = std::sqrt(mesh.width(j));
  return m;
}

void check_theta(double theta) {
  if (std::abs(theta - 0.5) < 1e-8) {
    throw NumericalFailure("flux parameter theta = 1/2 makes the projection/inverse system singular");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

MeanZeroFunction::MeanZeroFunction(DGFunction z) : z_(std::move(z)) {
  if (!is_mean_zero(z_)) {
    std::ostringstream os;
    os << "function is not mean-zero: <z,1> = " << z_.integral() << ", ||z|| = " << z_.coefficients().norm();
    throw InvalidArgument(os.str());
  }
}

MeanZeroFunction MeanZeroFunction::remove_mean(DGFunction u) {
  u.add_constant(-u.integral() / u.mesh().length());
  return MeanZeroFunction(std::move(u));
}

bool MeanZeroFunction::is_mean_zero(const DGFunction& u) {
  const double norm = u.coefficients().norm();
  const double mean = std::abs(u.integral());
  return mean <= std::max(1e-11 * norm, 1e-13);
}

// ---------------------------------------------------------------------------

PiThetaProjector::PiThetaProjector(Mesh1D mesh, int k, double theta)
    : mesh_(std::move(mesh)), k_(k), theta_(theta) {
  if (k < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  check_theta(theta);
  const int b = k + 1;
  const int n_cells = mesh_.cells();
  std::vector<Eigen::Triplet<double>> t;
  for (int j = 0; j < n_cells; ++j) {
    for (int m = 0; m < k; ++m) t.emplace_back(j * b + m, j * b + m, 1.0);
    const int jr = mesh_.cell(j + 1);
    const auto left = cell_basis(k, mesh_.width(j), 1.0);
    const auto right = cell_basis(k, mesh_.width(jr), -1.0);
    for (int n = 0; n <= k; ++n) {
      t.emplace_back(j * b + k, j * b + n, theta * left[n]);
      t.emplace_back(j * b + k, jr * b + n, (1.0 - theta) * right[n]);
    }
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(n_cells) * b;
  ColSparse s(dim, dim);
  s.setFromTriplets(t.begin(), t.end());
  conditions_ = SparseMatrix(s);
  lu_ = std::make_shared<Eigen::SparseLU<ColSparse>>();
  lu_->compute(s);
  if (lu_->info() != Eigen::Success) {
    throw NumericalFailure("Pi_theta system is singular for this mesh/degree/theta");
  }
}

Vector PiThetaProjector::functionals(const ScalarFunction& w, int quad_order) const {
  const auto rule = gauss_legendre(quad_order > 0 ? quad_order : k_ + 5);
  const int b = k_ + 1;
  Vector f = Vector::Zero(static_cast<Eigen::Index>(mesh_.cells()) * b);
  for (int j = 0; j < mesh_.cells(); ++j) {
    const double hj = mesh_.width(j);
    const double xc = mesh_.center(j);
    for (int q = 0; q < rule.size(); ++q) {
      const double xi = rule.points[q];
      const double wx = w(xc + 0.5 * hj * xi);
      const auto phi = cell_basis(k_, hj, xi);
      for (int m = 0; m < k_; ++m) f[j * b + m] += 0.5 * hj * rule.weights[q] * wx * phi[m];
    }
    f[j * b + k_] = w(mesh_.boundary(j + 1));
  }
  return f;
}

Vector PiThetaProjector::solve(const Vector& functionals) const {
  Vector c = lu_->solve(functionals);
  if (lu_->info() != Eigen::Success) throw NumericalFailure("Pi_theta solve failed");
  const double res = (conditions_ * c - functionals).lpNorm<Eigen::Infinity>();
  const double scale = std::max(1.0, functionals.lpNorm<Eigen::Infinity>());
  if (!(res <= 1e-11 * scale)) {
    std::ostringstream os;
    os << "Pi_theta residual " << res << " exceeds tolerance (near-singular system, theta = " << theta_ << ")";
    throw NumericalFailure(os.str());
  }
  return c;
}

DGFunction PiThetaProjector::project(const ScalarFunction& w, int quad_order) const {
  return DGFunction(mesh_, k_, solve(functionals(w, quad_order)));
}

double PiThetaProjector::residual(const DGFunction& u, const Vector& f) const {
  return (conditions_ * u.coefficients() - f).lpNorm<Eigen::Infinity>();
}

Matrix PiThetaProjector::solution_matrix() const {
  const Eigen::Index n = conditions_.rows();
  Matrix id = Matrix::Identity(n, n);
  Matrix p = lu_->solve(id);
  return p;
}

DGFunction pi_theta(const ScalarFunction& w, const Mesh1D& mesh, int k, double theta, int quad_order) {
  return PiThetaProjector(mesh, k, theta).project(w, quad_order);
}

// ---------------------------------------------------------------------------

DThetaInverse::DThetaInverse(Mesh1D mesh, int k, double theta)
    : mesh_(std::move(mesh)), k_(k), theta_(theta), d_(assemble_d_theta(mesh_, k, theta)) {
  check_theta(theta);
  constant1_ = constant_one(mesh_, k);
  const Eigen::Index n = d_.dim();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(d_.matrix().nonZeros()) + 2 * static_cast<std::size_t>(mesh_.cells()));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (SparseMatrix::InnerIterator it(d_.matrix(), r); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (constant1_[i] != 0.0) {
      t.emplace_back(i, n, constant1_[i]);
      t.emplace_back(n, i, constant1_[i]);
    }
  }
  ColSparse saddle(n + 1, n + 1);
  saddle.setFromTriplets(t.begin(), t.end());
  lu_ = std::make_shared<Eigen::SparseLU<ColSparse>>();
  lu_->compute(saddle);
  if (lu_->info() != Eigen::Success) throw NumericalFailure("D_theta saddle-point system is singular");
}

Vector DThetaInverse::apply(const Vector& z) const {
  const Eigen::Index n = d_.dim();
  if (z.size() != n) throw InvalidArgument("D_theta^{-1}: dimension mismatch");
  const double znorm = z.norm();
  if (!(std::abs(constant1_.dot(z)) <= std::max(1e-11 * znorm, 1e-13))) {
    throw InvalidArgument("D_theta^{-1} is defined on mean-zero functions only");
  }
  Vector rhs = Vector::Zero(n + 1);
  rhs.head(n) = z;
  Vector sol = lu_->solve(rhs);
  if (lu_->info() != Eigen::Success) throw NumericalFailure("D_theta^{-1} solve failed");
  Vector x = sol.head(n);
  const double res = (d_.apply(x) - z).norm();
  if (!(res <= 1e-10 * std::max(znorm, 1e-300) || znorm == 0.0)) {
    std::ostringstream os;
    os << "D_theta^{-1} residual " << res << " exceeds 1e-10 ||z|| = " << 1e-10 * znorm;
    throw NumericalFailure(os.str());
  }
  return x;
}

MeanZeroFunction DThetaInverse::apply(const MeanZeroFunction& z) const {
  return MeanZeroFunction(DGFunction(mesh_, k_, apply(z.function().coefficients())));
}

MeanZeroFunction d_theta_inverse_apply(double theta, const MeanZeroFunction& z) {
  const DGFunction& f = z.function();
  return DThetaInverse(f.mesh(), f.degree(), theta).apply(z);
}

// ---------------------------------------------------------------------------

DGFunction composed_projection(const DerivativeFunction& w, int q, double theta0, const std::vector<double>& thetas,
                               const Mesh1D& mesh, int k, int quad_order) {
  if (q < 1) throw InvalidArgument("composed projection needs q >= 1");
  const int g = q / 2;
  if (static_cast<int>(thetas.size()) != g) {
    std::ostringstream os;
    os << "composed projection for q = " << q << " needs " << g << " theta values, got " << thetas.size();
    throw InvalidArgument(os.str());
  }
  const int qo = quad_order > 0 ? quad_order : k + 5;
  DGFunction dq = l2_project([&](double x) { return w(x, q); }, mesh, k, qo);
  Vector z = MeanZeroFunction(std::move(dq)).function().coefficients();

  // Rightmost factor first.
  for (int i = g - 1; i >= 0; --i) z = DThetaInverse(mesh, k, 1.0 - thetas[i]).apply(z);
  if (q % 2 == 1) z = DThetaInverse(mesh, k, theta0).apply(z);
  for (int i = 0; i < g; ++i) z = DThetaInverse(mesh, k, thetas[i]).apply(z);

  DGFunction out(mesh, k, std::move(z));
  out.add_constant(integrate([&](double x) { return w(x, 0); }, mesh, qo) / mesh.length());
  return out;
}

double commuting_defect(const LinearOperator& lh, const DGFunction& projected, const DGFunction& projected_lw) {
  if (lh.dim() != projected.size() || lh.dim() != projected_lw.size()) {
    throw InvalidArgument("commuting_defect: dimension mismatch");
  }
  const Vector diff = lh.apply(projected.coefficients()) - projected_lw.coefficients();
  return diff.norm() / std::max(1.0, projected_lw.coefficients().norm());
}

double commuting_defect(ProjectionKind kind, const DerivativeFunction& w, const LinearOperator& lh, const Mesh1D& mesh,
                        int quad_order) {
  const OperatorInfo& info = lh.info();
  if (info.components != 1 || info.cells != mesh.cells()) {
    throw InvalidArgument("commuting_defect expects a scalar 1D operator on the given mesh");
  }
  int q = 1;
  double beta = 1.0;
  double theta0 = 0.0;
  std::vector<double> thetas;
  if (info.scheme == "D_theta") {
    theta0 = info.thetas.at(0);
  } else if (info.scheme == "ldg") {
    q = info.order;
    beta = info.beta;
    theta0 = info.thetas.at(0);
    thetas.assign(info.thetas.begin() + 1, info.thetas.end());
  } else {
    throw InvalidArgument("commuting_defect: unsupported operator '" + info.scheme + "'");
  }
  const int k = info.block - 1;
  const int qo = quad_order > 0 ? quad_order : k + 5;
  DGFunction pw(mesh, k);
  switch (kind) {
    case ProjectionKind::L2:
      pw = l2_project([&](double x) { return w(x, 0); }, mesh, k, qo);
      break;
    case ProjectionKind::PiTheta:
      if (q != 1) throw InvalidArgument("Pi_theta pairs with first-order operators only");
      pw = pi_theta([&](double x) { return w(x, 0); }, mesh, k, theta0, qo);
      break;
    case ProjectionKind::Composed:
      pw = composed_projection(w, q, theta0, thetas, mesh, k, qo);
      break;
  }
  const DGFunction plw = l2_project([&](double x) { return beta * w(x, q); }, mesh, k, qo);
  return commuting_defect(lh, pw, plw);
}

}  // namespace rkdg
