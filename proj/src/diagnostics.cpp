#include "rkdg/diagnostics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "rkdg/error.hpp"

namespace rkdg {

namespace {

template <class Apply, class ApplyT>
NormEstimate power_iteration(Eigen::Index n, Apply apply, ApplyT apply_t, const NormOptions& opt) {
  NormEstimate est;
  est.method = "power";
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> dist;
  Vector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = dist(rng);
  x.normalize();
  double lambda = 0.0;
  est.converged = false;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    Vector y = apply_t(apply(x));
    const double next = y.norm();
    est.iterations = it;
    if (next == 0.0) {
      lambda = 0.0;
      est.converged = true;
      break;
    }
    x = y / next;
    if (std::abs(next - lambda) <= opt.tolerance * next) {
      lambda = next;
      est.converged = true;
      break;
    }
    lambda = next;
  }
  est.value = std::sqrt(lambda);
  return est;
}

NormEstimate dense_svd(const Matrix& a) {
  NormEstimate est;
  est.method = "dense_svd";
  if (a.size() == 0) return est;
  Eigen::BDCSVD<Matrix> svd(a);
  est.value = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  return est;
}

}  // namespace

NormEstimate operator_norm(const LinearOperator& op, const NormOptions& options) {
  const Eigen::Index n = op.dim();
  if (options.method == NormMethod::DenseSvd) {
    if (n > options.dense_limit) throw InvalidArgument("operator too large for the dense SVD path");
    return dense_svd(op.dense());
  }
  const SparseMatrix& a = op.matrix();
  const SparseMatrix at = a.transpose();
  NormEstimate est = power_iteration(
      n, [&](const Vector& x) { return Vector(a * x); }, [&](const Vector& x) { return Vector(at * x); }, options);
  if (est.converged || options.method == NormMethod::PowerIteration) {
    if (!est.converged) throw NumericalFailure("power iteration for the operator norm did not converge");
    return est;
  }
  if (n <= options.dense_limit) return dense_svd(op.dense());
  throw NumericalFailure("power iteration for the operator norm did not converge");
}

NormEstimate matrix_two_norm(const Matrix& a, const NormOptions& options) {
  const Eigen::Index n = a.rows();
  if (options.method == NormMethod::PowerIteration || (options.method == NormMethod::Auto && n > options.dense_limit)) {
    NormEstimate est = power_iteration(
        a.cols(), [&](const Vector& x) { return Vector(a * x); },
        [&](const Vector& x) { return Vector(a.transpose() * x); }, options);
    if (!est.converged) throw NumericalFailure("power iteration for the matrix norm did not converge");
    return est;
  }
  return dense_svd(a);
}

Semiboundedness semiboundedness_mu(const LinearOperator& op) {
  if (op.dim() > 4000) throw InvalidArgument("semiboundedness_mu: operator exceeds the dense limit n <= 4000");
  Semiboundedness s;
  if (op.dim() == 0) return s;
  const Matrix a = op.dense();
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalFailure("symmetric eigen-solve failed");
  s.min_eigenvalue = eig.eigenvalues().minCoeff();
  s.max_eigenvalue = eig.eigenvalues().maxCoeff();
  s.mu = std::max(0.0, s.max_eigenvalue);
  return s;
}

double skewness_defect(const LinearOperator& op) {
  const SparseMatrix& a = op.matrix();
  SparseMatrix sym = 0.5 * (a + SparseMatrix(a.transpose()));
  double m = 0.0;
  for (Eigen::Index r = 0; r < sym.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(sym, r); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

}  // namespace rkdg
