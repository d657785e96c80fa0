#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <iosfwd>
#include <string>
#include <vector>

namespace rkdg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Provenance data carried by an assembled operator.
struct OperatorInfo {
  std::string scheme;           ///< e.g. "D_theta", "ldg", "ultraweak3", "wave_ab"
  int order = 1;                ///< derivative order q
  double beta = 1.0;
  std::vector<double> thetas;   ///< flux parameters, scheme-specific order
  int block = 1;                ///< dofs per cell per component (k+1)
  int cells = 0;                ///< cells per component
  int components = 1;
};

/// Assembled matrix acting on stacked DG coefficient vectors. Immutable;
/// concurrent apply() on distinct vectors is safe.
class LinearOperator {
 public:
  LinearOperator() = default;
  LinearOperator(SparseMatrix matrix, OperatorInfo info);

  Eigen::Index dim() const { return matrix_.rows(); }
  const SparseMatrix& matrix() const { return matrix_; }
  const OperatorInfo& info() const { return info_; }
  Matrix dense() const { return Matrix(matrix_); }

  Vector apply(const Vector& x) const { return matrix_ * x; }
  Vector operator()(const Vector& x) const { return apply(x); }

  LinearOperator transpose() const;
  LinearOperator scaled(double s) const;

  /// Largest periodic distance (in cells) between the cell of a row and
  /// the cell of a nonzero column in that row.
  int bandwidth_cells() const;

 private:
  SparseMatrix matrix_;
  OperatorInfo info_;
};

/// Operator product a*b (apply b first); metadata taken from `info`.
LinearOperator compose(const LinearOperator& a, const LinearOperator& b, OperatorInfo info);
LinearOperator compose(const std::vector<LinearOperator>& factors, OperatorInfo info);

/// Writes "%%MatrixMarket matrix coordinate real general" with 1-based
/// (row, col, value) triplets at 17 significant digits.
void dump_matrix_market(const LinearOperator& op, std::ostream& out);

}  // namespace rkdg
