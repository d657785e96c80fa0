#include "rkdg/linear_operator.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <ostream>

#include "rkdg/error.hpp"

namespace rkdg {

LinearOperator::LinearOperator(SparseMatrix matrix, OperatorInfo info)
    : matrix_(std::move(matrix)), info_(std::move(info)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("LinearOperator must be square");
  matrix_.makeCompressed();
}

LinearOperator LinearOperator::transpose() const {
  OperatorInfo info = info_;
  info.scheme += "^T";
  return LinearOperator(SparseMatrix(matrix_.transpose()), info);
}

LinearOperator LinearOperator::scaled(double s) const { return LinearOperator(SparseMatrix(s * matrix_), info_); }

int LinearOperator::bandwidth_cells() const {
  const int per_component = info_.cells * info_.block;
  if (per_component <= 0) return 0;
  auto cell_of = [&](Eigen::Index i) { return static_cast<int>(i % per_component) / info_.block; };
  int band = 0;
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) {
      if (it.value() == 0.0) continue;
      int d = std::abs(cell_of(it.row()) - cell_of(it.col()));
      d = std::min(d, info_.cells - d);
      band = std::max(band, d);
    }
  }
  return band;
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b, OperatorInfo info) {
  if (a.dim() != b.dim()) throw InvalidArgument("compose: dimension mismatch");
  SparseMatrix m = a.matrix() * b.matrix();
  m.prune(0.0);
  return LinearOperator(std::move(m), std::move(info));
}

LinearOperator compose(const std::vector<LinearOperator>& factors, OperatorInfo info) {
  if (factors.empty()) throw InvalidArgument("compose: no factors");
  SparseMatrix m = factors.front().matrix();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    if (factors[i].dim() != factors.front().dim()) throw InvalidArgument("compose: dimension mismatch");
    m = SparseMatrix(m * factors[i].matrix());
  }
  m.prune(0.0);
  return LinearOperator(std::move(m), std::move(info));
}

void dump_matrix_market(const LinearOperator& op, std::ostream& out) {
  const SparseMatrix& m = op.matrix();
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << "% scheme=" << op.info().scheme << " order=" << op.info().order << " beta=" << op.info().beta << '\n';
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    }
  }
}

}  // namespace rkdg
