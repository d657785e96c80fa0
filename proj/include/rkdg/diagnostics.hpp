#pragma once

#include <cstdint>
#include <string>

#include "rkdg/linear_operator.hpp"

namespace rkdg {

enum class NormMethod { Auto, PowerIteration, DenseSvd };

struct NormOptions {
  NormMethod method = NormMethod::Auto;
  double tolerance = 1e-8;
  int max_iterations = 5000;
  Eigen::Index dense_limit = 2000;
  std::uint64_t seed = 0x5eed;
};

struct NormEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = true;
  std::string method;
};

/// ||A||_2. Auto runs power iteration on A^T A and falls back to a dense
/// SVD for n <= dense_limit when the iteration stalls.
NormEstimate operator_norm(const LinearOperator& op, const NormOptions& options = {});
NormEstimate matrix_two_norm(const Matrix& a, const NormOptions& options = {});

struct Semiboundedness {
  double max_eigenvalue = 0.0;  ///< largest eigenvalue of (A + A^T)/2
  double min_eigenvalue = 0.0;
  double mu = 0.0;              ///< max(0, max_eigenvalue)
};

/// Dense symmetric eigen-solve of the symmetric part; n <= 4000.
Semiboundedness semiboundedness_mu(const LinearOperator& op);

/// max |(A + A^T)/2|_{ij}
double skewness_defect(const LinearOperator& op);

}  // namespace rkdg
