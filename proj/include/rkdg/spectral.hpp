#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace rkdg {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// Real m-component field on [0, 2 pi]^d; x2 is ignored when d = 1.
using VectorField = std::function<Eigen::VectorXd(double x1, double x2)>;

/// Truncated Fourier series v_N = sum_{|k|<=N} a_k e^{i k.x} with a_k in C^m,
/// d in {1, 2}. Mode k = (k1[, k2]) with component c is stored at
/// ((k1+N)[*(2N+1) + (k2+N)]) * m + c.
class FourierFunction {
 public:
  FourierFunction(int cutoff, int components, int dimension);
  FourierFunction(int cutoff, int components, int dimension, ComplexVector coefficients);

  int cutoff() const { return n_; }
  int components() const { return m_; }
  int dimension() const { return d_; }
  int modes() const;  ///< (2N+1)^d
  const ComplexVector& coefficients() const { return a_; }
  ComplexVector& coefficients() { return a_; }
  Eigen::Index index(int k1, int k2, int component) const;
  Complex coeff(int k1, int k2, int component) const { return a_[index(k1, k2, component)]; }
  /// Wave numbers of flat mode index `mode` (component stripped).
  std::pair<int, int> wave_numbers(int mode) const;

  /// Real part of v_N at x.
  Eigen::VectorXd evaluate(double x1, double x2 = 0.0) const;
  /// L2 norm over [0, 2 pi]^d by Parseval: (2 pi)^d sum |a_k|^2.
  double norm() const;
  /// max_k |a_{-k} - conj(a_k)|
  double conjugate_symmetry_defect() const;
  /// Same function with a larger or smaller cutoff (zero padding / truncation).
  FourierFunction resized(int cutoff) const;

 private:
  int n_;
  int m_;
  int d_;
  ComplexVector a_;
};

/// Pi_0 onto V_N by a separable DFT on at least 4N+1 equispaced points per
/// direction (exact for band-limited f of bandwidth < samples - N).
FourierFunction fourier_truncate(const VectorField& f, int cutoff, int components, int dimension, int samples = 0);

/// L_N v = -sum_i A_i d_{x_i} v acting mode-wise as a_k -> -i (sum_i k_i A_i) a_k.
class FourierOperator {
 public:
  /// Each A_i must be m x m and symmetric to 1e-13; one matrix per dimension.
  FourierOperator(std::vector<Eigen::MatrixXd> a, int cutoff);
  int cutoff() const { return n_; }
  int components() const { return m_; }
  int dimension() const { return static_cast<int>(a_.size()); }
  Eigen::Index dim() const;
  ComplexVector apply(const ComplexVector& coefficients) const;
  FourierFunction apply(const FourierFunction& u) const;

 private:
  std::vector<Eigen::MatrixXd> a_;
  int n_;
  int m_;
};

FourierFunction apply_LN(const std::vector<Eigen::MatrixXd>& a, const FourierFunction& u);

/// ||u_N - f|| where f is represented by its truncation at cutoff
/// `reference_cutoff` (which must exceed u_N's cutoff).
double fourier_l2_error(const FourierFunction& u, const VectorField& exact, int reference_cutoff);

/// Re <L v, v> / ||v||^2 for the given operator and v.
double fourier_skewness(const FourierOperator& op, const FourierFunction& v);

}  // namespace rkdg
