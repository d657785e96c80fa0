#include "rkdg/spectral.hpp"

#include <cmath>
#include <numbers>

#include "rkdg/error.hpp"

namespace rkdg {

namespace {

void check_shape(int cutoff, int components, int dimension) {
  if (cutoff < 0) throw InvalidArgument("Fourier cutoff must be nonnegative");
  if (components < 1) throw InvalidArgument("Fourier function needs at least one component");
  if (dimension != 1 && dimension != 2) throw InvalidArgument("Fourier dimension must be 1 or 2");
}

// Forward DFT coefficients (1/M) sum_j g_j e^{-i k x_j} for |k| <= N.
std::vector<Complex> dft_row(const std::vector<Complex>& g, int n) {
  const int m = static_cast<int>(g.size());
  std::vector<Complex> out(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) {
    Complex s = 0.0;
    for (int j = 0; j < m; ++j) {
      const double arg = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(k) * j) % m) / m;
      s += g[j] * Complex(std::cos(arg), std::sin(arg));
    }
    out[k + n] = s / static_cast<double>(m);
  }
  return out;
}

}  // namespace

FourierFunction::FourierFunction(int cutoff, int components, int dimension)
    : n_(cutoff), m_(components), d_(dimension) {
  check_shape(cutoff, components, dimension);
  a_ = ComplexVector::Zero(static_cast<Eigen::Index>(modes()) * m_);
}

FourierFunction::FourierFunction(int cutoff, int components, int dimension, ComplexVector coefficients)
    : FourierFunction(cutoff, components, dimension) {
  if (coefficients.size() != a_.size()) throw InvalidArgument("FourierFunction: coefficient vector has the wrong size");
  a_ = std::move(coefficients);
}

int FourierFunction::modes() const { return d_ == 1 ? 2 * n_ + 1 : (2 * n_ + 1) * (2 * n_ + 1); }

Eigen::Index FourierFunction::index(int k1, int k2, int component) const {
  const int w = 2 * n_ + 1;
  const Eigen::Index mode = d_ == 1 ? (k1 + n_) : static_cast<Eigen::Index>(k1 + n_) * w + (k2 + n_);
  return mode * m_ + component;
}

std::pair<int, int> FourierFunction::wave_numbers(int mode) const {
  if (d_ == 1) return {mode - n_, 0};
  const int w = 2 * n_ + 1;
  return {mode / w - n_, mode % w - n_};
}

Eigen::VectorXd FourierFunction::evaluate(double x1, double x2) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m_);
  for (int mode = 0; mode < modes(); ++mode) {
    const auto [k1, k2] = wave_numbers(mode);
    const double arg = k1 * x1 + (d_ == 2 ? k2 * x2 : 0.0);
    const Complex e(std::cos(arg), std::sin(arg));
    for (int c = 0; c < m_; ++c) v[c] += (a_[static_cast<Eigen::Index>(mode) * m_ + c] * e).real();
  }
  return v;
}

double FourierFunction::norm() const {
  return std::sqrt(std::pow(2.0 * std::numbers::pi, d_) * a_.squaredNorm());
}

double FourierFunction::conjugate_symmetry_defect() const {
  double worst = 0.0;
  for (int mode = 0; mode < modes(); ++mode) {
    const auto [k1, k2] = wave_numbers(mode);
    for (int c = 0; c < m_; ++c) {
      worst = std::max(worst, std::abs(coeff(-k1, d_ == 2 ? -k2 : 0, c) - std::conj(coeff(k1, k2, c))));
    }
  }
  return worst;
}

FourierFunction FourierFunction::resized(int cutoff) const {
  FourierFunction r(cutoff, m_, d_);
  const int lim = std::min(cutoff, n_);
  for (int k1 = -lim; k1 <= lim; ++k1) {
    for (int k2 = (d_ == 2 ? -lim : 0); k2 <= (d_ == 2 ? lim : 0); ++k2) {
      for (int c = 0; c < m_; ++c) r.a_[r.index(k1, k2, c)] = coeff(k1, k2, c);
    }
  }
  return r;
}

FourierFunction fourier_truncate(const VectorField& f, int cutoff, int components, int dimension, int samples) {
  check_shape(cutoff, components, dimension);
  const int m = std::max(samples, 4 * cutoff + 1);
  const double dx = 2.0 * std::numbers::pi / m;
  FourierFunction u(cutoff, components, dimension);
  const int w = 2 * cutoff + 1;
  if (dimension == 1) {
    std::vector<std::vector<Complex>> g(static_cast<std::size_t>(components), std::vector<Complex>(m));
    for (int j = 0; j < m; ++j) {
      const Eigen::VectorXd v = f(j * dx, 0.0);
      if (v.size() != components) throw InvalidArgument("fourier_truncate: field returned the wrong number of components");
      for (int c = 0; c < components; ++c) g[c][j] = v[c];
    }
    for (int c = 0; c < components; ++c) {
      const auto row = dft_row(g[c], cutoff);
      for (int k = -cutoff; k <= cutoff; ++k) u.coefficients()[u.index(k, 0, c)] = row[k + cutoff];
    }
    return u;
  }
  // 2D: samples, then a DFT along x2 for each x1, then along x1.
  std::vector<std::vector<std::vector<Complex>>> g(
      static_cast<std::size_t>(components),
      std::vector<std::vector<Complex>>(m, std::vector<Complex>(m)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Eigen::VectorXd v = f(i * dx, j * dx);
      if (v.size() != components) throw InvalidArgument("fourier_truncate: field returned the wrong number of components");
      for (int c = 0; c < components; ++c) g[c][i][j] = v[c];
    }
  }
  for (int c = 0; c < components; ++c) {
    std::vector<std::vector<Complex>> partial(m);
    for (int i = 0; i < m; ++i) partial[i] = dft_row(g[c][i], cutoff);
    for (int k2 = 0; k2 < w; ++k2) {
      std::vector<Complex> col(m);
      for (int i = 0; i < m; ++i) col[i] = partial[i][k2];
      const auto row = dft_row(col, cutoff);
      for (int k1 = 0; k1 < w; ++k1) u.coefficients()[u.index(k1 - cutoff, k2 - cutoff, c)] = row[k1];
    }
  }
  return u;
}

FourierOperator::FourierOperator(std::vector<Eigen::MatrixXd> a, int cutoff) : a_(std::move(a)), n_(cutoff) {
  if (a_.empty() || a_.size() > 2) throw InvalidArgument("FourierOperator needs one coefficient matrix per dimension (d <= 2)");
  if (cutoff < 0) throw InvalidArgument("Fourier cutoff must be nonnegative");
  m_ = static_cast<int>(a_[0].rows());
  for (const auto& ai : a_) {
    if (ai.rows() != m_ || ai.cols() != m_) throw InvalidArgument("FourierOperator: coefficient matrices must be m x m");
    if ((ai - ai.transpose()).cwiseAbs().maxCoeff() > 1e-13) {
      throw InvalidArgument("FourierOperator: coefficient matrices must be symmetric");
    }
  }
}

Eigen::Index FourierOperator::dim() const {
  const Eigen::Index w = 2 * n_ + 1;
  return (dimension() == 1 ? w : w * w) * m_;
}

ComplexVector FourierOperator::apply(const ComplexVector& x) const {
  if (x.size() != dim()) throw InvalidArgument("FourierOperator: dimension mismatch");
  ComplexVector y(x.size());
  const int w = 2 * n_ + 1;
  const Eigen::Index modes = x.size() / m_;
  for (Eigen::Index mode = 0; mode < modes; ++mode) {
    const int k1 = dimension() == 1 ? static_cast<int>(mode) - n_ : static_cast<int>(mode / w) - n_;
    const int k2 = dimension() == 1 ? 0 : static_cast<int>(mode % w) - n_;
    Eigen::MatrixXd s = k1 * a_[0];
    if (dimension() == 2) s += k2 * a_[1];
    y.segment(mode * m_, m_) = Complex(0.0, -1.0) * (s.cast<Complex>() * x.segment(mode * m_, m_));
  }
  return y;
}

FourierFunction FourierOperator::apply(const FourierFunction& u) const {
  if (u.cutoff() != n_ || u.components() != m_ || u.dimension() != dimension()) {
    throw InvalidArgument("FourierOperator: function shape does not match the operator");
  }
  return FourierFunction(n_, m_, dimension(), apply(u.coefficients()));
}

FourierFunction apply_LN(const std::vector<Eigen::MatrixXd>& a, const FourierFunction& u) {
  return FourierOperator(a, u.cutoff()).apply(u);
}

double fourier_l2_error(const FourierFunction& u, const VectorField& exact, int reference_cutoff) {
  if (reference_cutoff <= u.cutoff()) throw InvalidArgument("fourier_l2_error: reference cutoff must exceed the cutoff");
  const FourierFunction ref = fourier_truncate(exact, reference_cutoff, u.components(), u.dimension());
  FourierFunction diff = u.resized(reference_cutoff);
  diff.coefficients() -= ref.coefficients();
  return diff.norm();
}

double fourier_skewness(const FourierOperator& op, const FourierFunction& v) {
  const ComplexVector lv = op.apply(v.coefficients());
  const double nv = v.coefficients().squaredNorm();
  if (nv == 0.0) return 0.0;
  return v.coefficients().dot(lv).real() / nv;
}

}  // namespace rkdg
