#include "rkdg/time_integration.hpp"

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

namespace rkdg {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int infer_order(const std::vector<double>& alpha) {
  int p = 0;
  for (std::size_t i = 1; i < alpha.size(); ++i) {
    const double target = 1.0 / factorial(static_cast<int>(i));
    if (std::abs(alpha[i] - target) <= 1e-14 * std::max(1.0, target)) {
      p = static_cast<int>(i);
    } else {
      break;
    }
  }
  return p;
}

}  // namespace

double RKScheme::amplification(double z) const {
  double y = alpha.back();
  for (int i = stages() - 1; i >= 0; --i) y = alpha[i] + z * y;
  return y;
}

double RKScheme::coefficient_l1() const {
  double s = 0.0;
  for (double a : alpha) s += std::abs(a);
  return s;
}

RKScheme taylor_rk(int p) {
  if (p < 1 || p > 6) throw InvalidArgument("taylor_rk: order must be in [1, 6]");
  RKScheme s;
  s.alpha.resize(static_cast<std::size_t>(p) + 1);
  for (int i = 0; i <= p; ++i) s.alpha[i] = 1.0 / factorial(i);
  s.order = p;
  s.name = "taylor" + std::to_string(p);
  return s;
}

RKScheme custom_rk(std::vector<double> alpha, std::string name) {
  if (alpha.empty() || alpha[0] != 1.0) throw InvalidArgument("custom_rk: alpha_0 must equal 1 (consistency)");
  while (alpha.size() > 1 && alpha.back() == 0.0) alpha.pop_back();
  RKScheme s;
  s.alpha = std::move(alpha);
  s.order = infer_order(s.alpha);
  s.name = std::move(name);
  if (s.order < 1) throw InvalidArgument("custom_rk: alpha_1 must equal 1 (first-order consistency)");
  return s;
}

RKScheme two_step(const RKScheme& base) {
  const int s = base.stages();
  std::vector<double> half(static_cast<std::size_t>(s) + 1);
  for (int i = 0; i <= s; ++i) half[i] = base.alpha[i] * std::pow(0.5, i);
  std::vector<double> sq(static_cast<std::size_t>(2 * s) + 1, 0.0);
  for (int i = 0; i <= s; ++i) {
    for (int j = 0; j <= s; ++j) sq[i + j] += half[i] * half[j];
  }
  // Exact rationals may be off by an ulp; snap onto 1/i! where intended.
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double t = 1.0 / factorial(static_cast<int>(i));
    if (std::abs(sq[i] - t) <= 1e-14) sq[i] = t;
  }
  return custom_rk(std::move(sq), base.name + "_two_step");
}

RKScheme rk_preset(const std::string& name) {
  if (name == "euler") return custom_rk({1.0, 1.0}, "euler");
  if (name == "heun") return custom_rk({1.0, 1.0, 0.5}, "heun");
  if (name == "ssprk3") return custom_rk({1.0, 1.0, 0.5, 1.0 / 6.0}, "ssprk3");
  if (name == "rk4") return custom_rk({1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0}, "rk4");
  if (name == "rk4_two_step") return two_step(rk_preset("rk4"));
  if (name.rfind("taylor", 0) == 0 && name.size() == 7) return taylor_rk(name[6] - '0');
  throw InvalidArgument("unknown RK preset '" + name + "'");
}

void check_cfl(double tau, double norm, const CflGuard& guard) {
  if (tau * norm <= guard.lambda) return;
  std::ostringstream os;
  os << "CFL guard: tau ||L_h|| = " << tau * norm << " exceeds lambda = " << guard.lambda;
  if (guard.strict) throw NumericalFailure(os.str());
  warn(os.str());
}

Matrix amplification_matrix(const RKScheme& scheme, double tau, const LinearOperator& op) {
  if (op.dim() > 2000) throw InvalidArgument("amplification_matrix: operator exceeds dense limit n <= 2000");
  const Matrix a = tau * op.dense();
  const Eigen::Index n = a.rows();
  Matrix r = scheme.alpha.back() * Matrix::Identity(n, n);
  for (int i = scheme.stages() - 1; i >= 0; --i) {
    Matrix next = a * r;
    next.diagonal().array() += scheme.alpha[i];
    r = std::move(next);
  }
  return r;
}

double amplification_norm(const RKScheme& scheme, double tau, const LinearOperator& op) {
  if (op.dim() <= 2000) return matrix_two_norm(amplification_matrix(scheme, tau, op), {NormMethod::DenseSvd}).value;
  // Matrix-free power iteration on R^T R, with R^T = R_s(tau L^T).
  const LinearOperator opt = op.transpose();
  NormOptions opts;
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> dist;
  Vector x(op.dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
  x.normalize();
  double lambda = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    Vector y = rk_step(scheme, tau, opt, rk_step(scheme, tau, op, x));
    const double next = y.norm();
    x = y / next;
    if (std::abs(next - lambda) <= opts.tolerance * next) return std::sqrt(next);
    lambda = next;
  }
  throw NumericalFailure("power iteration for the amplification norm did not converge");
}

Matrix expm_matrix(const LinearOperator& op, double t) {
  if (op.dim() > 2000) throw InvalidArgument("expm_reference: operator exceeds dense limit n <= 2000");
  const Matrix a = t * op.dense();
  return a.exp();
}

Vector expm_reference(const LinearOperator& op, double t, const Vector& u0) {
  if (u0.size() != op.dim()) throw InvalidArgument("expm_reference: dimension mismatch");
  if (t == 0.0) return u0;
  return expm_matrix(op, t) * u0;
}

double sigma_factor(double a, double t) {
  if (a < 0.0 || t < 0.0) throw InvalidArgument("sigma_factor: a and t must be nonnegative");
  const double at = a * t;
  if (at < 1e-8) return t * (1.0 + at / 2.0 + at * at / 6.0);
  return std::expm1(at) / a;
}

}  // namespace rkdg
