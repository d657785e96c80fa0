#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rkdg/diagnostics.hpp"
#include "rkdg/error.hpp"
#include "rkdg/linear_operator.hpp"

namespace rkdg {

/// Explicit RK method for a linear autonomous system, represented by its
/// amplification polynomial R_s(z) = sum_{i=0}^s alpha_i z^i.
struct RKScheme {
  std::vector<double> alpha;
  int order = 0;  ///< linear order p: alpha_i = 1/i! for all i <= p
  std::string name;

  int stages() const { return static_cast<int>(alpha.size()) - 1; }
  /// R_s(z) for scalar z.
  double amplification(double z) const;
  /// sum_i |alpha_i|
  double coefficient_l1() const;
};

/// s = p stage Taylor method, alpha_i = 1/i!, 1 <= p <= 6.
RKScheme taylor_rk(int p);
/// Scheme from explicit coefficients; alpha_0 must be 1. The order is the
/// largest p with alpha_j = 1/j! for all j <= p.
RKScheme custom_rk(std::vector<double> alpha, std::string name = "custom");
/// Named presets: euler, heun, ssprk3, rk4, rk4_two_step.
RKScheme rk_preset(const std::string& name);
/// The method combining two steps of `base` with step tau/2, expanded as a
/// polynomial in tau L: R(z/2)^2.
RKScheme two_step(const RKScheme& base);

/// Time-step guard tau ||L_h|| <= lambda < 1.
struct CflGuard {
  double lambda = 0.9;
  bool strict = false;
};

/// Warns (or throws NumericalFailure in strict mode) when tau * norm > lambda.
void check_cfl(double tau, double norm, const CflGuard& guard);

/// u^{n+1} = R_s(tau L) u^n by Horner's rule with s operator applications.
/// Op must provide apply(const Vec&) -> Vec.
template <class Op, class Vec>
Vec rk_step(const RKScheme& scheme, double tau, const Op& op, const Vec& u) {
  const int s = scheme.stages();
  Vec y = scheme.alpha[s] * u;
  for (int i = s - 1; i >= 0; --i) {
    Vec ly = op.apply(y);
    y = scheme.alpha[i] * u + tau * ly;
  }
  return y;
}

struct StepRecord {
  double tau = 0.0;
  int count = 0;
};

template <class Vec>
struct EvolveResult {
  Vec u;
  std::vector<StepRecord> log;  ///< uniform steps, then an optional shortened final step
  int steps = 0;
};

/// Advances u0 to time T with uniform steps tau; the final step is
/// shortened to land on T. The observer (if any) sees (n, t^n, u^n) after
/// every step.
template <class Op, class Vec>
EvolveResult<Vec> evolve(const RKScheme& scheme, const Op& op, const Vec& u0, double T, double tau,
                         const std::function<void(int, double, const Vec&)>& observer = {}) {
  if (!(T >= 0.0)) throw InvalidArgument("evolve: final time must be nonnegative");
  if (!(tau > 0.0)) throw InvalidArgument("evolve: time step must be positive");
  EvolveResult<Vec> r;
  r.u = u0;
  if (T == 0.0) return r;
  int full = static_cast<int>(std::floor(T / tau + 1e-9));
  double rest = T - full * tau;
  if (rest < 0.0) rest = 0.0;
  if (rest <= 1e-12 * std::max(1.0, T)) rest = 0.0;
  if (full > 0) r.log.push_back({tau, full});
  if (rest > 0.0) r.log.push_back({rest, 1});
  int n = 0;
  for (const auto& rec : r.log) {
    for (int i = 0; i < rec.count; ++i) {
      r.u = rk_step(scheme, rec.tau, op, r.u);
      ++n;
      if (observer) observer(n, n == full + (rest > 0.0 ? 1 : 0) ? T : n * tau, r.u);
    }
  }
  r.steps = n;
  return r;
}

/// Dense R_s(tau L); n <= 2000.
Matrix amplification_matrix(const RKScheme& scheme, double tau, const LinearOperator& op);
/// ||R_s(tau L)||_2 (dense SVD for n <= 2000, power iteration otherwise).
double amplification_norm(const RKScheme& scheme, double tau, const LinearOperator& op);

/// exp(t L) u0 by scaling and squaring with Pade approximation; n <= 2000.
Vector expm_reference(const LinearOperator& op, double t, const Vector& u0);
Matrix expm_matrix(const LinearOperator& op, double t);

/// Gronwall factor sigma(a, t) = (e^{at} - 1)/a for a > 0 and t for a = 0.
double sigma_factor(double a, double t);

}  // namespace rkdg
