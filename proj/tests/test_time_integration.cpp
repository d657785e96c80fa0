#include <doctest.h>

#include <cmath>
#include <complex>

#include "rkdg/diagnostics.hpp"
#include "rkdg/dg_ops1d.hpp"
#include "rkdg/systems.hpp"
#include "rkdg/time_integration.hpp"
#include "support.hpp"

using namespace rkdg;
using testing::kTwoPi;

namespace {

LinearOperator upwind(int n, int k = 1) { return assemble_d_theta(testing::periodic(n), k, 1.0).scaled(-1.0); }

LinearOperator small_random(int n, std::uint64_t seed) {
  const Vector v = testing::random_vector(n * n, seed);
  SparseMatrix m(n, n);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.emplace_back(i, j, v[i * n + j]);
  m.setFromTriplets(t.begin(), t.end());
  return LinearOperator(m, OperatorInfo{});
}

// 1x1 operator c.
struct Scalar {
  double c;
  Vector apply(const Vector& u) const { return c * u; }
};

}  // namespace

TEST_CASE("Taylor schemes") {
  CHECK(taylor_rk(1).alpha == std::vector<double>{1, 1});
  const auto t3 = taylor_rk(3).alpha;
  REQUIRE(t3.size() == 4);
  CHECK(t3[2] == 0.5);
  CHECK(t3[3] == doctest::Approx(1.0 / 6).epsilon(1e-16));
  const RKScheme t4 = taylor_rk(4);
  CHECK(t4.order == 4);
  CHECK(t4.stages() == 4);
  CHECK(t4.alpha[4] == doctest::Approx(1.0 / 24).epsilon(1e-16));
  CHECK_THROWS_AS(taylor_rk(0), InvalidArgument);
  CHECK_THROWS_AS(taylor_rk(7), InvalidArgument);
}

TEST_CASE("custom schemes infer their linear order") {
  CHECK(custom_rk({1, 1, 0.5, 1.0 / 6, 1.0 / 24}).order == 4);
  CHECK(custom_rk({1, 1, 0.5, 0.25}).order == 2);
  CHECK(custom_rk({1, 1, 0.5, 0.0}).stages() == 2);
  CHECK_THROWS_AS(custom_rk({0.9, 1}), InvalidArgument);
  CHECK_THROWS_AS(custom_rk({}), InvalidArgument);
}

TEST_CASE("presets") {
  CHECK(rk_preset("euler").order == 1);
  CHECK(rk_preset("heun").alpha == std::vector<double>{1, 1, 0.5});
  CHECK(rk_preset("ssprk3").order == 3);
  CHECK(rk_preset("rk4").order == 4);
  CHECK(rk_preset("taylor5").order == 5);
  CHECK_THROWS_AS(rk_preset("rk45"), InvalidArgument);
  const RKScheme two = rk_preset("rk4_two_step");
  CHECK(two.stages() == 8);
  CHECK(two.order == 4);
  const RKScheme r4 = taylor_rk(4);
  for (double z : {-2.7, -1.0, 0.3, 1.9}) {
    CHECK(two.amplification(z) == doctest::Approx(std::pow(r4.amplification(z / 2), 2)).epsilon(1e-14));
  }
}

TEST_CASE("rk_step: zero operator, scalar surrogate and the P0 upwind update") {
  const Vector u = testing::random_vector(6, 1);
  const LinearOperator zero = upwind(3, 1).scaled(0.0);
  CHECK(rk_step(taylor_rk(4), 0.3, zero, u) == u);
  for (const RKScheme& s : {taylor_rk(3), custom_rk({1, 1, 0.5, 0.25, 0.01})}) {
    const Vector one = Vector::Constant(1, 2.0);
    const double z = 0.17 * -1.3;
    double expect = 0.0;
    for (int i = s.stages(); i >= 0; --i) expect = s.alpha[i] + z * expect;
    CHECK(std::abs(rk_step(s, 0.17, Scalar{-1.3}, one)[0] - 2.0 * expect) <= 1e-15);
  }
  // u_j <- u_j - (tau/h)(u_j - u_{j-1}).
  const Mesh1D m = build_uniform_mesh(0.0, 1.0, 5);
  const LinearOperator l = assemble_d_theta(m, 0, 1.0).scaled(-1.0);
  const Vector v = testing::random_vector(5, 4);
  const double tau = 0.05, h = 0.2;
  const Vector next = rk_step(taylor_rk(1), tau, l, v);
  for (int j = 0; j < 5; ++j) CHECK(next[j] == doctest::Approx(v[j] - tau / h * (v[j] - v[(j + 4) % 5])).epsilon(1e-14));
}

TEST_CASE("rk_step equals the explicit matrix polynomial") {
  for (int t = 0; t < 5; ++t) {
    const LinearOperator l = small_random(7, 10 + t);
    const Vector u = testing::random_vector(7, 20 + t);
    for (const RKScheme& s : {taylor_rk(2), rk_preset("rk4_two_step")}) {
      const Matrix r = amplification_matrix(s, 0.1, l);
      Matrix p = Matrix::Zero(7, 7), pw = Matrix::Identity(7, 7);
      for (double a : s.alpha) {
        p += a * pw;
        pw = pw * (0.1 * l.dense());
      }
      CHECK((r - p).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((rk_step(s, 0.1, l, u) - p * u).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("linear order: |R(z) - e^z| = Theta(z^{p+1})") {
  for (const RKScheme& s : {taylor_rk(1), taylor_rk(2), taylor_rk(3), taylor_rk(4), custom_rk({1, 1, 0.5, 0.25})}) {
    std::vector<std::pair<double, double>> pts;
    for (int e = 3; e <= 10; ++e) {
      const double z = -std::ldexp(1.0, -e);
      const double err = std::abs(s.amplification(z) - std::exp(z));
      // Points below the double-precision floor carry no order information.
      if (err > 1e-13) pts.emplace_back(-z, err);
    }
    REQUIRE(pts.size() >= 3);
    CHECK(std::abs(fit_rate(pts).slope - (s.order + 1)) <= 0.2);
  }
}

TEST_CASE("evolve: final time, determinism and the step log") {
  const LinearOperator l = upwind(16);
  const Vector u0 = l2_project([](double x) { return std::sin(x); }, testing::periodic(16), 1).coefficients();
  CHECK(evolve(taylor_rk(3), l, u0, 0.0, 0.01).u == u0);
  const auto a = evolve(taylor_rk(3), l, u0, 1.0, 0.03);
  const auto b = evolve(taylor_rk(3), l, u0, 1.0, 0.03);
  CHECK(a.u == b.u);
  REQUIRE(a.log.size() == 2);
  CHECK(a.log[0].count == 33);
  CHECK(a.log[1].count == 1);
  CHECK(a.log[1].tau == doctest::Approx(0.01));
  CHECK(a.steps == 34);
  double last_t = 0.0;
  evolve<LinearOperator, Vector>(taylor_rk(1), l, u0, 1.0, 0.25, [&](int, double t, const Vector&) { last_t = t; });
  CHECK(last_t == 1.0);
  CHECK_THROWS_AS(evolve(taylor_rk(1), l, u0, 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(evolve(taylor_rk(1), l, u0, -1.0, 0.1), InvalidArgument);
}

TEST_CASE("energy non-increase: upwind, third order, tau = 0.1 h") {
  const Mesh1D m = testing::periodic(32);
  const LinearOperator l = upwind(32);
  const Vector u0 = l2_project([](double x) { return std::exp(std::sin(x)); }, m, 1).coefficients();
  const double tau = 0.1 * m.h();
  CHECK(amplification_norm(taylor_rk(3), tau, l) <= 1.0 + 1e-10);
  bool monotone = true;
  double prev = u0.norm();
  evolve<LinearOperator, Vector>(taylor_rk(3), l, u0, 1.0, tau, [&](int, double, const Vector& u) {
    monotone = monotone && u.norm() <= prev * (1 + 1e-14);
    prev = u.norm();
  });
  CHECK(monotone);
}

TEST_CASE("amplification norm of the zero operator is one") {
  CHECK(amplification_norm(taylor_rk(4), 0.5, upwind(8).scaled(0.0)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("CFL guard") {
  std::vector<std::string> warnings;
  set_warning_sink([&](const std::string& w) { warnings.push_back(w); });
  check_cfl(0.1, 5.0, CflGuard{0.9, false});
  CHECK(warnings.empty());
  check_cfl(0.2, 5.0, CflGuard{0.9, false});
  CHECK(warnings.size() == 1);
  set_warning_sink(nullptr);
  CHECK_THROWS_AS(check_cfl(0.2, 5.0, CflGuard{0.9, true}), NumericalFailure);
}

TEST_CASE("matrix exponential reference") {
  const LinearOperator l = upwind(16);
  const Vector u0 = testing::random_vector(l.dim(), 3);
  CHECK((expm_reference(l, 0.0, u0) - u0).norm() < 1e-15 * u0.norm());
  const Matrix e1 = expm_matrix(l, 0.8);
  const Matrix eh = expm_matrix(l, 0.4);
  CHECK((eh * eh - e1).norm() <= 1e-9 * e1.norm());
  const LinearOperator skew = assemble_energy_conserving(testing::periodic(16), 1);
  const Vector v0 = testing::random_vector(skew.dim(), 5);
  CHECK(expm_reference(skew, 2.0, v0).norm() == doctest::Approx(v0.norm()).epsilon(1e-10));
}

TEST_CASE("time integrator error against exp(T L) decays like tau^p") {
  const Mesh1D m = testing::periodic(32);
  const LinearOperator l = upwind(32);
  const Vector u0 = l2_project([](double x) { return std::sin(x); }, m, 1).coefficients();
  const Vector ref = expm_reference(l, 1.0, u0);
  const double tau0 = 0.5 / operator_norm(l).value;
  for (const RKScheme& s : {taylor_rk(2), taylor_rk(3)}) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 4; ++i) {
      const int n = static_cast<int>(std::ceil(1.0 / tau0)) << i;
      pts.emplace_back(1.0 / n, (evolve(s, l, u0, 1.0, 1.0 / n).u - ref).norm());
    }
    CHECK(fit_rate(pts).slope >= s.order - 0.1);
    if (s.order == 2) {
      CHECK(pts[0].second / pts[1].second == doctest::Approx(4.0).epsilon(0.15));
    }
  }
}

TEST_CASE("sigma factor") {
  CHECK(sigma_factor(0.0, 2.0) == 2.0);
  CHECK(std::abs(sigma_factor(1.0, 1.0) - (std::exp(1.0) - 1.0)) <= 1e-12);
  CHECK(std::abs(sigma_factor(1e-12, 1.0) - 1.0) <= 1e-9);
  CHECK(std::abs(sigma_factor(0.37, 2.5) - std::expm1(0.37 * 2.5) / 0.37) <= 1e-12);
  // Continuity across the series switch.
  for (double a : {0.999e-8, 1.001e-8}) CHECK(std::abs(sigma_factor(a, 1.0) - (1.0 + a / 2)) <= 1e-15);
  CHECK_THROWS_AS(sigma_factor(-1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(sigma_factor(1.0, -1.0), InvalidArgument);
}

TEST_CASE("Gronwall envelope for a shifted operator") {
  // L + 0.3 I is semibounded with mu = 0.3; with mu_h = (||R|| - 1)/tau the
  // iterates stay inside (1 + mu_h tau)^n ||u0|| <= e^{mu_h t_n} ||u0||.
  const Mesh1D m = testing::periodic(16);
  const LinearOperator base = upwind(16);
  SparseMatrix shifted = base.matrix();
  for (Eigen::Index i = 0; i < shifted.rows(); ++i) shifted.coeffRef(i, i) += 0.3;
  const LinearOperator l(shifted, base.info());
  const double tau = 0.3 / operator_norm(l).value;
  const double mu_h = (amplification_norm(taylor_rk(3), tau, l) - 1.0) / tau;
  CHECK(mu_h > 0.0);
  const Vector u0 = testing::random_vector(l.dim(), 8);
  bool inside = true;
  evolve<LinearOperator, Vector>(taylor_rk(3), l, u0, 2.0, tau, [&](int n, double t, const Vector& u) {
    const double discrete = std::pow(1 + mu_h * tau, n) * u0.norm();
    inside = inside && u.norm() <= discrete * (1 + 1e-12) && discrete <= std::exp(mu_h * t) * u0.norm() * (1 + 1e-12);
  });
  CHECK(inside);
}
