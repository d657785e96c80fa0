#include <doctest.h>

#include <cmath>

#include "rkdg/dg_function.hpp"
#include "rkdg/legendre.hpp"
#include "rkdg/mesh.hpp"
#include "rkdg/quadrature.hpp"
#include "support.hpp"

using namespace rkdg;
using testing::kTwoPi;

TEST_CASE("uniform mesh boundaries and width") {
  const Mesh1D m = build_uniform_mesh(0.0, 1.0, 4);
  const std::vector<double> expect = {0.0, 0.25, 0.5, 0.75, 1.0};
  REQUIRE(m.boundaries().size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(m.boundary(static_cast<int>(i)) == doctest::Approx(expect[i]).epsilon(1e-15));
  CHECK(build_uniform_mesh(0.0, kTwoPi, 16).h() == doctest::Approx(M_PI / 8).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(build_uniform_mesh(1.0, 0.0, 4), doctest::Contains("empty domain"), InvalidArgument);
  CHECK_THROWS_AS(build_uniform_mesh(0.0, 1.0, 1), InvalidArgument);
}

TEST_CASE("mesh validation and quasi-uniform meshes") {
  CHECK_THROWS_AS(Mesh1D({0.0, 0.5, 0.5, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(Mesh1D({0.0, 0.1, 1.0}), InvalidArgument);  // ratio 9 > 2
  const Mesh1D q = Mesh1D::quasi_uniform(0.0, kTwoPi, 32, 1.8, 3);
  CHECK(q.quasi_uniformity() <= 1.8 + 1e-12);
  CHECK(q.left() == 0.0);
  CHECK(q.right() == doctest::Approx(kTwoPi));
  const Mesh1D u = build_uniform_mesh(0.0, 1.0, 4);
  CHECK(u.locate(0.25) == 1);
  CHECK(u.locate(1.1) == 0);
  CHECK(u.cell(-1) == 3);
  const Mesh1D d = u.dual();
  CHECK(d.cells() == 4);
  CHECK(d.boundary(0) == doctest::Approx(0.125));
}

TEST_CASE("gauss-legendre rules") {
  const auto r1 = gauss_legendre(1);
  CHECK(r1.points[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0));
  const auto r2 = gauss_legendre(2);
  CHECK(std::abs(std::abs(r2.points[0]) - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(r2.weights[0] == doctest::Approx(1.0));
  CHECK(r2.weights[1] == doctest::Approx(1.0));
  // Symbolic oracle: int_{-1}^{1} xi^8 = 2/9.
  const auto r5 = gauss_legendre(5);
  double s = 0.0;
  for (int i = 0; i < r5.size(); ++i) s += r5.weights[i] * std::pow(r5.points[i], 8);
  CHECK(std::abs(s - 2.0 / 9.0) < 1e-14);
  CHECK_THROWS_AS(gauss_legendre(0), InvalidArgument);
  CHECK_THROWS_AS(gauss_legendre(33), InvalidArgument);
}

TEST_CASE("quadrature exactness and weight sum for every supported size") {
  for (int n = 1; n <= 32; ++n) {
    const auto r = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : r.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(std::abs(wsum - 2.0) < 1e-13);
    for (int p = 0; p <= 2 * n - 1; p += (n > 8 ? 3 : 1)) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.points[i], p);
      const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
      CHECK(std::abs(s - exact) <= 1e-13 * std::max(1.0, exact));
    }
  }
}

TEST_CASE("orthonormal basis: quadrature mass matrix is the identity for k <= 6") {
  for (int k = 0; k <= 6; ++k) {
    const double h = 0.37;
    const auto q = gauss_legendre(k + 2);
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (int i = 0; i < q.size(); ++i) {
      const auto phi = cell_basis(k, h, q.points[i]);
      for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b) mass(a, b) += 0.5 * h * q.weights[i] * phi[a] * phi[b];
    }
    CHECK((mass - Eigen::MatrixXd::Identity(k + 1, k + 1)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("basis derivatives agree with finite differences") {
  const int k = 4;
  const double h = 0.5, xi = 0.3, e = 1e-5;
  const auto d1 = cell_basis(k, h, xi, 1);
  const auto p = cell_basis(k, h, xi + e);
  const auto m = cell_basis(k, h, xi - e);
  for (int i = 0; i <= k; ++i) CHECK(d1[i] == doctest::Approx((p[i] - m[i]) / (2 * e * h / 2)).epsilon(1e-6));
}

TEST_CASE("l2_project reproduces polynomials and constants") {
  const Mesh1D m = testing::periodic(8);
  const auto poly = [](double x) { return 1.0 - 0.5 * x + 0.25 * x * x; };
  const DGFunction p = l2_project(poly, m, 2);
  CHECK(l2_error(p, poly) < 1e-12);
  const DGFunction one = l2_project([](double) { return 1.0; }, m, 3);
  for (int j = 0; j < m.cells(); ++j) {
    CHECK(one.coeff(j, 0) == doctest::Approx(std::sqrt(m.width(j))));
    for (int mm = 1; mm <= 3; ++mm) CHECK(std::abs(one.coeff(j, mm)) < 1e-14);
  }
}

TEST_CASE("l2_project converges at rate k+1 for sin x") {
  const double rate = testing::mesh_rate({16, 32, 64, 128}, [](int n) {
    const Mesh1D m = testing::periodic(n);
    return l2_error(l2_project([](double x) { return std::sin(x); }, m, 1), [](double x) { return std::sin(x); });
  });
  CHECK(rate >= 1.9);
}

TEST_CASE("l2_project is idempotent on V_h") {
  const Mesh1D m = testing::periodic(10);
  const DGFunction u(m, 3, testing::random_vector(40, 11));
  const DGFunction again = l2_project([&](double x) { return evaluate(u, x); }, m, 3);
  CHECK((again.coefficients() - u.coefficients()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("l2_project is the best approximation") {
  const Mesh1D m = testing::periodic(6);
  const auto f = [](double x) { return std::exp(std::sin(x)) + 0.3 * std::cos(3 * x); };
  const double best = l2_error(l2_project(f, m, 2), f);
  for (int t = 0; t < 100; ++t) {
    const DGFunction v(m, 2, l2_project(f, m, 2).coefficients() + 0.1 * testing::random_vector(18, 100 + t));
    CHECK(best <= l2_error(v, f) + 1e-10);
  }
}

TEST_CASE("Parseval: the L2 norm is the Euclidean coefficient norm") {
  const Mesh1D m = Mesh1D::quasi_uniform(0.0, 1.0, 9, 1.5, 4);
  for (int k = 0; k <= 4; ++k) {
    const DGFunction u(m, k, testing::random_vector(9 * (k + 1), 20 + k));
    CHECK(std::abs(l2_norm(u) * l2_norm(u) - u.coefficients().squaredNorm()) < 1e-12 * u.coefficients().squaredNorm());
  }
}

TEST_CASE("evaluation, traces, jumps and averages") {
  const Mesh1D m = build_uniform_mesh(0.0, 1.0, 4);
  const DGFunction c = l2_project([](double) { return 2.5; }, m, 2);
  for (double x : {0.0, 0.1, 0.25, 0.6, 0.99}) CHECK(evaluate(c, x) == doctest::Approx(2.5));
  DGFunction step(m, 0);
  for (int j = 0; j < 4; ++j) step.coeff(j, 0) = (j + 1.0) * std::sqrt(m.width(j));
  CHECK(evaluate(step, 0.25, Side::Left) == doctest::Approx(1.0));
  CHECK(evaluate(step, 0.25, Side::Right) == doctest::Approx(2.0));
  CHECK(trace_left(step, 0) == doctest::Approx(1.0));
  CHECK(trace_right(step, 0) == doctest::Approx(2.0));
  // Periodic wrap: the right end of the domain.
  CHECK(trace_left(step, 3) == doctest::Approx(4.0));
  CHECK(trace_right(step, 3) == doctest::Approx(1.0));
  const DGFunction r(m, 3, testing::random_vector(16, 5));
  for (int i = 0; i < 4; ++i) {
    CHECK(std::isfinite(trace_left(r, i)));
    CHECK(jump(r, i) + 2.0 * trace_left(r, i) == doctest::Approx(2.0 * average(r, i)));
  }
}

TEST_CASE("l2_error values and invariance") {
  const Mesh1D m = testing::periodic(16);
  const DGFunction zero(m, 2);
  // Oracle: int_0^{2 pi} sin^2 = pi.
  CHECK(std::abs(l2_error(zero, [](double x) { return std::sin(x); }) - std::sqrt(M_PI)) < 1e-10);
  const DGFunction u(m, 2, testing::random_vector(48, 9));
  const DGFunction g(m, 2, testing::random_vector(48, 10));
  const auto f = [](double x) { return std::cos(2 * x); };
  const DGFunction sum(m, 2, u.coefficients() + g.coefficients());
  CHECK(l2_error(u, f) == doctest::Approx(l2_error(sum, [&](double x) { return f(x) + evaluate(g, x); })).epsilon(1e-10));
}
