#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rkdg/diagnostics.hpp"
#include "rkdg/dg_ops1d.hpp"
#include "rkdg/legendre.hpp"
#include "rkdg/quadrature.hpp"
#include "support.hpp"

using namespace rkdg;
using testing::kTwoPi;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Vector constant(const Mesh1D& m, int k, double c = 1.0) {
  return l2_project([c](double) { return c; }, m, k).coefficients();
}

}  // namespace

TEST_CASE("P0 upwind stencil is the periodic backward difference") {
  const Mesh1D m = build_uniform_mesh(0.0, 1.0, 4);
  const LinearOperator d = assemble_d_theta(m, 0, 1.0);
  const double s = std::sqrt(0.25);
  Vector w(4);
  w << 1 * s, 2 * s, 3 * s, 4 * s;
  const Vector dw = d.apply(w) / s;
  const double expect[] = {-12.0, 4.0, 4.0, 4.0};
  for (int j = 0; j < 4; ++j) CHECK(dw[j] == doctest::Approx(expect[j]).epsilon(1e-13));
}

TEST_CASE("D_theta satisfies its weak definition on basis pairs") {
  // Independent oracle: evaluate -<w, v_x> - sum w^ [v] pointwise for a
  // random w and each basis function v.
  const Mesh1D m = Mesh1D::quasi_uniform(0.0, 1.0, 5, 1.6, 2);
  const int k = 2;
  const double theta = 0.3;
  const LinearOperator d = assemble_d_theta(m, k, theta);
  const DGFunction w(m, k, testing::random_vector(15, 1));
  const Vector dw = d.apply(w.coefficients());
  const auto q = gauss_legendre(k + 3);
  for (int j = 0; j < m.cells(); ++j) {
    for (int a = 0; a <= k; ++a) {
      double vol = 0.0;
      for (int i = 0; i < q.size(); ++i) {
        vol += 0.5 * m.width(j) * q.weights[i] * w.cell_value(j, q.points[i]) *
               cell_basis(k, m.width(j), q.points[i], 1)[a];
      }
      // v is supported on cell j: [v] = v^+ - v^- is -v(right end) at
      // x_{j+1/2} and +v(left end) at x_{j-1/2}.
      const int left_face = (j + m.cells() - 1) % m.cells();
      const double right_end = cell_basis(k, m.width(j), 1.0)[a];
      const double left_end = cell_basis(k, m.width(j), -1.0)[a];
      const double flux_r = theta * trace_left(w, j) + (1 - theta) * trace_right(w, j);
      const double flux_l = theta * trace_left(w, left_face) + (1 - theta) * trace_right(w, left_face);
      const double expect = -vol + flux_r * right_end - flux_l * left_end;
      CHECK(dw[j * (k + 1) + a] == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("antisymmetry A_theta = -A_{1-theta}^T") {
  for (int k = 0; k <= 3; ++k) {
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
      for (int n : {4, 17, 64}) {
        const Mesh1D m = testing::periodic(n);
        const Matrix a = assemble_d_theta(m, k, t).dense();
        const Matrix b = assemble_d_theta(m, k, 1 - t).dense();
        CHECK(max_abs(a + b.transpose()) <= 1e-12);
      }
    }
  }
}

TEST_CASE("constants are in the kernel of every assembled operator") {
  const Mesh1D m = testing::periodic(12);
  for (int k = 0; k <= 3; ++k) {
    const Vector c = constant(m, k, 1.7);
    for (double t : {0.0, 0.3, 0.5, 1.0}) CHECK(assemble_d_theta(m, k, t).apply(c).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(assemble_high_order_lh(m, k, {2, 1.0, 0.0, {0.7}}).apply(c).norm() < 1e-10);
    CHECK(assemble_high_order_lh(m, k, {3, -1.0, 0.0, {1.0}}).apply(c).norm() < 1e-9);
  }
  for (int k = 1; k <= 3; ++k) {
    const Vector c = constant(m, k, 1.7);
    const LinearOperator uw = assemble_ultraweak3(m, k);
    CHECK(uw.apply(c).norm() < 1e-9);
  }
}

TEST_CASE("quadratic form identity") {
  const Mesh1D m = Mesh1D::quasi_uniform(0.0, kTwoPi, 20, 1.5, 8);
  for (int k = 0; k <= 3; ++k) {
    for (double t : {0.0, 0.25, 0.5, 0.8, 1.0}) {
      const LinearOperator d = assemble_d_theta(m, k, t);
      for (int trial = 0; trial < 100; ++trial) {
        const DGFunction v(m, k, testing::random_vector(20 * (k + 1), 1000 * k + trial));
        CHECK(std::abs(quadratic_form_defect(d, v)) <= 1e-11 * v.coefficients().squaredNorm());
      }
    }
  }
  const Mesh1D u = testing::periodic(8);
  const DGFunction v(u, 1, testing::random_vector(16, 3));
  const Vector dv = assemble_d_theta(u, 1, 0.5).apply(v.coefficients());
  CHECK(std::abs(dv.dot(v.coefficients())) < 1e-11 * v.coefficients().squaredNorm());
  const DGFunction c(u, 1, constant(u, 1));
  CHECK(std::abs(quadratic_form_defect(assemble_d_theta(u, 1, 1.0), c)) < 1e-13);
}

TEST_CASE("single unit jump: <D_1 v, v> = [v]^2 / 2") {
  // v = 1 on the first half of the cells, 0 elsewhere: two unit jumps,
  // so the quadratic form is (1 - 1/2)(1 + 1) = 1.
  const Mesh1D m = build_uniform_mesh(0.0, 1.0, 4);
  DGFunction v(m, 1);
  v.coeff(0, 0) = std::sqrt(0.25);
  v.coeff(1, 0) = std::sqrt(0.25);
  const Vector dv = assemble_d_theta(m, 1, 1.0).apply(v.coefficients());
  CHECK(dv.dot(v.coefficients()) == doctest::Approx(0.5 * 2.0).epsilon(1e-13));
}

TEST_CASE("LDG compositions match explicit factor products") {
  const Mesh1D m = testing::periodic(10);
  const int k = 2;
  const Matrix d1 = assemble_d_theta(m, k, 1.0).dense();
  const Matrix d0 = assemble_d_theta(m, k, 0.0).dense();
  const Matrix d3 = assemble_d_theta(m, k, 0.3).dense();
  const Matrix d7 = assemble_d_theta(m, k, 0.7).dense();
  // q = 1, beta = -1: upwind advection.
  CHECK(max_abs(assemble_high_order_lh(m, k, {1, -1.0, 1.0, {}}).dense() + d1) < 1e-12);
  // q = 2, beta = 1: D_{1-t} D_t, the heat operator.
  CHECK(max_abs(assemble_high_order_lh(m, k, {2, 1.0, 0.0, {0.3}}).dense() - d7 * d3) < 1e-11 * max_abs(d7 * d3));
  // q = 3, beta = -1, theta0 = 0: -D_{1-t} D_0 D_t for u_t + u_xxx = 0.
  const Matrix l3 = assemble_high_order_lh(m, k, {3, -1.0, 0.0, {0.3}}).dense();
  const Matrix p3 = d7 * d0 * d3;
  CHECK(max_abs(l3 + p3) < 1e-11 * max_abs(p3));
  // K^T realized as (-1)^g D_{1-t_g}..D_{1-t_1}.
  const Matrix kt = assemble_k_transpose(m, k, {0.3, 1.0}).dense();
  const Matrix k_mat = d3 * d1;
  CHECK(max_abs(kt - k_mat.transpose()) < 1e-11 * max_abs(k_mat));
}

TEST_CASE("stability preconditions of high-order compositions") {
  const Mesh1D m = testing::periodic(8);
  CHECK_THROWS_AS(assemble_high_order_lh(m, 1, {2, -1.0, 0.0, {1.0}}), InvalidArgument);
  CHECK_THROWS_AS(assemble_high_order_lh(m, 1, {1, -1.0, 0.2, {}}), InvalidArgument);
  CHECK_THROWS_AS(assemble_high_order_lh(m, 1, {3, -1.0, 1.0, {1.0}}), InvalidArgument);
  CHECK_THROWS_AS(assemble_high_order_lh(m, 1, {4, -1.0, 0.0, {1.0}}), InvalidArgument);  // wrong list length
  CHECK_NOTHROW(assemble_high_order_lh(m, 1, {4, -1.0, 0.0, {1.0, 0.0}}));
}

TEST_CASE("semiboundedness of the catalog") {
  const Mesh1D m = testing::periodic(16);
  CHECK(semiboundedness_mu(assemble_high_order_lh(m, 1, {1, -1.0, 1.0, {}})).mu <= 1e-11);
  const Semiboundedness c = semiboundedness_mu(assemble_d_theta(m, 1, 0.5).scaled(-1.0));
  CHECK(std::max(std::abs(c.max_eigenvalue), std::abs(c.min_eigenvalue)) <= 1e-11);
  CHECK(semiboundedness_mu(assemble_high_order_lh(m, 1, {2, 1.0, 0.0, {1.0}})).mu <= 1e-10);
  CHECK(semiboundedness_mu(assemble_high_order_lh(m, 2, {3, -1.0, 0.0, {1.0}})).mu <= 1e-10);
  CHECK(semiboundedness_mu(assemble_ultraweak3(m, 3)).max_eigenvalue <= 1e-10);
}

TEST_CASE("<L v, v> <= mu ||v||^2 for random v") {
  const Mesh1D m = testing::periodic(12);
  const LinearOperator l = assemble_high_order_lh(m, 1, {2, 1.0, 0.0, {0.6}});
  const double mu = semiboundedness_mu(l).mu;
  for (int t = 0; t < 100; ++t) {
    const Vector v = testing::random_vector(l.dim(), 500 + t);
    CHECK(l.apply(v).dot(v) <= mu * v.squaredNorm() + 1e-12 * v.squaredNorm());
  }
}

TEST_CASE("ultra-weak operator: structure and low-degree warning") {
  const Mesh1D m = testing::periodic(16);
  std::vector<std::string> warnings;
  set_warning_sink([&](const std::string& w) { warnings.push_back(w); });
  const LinearOperator low = assemble_ultraweak3(m, 1);
  set_warning_sink(nullptr);
  CHECK(warnings.size() == 1);
  CHECK(low.bandwidth_cells() <= 2);
  const LinearOperator uw = assemble_ultraweak3(m, 3);
  CHECK(uw.bandwidth_cells() <= 2);
  const Vector a = testing::random_vector(uw.dim(), 1), b = testing::random_vector(uw.dim(), 2);
  CHECK((uw.apply(2.5 * a + b) - 2.5 * uw.apply(a) - uw.apply(b)).cwiseAbs().maxCoeff() < 1e-12 * uw.apply(a).cwiseAbs().maxCoeff());
  CHECK_THROWS_AS(assemble_ultraweak3(m, 0), InvalidArgument);
}

TEST_CASE("ultra-weak operator: consistency with -w''' for smooth w") {
  // L_h Pi_0 w - Pi_0 (-w''') is O(h^{k-2}) in the strong norm: three
  // derivatives of a projection error of order k+1.
  auto defect = [](int n) {
    const Mesh1D m = testing::periodic(n);
    const LinearOperator uw = assemble_ultraweak3(m, 3);
    const Vector lw = uw.apply(l2_project([](double x) { return std::sin(x); }, m, 3).coefficients());
    const Vector ref = l2_project([](double x) { return std::cos(x); }, m, 3).coefficients();
    return (lw - ref).norm();
  };
  CHECK(std::log2(defect(16) / defect(32)) >= 0.9);
  CHECK(std::log2(defect(32) / defect(64)) >= 0.9);
}

TEST_CASE("operator norms and their scaling") {
  const Mesh1D m = testing::periodic(8);
  const LinearOperator zero = assemble_d_theta(m, 1, 1.0).scaled(0.0);
  CHECK(operator_norm(zero).value == 0.0);
  // Dense SVD oracle for the power iteration.
  const LinearOperator d = assemble_d_theta(testing::periodic(32), 1, 1.0);
  Eigen::JacobiSVD<Matrix> svd(d.dense());
  CHECK(operator_norm(d).value == doctest::Approx(svd.singularValues()[0]).epsilon(1e-6));
  NormOptions power;
  power.method = NormMethod::PowerIteration;
  CHECK(operator_norm(d, power).value == doctest::Approx(svd.singularValues()[0]).epsilon(1e-6));
  const double r1 = operator_norm(assemble_d_theta(testing::periodic(64), 1, 1.0)).value / svd.singularValues()[0];
  CHECK(std::abs(r1 - 2.0) <= 0.1);
  const auto disp = [](int n) { return operator_norm(assemble_high_order_lh(testing::periodic(n), 1, {3, -1.0, 0.0, {1.0}})).value; };
  CHECK(std::abs(disp(64) / disp(32) - 8.0) <= 0.5);
}

TEST_CASE("matrix market dump") {
  const LinearOperator d = assemble_d_theta(build_uniform_mesh(0.0, 1.0, 4), 0, 1.0);
  std::ostringstream os;
  dump_matrix_market(d, os);
  const std::string s = os.str();
  CHECK(s.rfind("%%MatrixMarket matrix coordinate real general", 0) == 0);
  CHECK(s.find("4 4 8") != std::string::npos);
  CHECK(s.find("\n1 1 4\n") != std::string::npos);
  CHECK(s.find("\n1 4 -4\n") != std::string::npos);
}

TEST_CASE("skewness defect and linearity") {
  const LinearOperator d = assemble_d_theta(testing::periodic(16), 2, 0.5);
  CHECK(skewness_defect(d) < 1e-12);
  CHECK(skewness_defect(assemble_d_theta(testing::periodic(16), 2, 1.0)) > 0.1);
}
