#include <doctest.h>

#include <atomic>
#include <cmath>
#include <random>

#include "rkdg/harness.hpp"
#include "support.hpp"

using namespace rkdg;
using testing::kTwoPi;

TEST_CASE("manufactured solutions satisfy their PDEs") {
  for (const std::string& pde : manufactured_catalog()) {
    for (double m : {1.0, 3.0}) {
      CAPTURE(pde);
      if (pde == "spectral" && m != 1.0) continue;
      CHECK(manufactured_solution(pde, m).max_residual() <= 1e-10);
    }
  }
  CHECK_THROWS_AS(manufactured_solution("burgers"), InvalidArgument);
}

TEST_CASE("manufactured dispersive solution solves u_t + u_xxx = 0") {
  const ManufacturedSolution s = manufactured_solution("dispersive");
  for (double x : {0.1, 2.0}) {
    for (double t : {0.0, 0.7}) CHECK(s.time_derivative(0, x, t) == doctest::Approx(-s.value(0, 3, x, t)).epsilon(1e-14));
  }
}

TEST_CASE("rate fitting") {
  std::vector<std::pair<double, double>> exact, flat, noisy;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  for (double h : {0.1, 0.05, 0.025, 0.0125, 0.00625}) {
    exact.emplace_back(h, 3.0 * h * h);
    flat.emplace_back(h, 0.2);
    noisy.emplace_back(h, 2.0 * std::pow(h, 1.5) * (1 + noise(rng)));
  }
  CHECK(std::abs(fit_rate(exact).slope - 2.0) < 1e-12);
  for (double r : fit_rate(exact).pairwise) CHECK(std::abs(r - 2.0) < 1e-12);
  CHECK(std::abs(fit_rate(flat).slope) < 1e-12);
  CHECK(std::abs(fit_rate(noisy).slope - 1.5) <= 0.1);
  CHECK_THROWS_AS(fit_rate({{0.1, 1.0}, {0.05, 0.5}}), InvalidArgument);
  CHECK_THROWS_AS(fit_rate({{0.1, 1.0}, {0.05, 0.0}, {0.025, 0.1}}), InvalidArgument);
  CHECK_THROWS_AS(fit_rate({{0.1, 1.0}, {-0.05, 1.0}, {0.025, 0.1}}), InvalidArgument);
}

TEST_CASE("tau policies and rate modes") {
  TauPolicy cfl{"cfl", 0.5};
  CHECK(cfl.resolve(0.1, 20.0) == doctest::Approx(0.025));
  TauPolicy power{"mesh_power", 0.5, 0.2, 3.0};
  CHECK(power.resolve(0.1, 20.0) == doctest::Approx(0.2e-3));
  CHECK(rate_mode_from_string("at_most") == RateMode::AtMost);
  CHECK(to_string(RateMode::Report) == "report");
  CHECK_THROWS_AS(rate_mode_from_string("roughly"), InvalidArgument);
}

TEST_CASE("spatial study: upwind advection is optimal, central flux degenerates") {
  SpatialStudy s;
  s.scheme.pde = "advection";
  s.scheme.k = 1;
  s.init = "composed";
  s.target = 1.9;
  const ConvergenceReport up = run_spatial_convergence(s);
  CHECK(up.points.size() == 4);
  CHECK(up.fit.slope >= 1.9);
  CHECK(up.pass);
  for (const auto& p : up.points) CHECK(p.mu <= 1e-10);
  s.scheme.theta = 0.5;
  s.init = "l2";
  s.target = 1.6;
  s.mode = RateMode::AtMost;
  const ConvergenceReport central = run_spatial_convergence(s);
  CHECK(central.fit.slope <= 1.6);
  CHECK(central.pass);
}

TEST_CASE("spatial study: dispersive LDG with tau = c h^3") {
  SpatialStudy s;
  s.scheme.pde = "dispersive";
  s.scheme.k = 1;
  s.scheme.theta = 0.0;
  s.scheme.thetas = {1.0};
  s.T = 0.5;
  s.cells = {8, 16, 32};
  s.init = "composed";
  s.tau = TauPolicy{"mesh_power", 0.5, 0.002, 3.0};
  const ConvergenceReport r = run_spatial_convergence(s);
  CHECK(r.fit.slope >= 1.9);
}

TEST_CASE("spatial study: ultra-weak third-order scheme with k = 3") {
  SpatialStudy s;
  s.scheme.pde = "ultraweak";
  s.scheme.k = 3;
  s.T = 0.5;
  s.cells = {8, 16, 32};
  s.target = 3.9;
  CHECK(run_spatial_convergence(s).fit.slope >= 3.9);
}

TEST_CASE("spatial study: randomized quasi-uniform meshes") {
  SpatialStudy s;
  s.scheme.pde = "heat";
  s.scheme.k = 1;
  s.scheme.mesh_ratio = 1.5;
  s.scheme.mesh_seed = 4;
  s.cells = {16, 32, 64};
  s.init = "composed";
  CHECK(run_spatial_convergence(s).fit.slope >= 1.8);
}

TEST_CASE("reports are deterministic and independent of the worker count") {
  SpatialStudy s;
  s.scheme.pde = "wave";
  s.cells = {8, 16, 32};
  const std::string a = report_csv(run_spatial_convergence(s));
  s.jobs = 3;
  const std::string b = report_csv(run_spatial_convergence(s));
  CHECK(a == b);
  CHECK(a.rfind("scale,error,rate_pairwise\n", 0) == 0);
  const nlohmann::json j = report_json(run_spatial_convergence(s));
  for (const char* key : {"study", "axis", "rate", "rate_pairwise", "target", "mode", "pass", "reliable", "points"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("temporal study on a fine high-degree mesh") {
  TemporalStudy t;
  t.scheme.pde = "advection";
  t.scheme.k = 10;
  t.scheme.wavenumber = 4;
  t.cells = 16;
  t.init = "composed";
  t.T = 2.0;
  t.rk = rk_preset("heun");
  const ConvergenceReport heun = run_temporal_convergence(t);
  CHECK(heun.reliable);
  CHECK(heun.fit.slope >= 1.8);
  t.T = 1.0;
  t.rk = rk_preset("ssprk3");
  t.target = 2.8;
  CHECK(run_temporal_convergence(t).fit.slope >= 2.8);
}

TEST_CASE("temporal study flags a dominant spatial floor") {
  TemporalStudy t;
  t.scheme.pde = "advection";
  t.scheme.k = 1;
  t.cells = 16;
  t.rk = rk_preset("ssprk3");
  t.tau = TauPolicy{"cfl", 0.5};
  const ConvergenceReport r = run_temporal_convergence(t);
  CHECK_FALSE(r.reliable);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("semidiscrete comparison") {
  CompareStudy c;
  c.temporal.scheme.pde = "advection";
  c.temporal.cells = 32;
  c.temporal.init = "composed";
  c.temporal.tau = TauPolicy{"cfl", 0.7};
  c.temporal.rk = rk_preset("heun");
  c.temporal.target = 1.9;
  c.power_cells = {16, 32, 64, 128};
  const ConvergenceReport r = compare_semidiscrete(c);
  CHECK(r.fit.slope >= 1.9);
  CHECK(r.points[0].error / r.points[1].error == doctest::Approx(4.0).epsilon(0.15));
  CHECK(r.extra["power_norms_bounded"].get<bool>());
  CHECK(r.pass);
}

TEST_CASE("semidiscrete comparison: power norms grow once k is too small") {
  // Only the first application of L_h commutes with the projection; each
  // further power adds a defect of order h^{k-j}, so ||L_h^5 Pi u0|| grows
  // like h^{-2} for k = 1.
  CompareStudy c;
  c.temporal.scheme.pde = "advection";
  c.temporal.cells = 16;
  c.temporal.init = "composed";
  c.temporal.tau = TauPolicy{"cfl", 0.7};
  c.temporal.rk = rk_preset("rk4");
  c.temporal.target = 3.9;
  c.power_cells = {16, 32, 64};
  const ConvergenceReport r = compare_semidiscrete(c);
  CHECK_FALSE(r.extra["power_norms_bounded"].get<bool>());
  CHECK_FALSE(r.pass);
  c.temporal.scheme.k = 4;
  c.temporal.scheme.wavenumber = 2;
  c.temporal.cells = 8;
  c.power_cells = {8, 16, 32, 64};
  CHECK(compare_semidiscrete(c).pass);
}

TEST_CASE("stability scans") {
  const std::vector<double> grid = {0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 0.95};
  SchemeSpec central;
  central.theta = 0.5;
  const LinearOperator lc = assemble_scheme(central, 32);
  CHECK(stability_scan(taylor_rk(1), lc, grid).empty());
  SchemeSpec aug;
  aug.pde = "augmented";
  CHECK(stability_scan(taylor_rk(1), assemble_scheme(aug, 16), grid).empty());
  for (const RKScheme& s : {taylor_rk(3), rk_preset("rk4_two_step")}) {
    const StabilityTable t = stability_scan(s, lc, grid, 2);
    CHECK_FALSE(t.empty());
    for (const auto& row : t.rows) {
      if (row.lambda <= t.stable_up_to) CHECK(row.norm <= 1 + 1e-10);
      CHECK(row.stable == (row.norm <= 1 + 1e-10));
    }
  }
  CHECK_THROWS_AS(stability_scan(taylor_rk(3), lc, {1.2}), InvalidArgument);
}

TEST_CASE("initial data and error kinds") {
  SchemeSpec s;
  const Mesh1D m = scheme_mesh(s, 16);
  CHECK(m.right() == doctest::Approx(kTwoPi));
  const Vector l2 = initial_data(s, m, "l2");
  const Vector comp = initial_data(s, m, "composed");
  CHECK(l2.size() == comp.size());
  CHECK(solution_error(s, m, l2, 0.0) < solution_error(s, m, comp, 0.0) + 1e-12);
  CHECK_THROWS_AS(initial_data(s, m, "magic"), InvalidArgument);
  SchemeSpec w;
  w.pde = "wave";
  CHECK_THROWS_AS(initial_data(w, m, "composed"), InvalidArgument);
  SchemeSpec q;
  q.pde = "advection2d";
  CHECK(assemble_scheme(q, 4).dim() == 4 * 4 * 4);
}

TEST_CASE("check tables pass at small sizes") {
  for (int k : {1, 2}) {
    for (const auto& row : check_operators(k, 16, 3)) {
      CAPTURE(row.name);
      CHECK(row.pass);
    }
    for (const auto& row : check_projections(k, 16, 3)) {
      CAPTURE(row.name);
      CHECK(row.pass);
    }
  }
  CHECK(checks_json(check_operators(1, 8, 1)) == checks_json(check_operators(1, 8, 1)));
}

TEST_CASE("parallel_for runs every index and rethrows the lowest failure") {
  std::atomic<int> sum{0};
  parallel_for(100, 4, [&](int i) { sum += i; });
  CHECK(sum == 4950);
  try {
    parallel_for(10, 3, [](int i) {
      if (i == 7 || i == 4) throw InvalidArgument("fail " + std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()) == "fail 4");
  }
}
