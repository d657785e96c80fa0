#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rkdg/linear_operator.hpp"
#include "rkdg/mesh.hpp"
#include "rkdg/systems.hpp"
#include "rkdg/time_integration.hpp"

namespace rkdg {

/// Closed-form exact solution of one PDE in the catalog.
struct ManufacturedSolution {
  std::string pde;
  double wavenumber = 1.0;
  int dimension = 1;
  int components = 1;
  /// d-th x-derivative of component c at (x, t); 1D only.
  std::function<double(int c, int d, double x, double t)> value;
  /// Time derivative of component c at (x, t); 1D only.
  std::function<double(int c, double x, double t)> time_derivative;
  /// 2D fields: u(x1, x2, t) and d_t u.
  std::function<double(double, double, double)> value2d;
  std::function<double(double, double, double)> time_derivative2d;
  std::function<double(double, double, double)> divergence2d;  ///< u_{x1} + u_{x2}

  /// d_t u - L u for component c at a point (x2 unused in 1D).
  double residual(int c, double x1, double x2, double t) const;
  /// max |residual| over `samples` random (x, t) in [0, 2 pi]^d x [0, 1].
  double max_residual(int samples = 50, std::uint64_t seed = 7) const;
};

/// PDE tags: advection, heat, dispersive, ultraweak, wave, augmented,
/// central, advection2d, spectral. Wavenumber m rescales the profiles, e.g.
/// sin(m(x - t)) for advection and e^{-m^2 t} sin(mx) for heat.
ManufacturedSolution manufactured_solution(const std::string& pde, double wavenumber = 1.0);
std::vector<std::string> manufactured_catalog();

/// Scheme selection shared by every study.
struct SchemeSpec {
  std::string pde = "advection";
  int k = 1;
  double theta = 1.0;            ///< advection theta_0, dispersive theta_0, 2D theta_1
  double theta2 = 1.0;           ///< 2D theta_2
  std::vector<double> thetas;    ///< LDG theta_1..theta_gamma
  WaveFlux flux;                 ///< wave system
  bool flux_perturbed = false;   ///< use perturbed_wave_flux(h, flux_delta, flux_c)
  double flux_delta = 1.0;
  double flux_c = 1.0;
  double central_lambda = 0.1;   ///< tau_max = central_lambda * h
  double wavenumber = 1.0;       ///< of the manufactured solution
  double mesh_ratio = 1.0;       ///< > 1 selects a randomized quasi-uniform mesh
  std::uint64_t mesh_seed = 1;
};

/// Equation order q of the scheme's PDE.
int scheme_order(const SchemeSpec& spec);
Mesh1D scheme_mesh(const SchemeSpec& spec, int cells);
LinearOperator assemble_scheme(const SchemeSpec& spec, const Mesh1D& mesh);
LinearOperator assemble_scheme(const SchemeSpec& spec, int cells);

/// Initial data Pi u(0) for the scheme: init is "l2", "pi_theta",
/// "composed" (1D scalar) or "pi_tensor" (2D).
Vector initial_data(const SchemeSpec& spec, const Mesh1D& mesh, const std::string& init);
/// Error of the stacked DG vector against the exact solution at time t;
/// component_error receives the first-component error.
double solution_error(const SchemeSpec& spec, const Mesh1D& mesh, const Vector& coeffs, double t,
                      double* component_error = nullptr);

/// tau = lambda / ||L_h|| ("cfl") or tau = c h^power ("mesh_power").
struct TauPolicy {
  std::string kind = "cfl";
  double lambda = 0.5;
  double c = 0.1;
  double power = 1.0;
  double resolve(double h, double op_norm) const;
};

enum class RateMode { AtLeast, AtMost, Report };
std::string to_string(RateMode mode);
RateMode rate_mode_from_string(const std::string& s);

struct RateFit {
  double slope = 0.0;
  std::vector<double> pairwise;
};

/// Least-squares slope of log(error) against log(scale) plus successive
/// pairwise rates. Requires >= 3 points with positive values.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

struct ConvergencePoint {
  double scale = 0.0;
  double error = 0.0;
  double component_error = 0.0;
  double tau = 0.0;
  int steps = 0;
  double op_norm = 0.0;
  double mu = 0.0;
};

struct ConvergenceReport {
  std::string study;
  std::string axis;  ///< "h" or "tau"
  std::vector<ConvergencePoint> points;
  RateFit fit;
  double target = 0.0;
  RateMode mode = RateMode::AtLeast;
  bool pass = false;
  bool reliable = true;
  std::vector<std::string> notes;
  nlohmann::json extra = nlohmann::json::object();
};

/// CSV with header scale,error,rate_pairwise.
std::string report_csv(const ConvergenceReport& r);
nlohmann::json report_json(const ConvergenceReport& r);

struct SpatialStudy {
  SchemeSpec scheme;
  RKScheme rk = rk_preset("ssprk3");
  double T = 1.0;
  std::vector<int> cells = {16, 32, 64, 128};
  std::string init = "l2";
  TauPolicy tau;
  CflGuard guard;
  double target = 1.9;
  RateMode mode = RateMode::AtLeast;
  int jobs = 1;
};

/// Errors at T over a mesh ladder (levels may run concurrently). Every
/// level first passes the semiboundedness gate mu <= 1e-10 (n <= 4000).
ConvergenceReport run_spatial_convergence(const SpatialStudy& study);

struct TemporalStudy {
  SchemeSpec scheme;
  RKScheme rk = rk_preset("heun");
  double T = 1.0;
  int cells = 64;
  std::string init = "l2";
  TauPolicy tau{"cfl", 0.9};                            ///< base step, scaled by factors
  std::vector<double> factors = {1.0, 0.5, 0.25, 0.125};
  CflGuard guard;
  double target = 1.8;
  RateMode mode = RateMode::AtLeast;
  /// true: fit ||u^n - exp(T L_h) u^0|| (semidiscrete comparison);
  /// false: fit the error against the exact solution minus the spatial floor.
  bool semidiscrete = false;
  int jobs = 1;
};

ConvergenceReport run_temporal_convergence(const TemporalStudy& study);

struct CompareStudy {
  TemporalStudy temporal;          ///< run with semidiscrete = true
  std::vector<int> power_cells;    ///< ladder for the ||L_h^{p+1} Pi u0|| check (empty: skip)
  double power_factor = 2.0;      ///< max level norm / coarsest level norm
};

/// Semidiscrete comparison plus the boundedness of ||L_h^{p+1} Pi u(0)||
/// across refinements.
ConvergenceReport compare_semidiscrete(const CompareStudy& study);

struct StabilityRow {
  double lambda = 0.0;
  double tau = 0.0;
  double norm = 0.0;
  bool stable = false;
};

struct StabilityTable {
  std::string scheme;
  double op_norm = 0.0;
  std::vector<StabilityRow> rows;
  double largest_stable = 0.0;   ///< largest stable lambda (0 if none)
  double stable_up_to = 0.0;     ///< every grid lambda <= this is stable
  bool empty() const { return largest_stable == 0.0; }
};

/// For each lambda: tau = lambda / ||L||, ||R_s(tau L)||, stable iff
/// <= 1 + 1e-10.
StabilityTable stability_scan(const RKScheme& scheme, const LinearOperator& op, const std::vector<double>& lambdas,
                              int jobs = 1);
nlohmann::json stability_json(const StabilityTable& t);

/// Structural operator checks at degree k and N cells: antisymmetry,
/// quadratic-form identity, kernel, skewness and mu for the catalog.
struct CheckRow {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};
std::vector<CheckRow> check_operators(int k, int cells, std::uint64_t seed);
/// Projection checks: inverse identities, mean-zero range, commuting defects.
std::vector<CheckRow> check_projections(int k, int cells, std::uint64_t seed);
nlohmann::json checks_json(const std::vector<CheckRow>& rows);

/// Runs f(i) for i in [0, n) on up to `jobs` threads; exceptions are
/// rethrown (lowest index first) after all workers finish.
void parallel_for(int n, int jobs, const std::function<void(int)>& f);

}  // namespace rkdg
