#include "rkdg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "rkdg/dg_ops1d.hpp"
#include "rkdg/diagnostics.hpp"
#include "rkdg/error.hpp"
#include "rkdg/multidim.hpp"
#include "rkdg/projections.hpp"

namespace rkdg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMuGate = 1e-10;
constexpr Eigen::Index kMuGateLimit = 4000;

double sin_derivative(int d, double s) {
  switch (((d % 4) + 4) % 4) {
    case 0: return std::sin(s);
    case 1: return std::cos(s);
    case 2: return -std::sin(s);
    default: return -std::cos(s);
  }
}

// g = 1/(2 + cos s) and h = 1/(2 + sin s) with first derivatives, the
// characteristic profiles of the spectral test system.
double g_profile(int d, double s) {
  const double c = 2.0 + std::cos(s);
  return d == 0 ? 1.0 / c : std::sin(s) / (c * c);
}
double h_profile(int d, double s) {
  const double c = 2.0 + std::sin(s);
  return d == 0 ? 1.0 / c : -std::cos(s) / (c * c);
}

bool is_system(const std::string& pde) { return pde == "wave" || pde == "augmented" || pde == "central"; }

}  // namespace

double ManufacturedSolution::residual(int c, double x1, double x2, double t) const {
  if (dimension == 2) return time_derivative2d(x1, x2, t) + divergence2d(x1, x2, t);
  const double dt = time_derivative(c, x1, t);
  if (pde == "advection" || pde == "central") return dt + value(c, 1, x1, t);
  if (pde == "heat") return dt - value(c, 2, x1, t);
  if (pde == "dispersive" || pde == "ultraweak") return dt + value(c, 3, x1, t);
  if (pde == "wave" || pde == "spectral") return dt + value(1 - c, 1, x1, t);
  if (pde == "augmented") return dt + (c == 0 ? 1.0 : -1.0) * value(c, 1, x1, t);
  throw InvalidArgument("no residual rule for pde '" + pde + "'");
}

double ManufacturedSolution::max_residual(int samples, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> x(0.0, kTwoPi);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double a = x(rng);
    const double b = x(rng);
    const double s = t(rng);
    for (int c = 0; c < components; ++c) worst = std::max(worst, std::abs(residual(c, a, b, s)));
  }
  return worst;
}

std::vector<std::string> manufactured_catalog() {
  return {"advection", "heat", "dispersive", "ultraweak", "wave", "augmented", "central", "advection2d", "spectral"};
}

ManufacturedSolution manufactured_solution(const std::string& pde, double m) {
  if (!(m > 0.0)) throw InvalidArgument("manufactured solution wavenumber must be positive");
  ManufacturedSolution sol;
  sol.pde = pde;
  sol.wavenumber = m;
  // d-th derivative of sin(m s) with respect to s.
  auto wave = [m](int d, double s) { return std::pow(m, d) * sin_derivative(d, m * s); };
  if (pde == "advection" || pde == "central") {
    sol.components = pde == "central" ? 2 : 1;
    sol.value = [wave](int, int d, double x, double t) { return wave(d, x - t); };
    sol.time_derivative = [wave](int, double x, double t) { return -wave(1, x - t); };
  } else if (pde == "heat") {
    sol.value = [wave, m](int, int d, double x, double t) { return std::exp(-m * m * t) * wave(d, x); };
    sol.time_derivative = [wave, m](int, double x, double t) { return -m * m * std::exp(-m * m * t) * wave(0, x); };
  } else if (pde == "dispersive" || pde == "ultraweak") {
    // u_t + u_xxx = 0
    sol.value = [wave, m](int, int d, double x, double t) { return wave(d, x + m * m * t); };
    sol.time_derivative = [wave, m](int, double x, double t) { return m * m * wave(1, x + m * m * t); };
  } else if (pde == "wave") {
    sol.components = 2;
    sol.value = [wave](int, int d, double x, double t) { return wave(d, x - t); };
    sol.time_derivative = [wave](int, double x, double t) { return -wave(1, x - t); };
  } else if (pde == "augmented") {
    sol.components = 2;
    sol.value = [wave](int c, int d, double x, double t) { return c == 0 ? wave(d, x - t) : 0.0; };
    sol.time_derivative = [wave](int c, double x, double t) { return c == 0 ? -wave(1, x - t) : 0.0; };
  } else if (pde == "advection2d") {
    sol.dimension = 2;
    sol.value2d = [m](double x, double y, double t) { return std::sin(m * (x + y - 2.0 * t)); };
    sol.time_derivative2d = [m](double x, double y, double t) { return -2.0 * m * std::cos(m * (x + y - 2.0 * t)); };
    sol.divergence2d = [m](double x, double y, double t) { return 2.0 * m * std::cos(m * (x + y - 2.0 * t)); };
  } else if (pde == "spectral") {
    if (m != 1.0) throw InvalidArgument("the spectral solution has no wavenumber parameter");
    // u + phi = g(x - t), u - phi = h(x + t) for u_t + phi_x = 0, phi_t + u_x = 0.
    sol.components = 2;
    sol.value = [](int c, int d, double x, double t) {
      if (d > 1) throw InvalidArgument("spectral solution provides derivatives up to order 1");
      const double g = g_profile(d, x - t);
      const double h = h_profile(d, x + t);
      return c == 0 ? 0.5 * (g + h) : 0.5 * (g - h);
    };
    sol.time_derivative = [](int c, double x, double t) {
      const double g = -g_profile(1, x - t);
      const double h = h_profile(1, x + t);
      return c == 0 ? 0.5 * (g + h) : 0.5 * (g - h);
    };
  } else {
    throw InvalidArgument("unknown pde '" + pde + "'");
  }
  return sol;
}

int scheme_order(const SchemeSpec& spec) {
  if (spec.pde == "heat") return 2;
  if (spec.pde == "dispersive" || spec.pde == "ultraweak") return 3;
  if (spec.pde == "advection" || is_system(spec.pde) || spec.pde == "advection2d") return 1;
  throw InvalidArgument("unknown DG scheme pde '" + spec.pde + "'");
}

Mesh1D scheme_mesh(const SchemeSpec& spec, int cells) {
  if (spec.mesh_ratio > 1.0) return Mesh1D::quasi_uniform(0.0, kTwoPi, cells, spec.mesh_ratio, spec.mesh_seed);
  return Mesh1D::uniform(0.0, kTwoPi, cells);
}

namespace {

std::vector<double> default_thetas(const SchemeSpec& spec) { return spec.thetas.empty() ? std::vector<double>{1.0} : spec.thetas; }

Mesh2D square(const Mesh1D& m) { return Mesh2D{m, m}; }

}  // namespace

LinearOperator assemble_scheme(const SchemeSpec& spec, const Mesh1D& mesh) {
  const int k = spec.k;
  if (spec.pde == "advection") return assemble_high_order_lh(mesh, k, LdgParams{1, -1.0, spec.theta, {}});
  if (spec.pde == "heat") return assemble_high_order_lh(mesh, k, LdgParams{2, 1.0, 0.0, default_thetas(spec)});
  if (spec.pde == "dispersive") return assemble_high_order_lh(mesh, k, LdgParams{3, -1.0, spec.theta, default_thetas(spec)});
  if (spec.pde == "ultraweak") return assemble_ultraweak3(mesh, k, -1.0);
  if (spec.pde == "wave") {
    const WaveFlux f = spec.flux_perturbed ? perturbed_wave_flux(mesh.h(), spec.flux_delta, spec.flux_c) : spec.flux;
    return assemble_wave_alphabeta(mesh, k, f);
  }
  if (spec.pde == "augmented") return assemble_energy_conserving(mesh, k);
  if (spec.pde == "central") return assemble_central_dg(mesh, k, spec.central_lambda * mesh.h());
  if (spec.pde == "advection2d") return assemble_qk_2d(square(mesh), k, spec.theta, spec.theta2);
  throw InvalidArgument("unknown DG scheme pde '" + spec.pde + "'");
}

LinearOperator assemble_scheme(const SchemeSpec& spec, int cells) { return assemble_scheme(spec, scheme_mesh(spec, cells)); }

Vector initial_data(const SchemeSpec& spec, const Mesh1D& mesh, const std::string& init) {
  const ManufacturedSolution sol = manufactured_solution(spec.pde, spec.wavenumber);
  const int k = spec.k;
  if (spec.pde == "advection2d") {
    const Function2D w = [&](double x, double y) { return sol.value2d(x, y, 0.0); };
    if (init == "l2") return l2_project_2d(w, square(mesh), k).coefficients();
    if (init == "pi_tensor") return pi_tensor_2d(w, square(mesh), k, spec.theta, spec.theta2).coefficients();
    throw InvalidArgument("2D schemes support init 'l2' or 'pi_tensor', got '" + init + "'");
  }
  if (is_system(spec.pde)) {
    if (init != "l2") throw InvalidArgument("system schemes are initialized with 'l2' (component-wise L2 projection)");
    const Mesh1D phi_mesh = spec.pde == "central" ? mesh.dual() : mesh;
    return project_system([&](double x) { return sol.value(0, 0, x, 0.0); },
                          [&](double x) { return sol.value(1, 0, x, 0.0); }, mesh, phi_mesh, k)
        .stacked();
  }
  const ScalarFunction u0 = [&](double x) { return sol.value(0, 0, x, 0.0); };
  if (init == "l2") return l2_project(u0, mesh, k).coefficients();
  if (init == "pi_theta") {
    if (spec.pde != "advection") throw InvalidArgument("init 'pi_theta' applies to advection only");
    return pi_theta(u0, mesh, k, spec.theta).coefficients();
  }
  if (init == "composed") {
    const DerivativeFunction w = [&](double x, int d) { return sol.value(0, d, x, 0.0); };
    if (spec.pde == "advection") return composed_projection(w, 1, spec.theta, {}, mesh, k).coefficients();
    if (spec.pde == "heat") return composed_projection(w, 2, 0.0, default_thetas(spec), mesh, k).coefficients();
    if (spec.pde == "dispersive") return composed_projection(w, 3, spec.theta, default_thetas(spec), mesh, k).coefficients();
    throw InvalidArgument("init 'composed' applies to the LDG family (advection, heat, dispersive)");
  }
  throw InvalidArgument("unknown init '" + init + "'");
}

double solution_error(const SchemeSpec& spec, const Mesh1D& mesh, const Vector& coeffs, double t,
                      double* component_error) {
  const ManufacturedSolution sol = manufactured_solution(spec.pde, spec.wavenumber);
  const int k = spec.k;
  double e0 = 0.0;
  double total = 0.0;
  if (spec.pde == "advection2d") {
    const DGFunction2D u(square(mesh), k, coeffs);
    e0 = total = l2_error_2d(u, [&](double x, double y) { return sol.value2d(x, y, t); });
  } else if (is_system(spec.pde)) {
    const Mesh1D phi_mesh = spec.pde == "central" ? mesh.dual() : mesh;
    const auto s = SystemDGFunction::from_stacked(mesh, phi_mesh, k, coeffs);
    e0 = l2_error(s.u(), [&](double x) { return sol.value(0, 0, x, t); });
    const double e1 = l2_error(s.phi(), [&](double x) { return sol.value(1, 0, x, t); });
    total = std::hypot(e0, e1);
  } else {
    e0 = total = l2_error(DGFunction(mesh, k, coeffs), [&](double x) { return sol.value(0, 0, x, t); });
  }
  if (component_error) *component_error = e0;
  return total;
}

double TauPolicy::resolve(double h, double op_norm) const {
  if (kind == "cfl") {
    if (!(op_norm > 0.0)) throw InvalidArgument("cfl time-step policy needs a nonzero operator norm");
    return lambda / op_norm;
  }
  if (kind == "mesh_power") return c * std::pow(h, power);
  throw InvalidArgument("unknown time-step policy '" + kind + "'");
}

std::string to_string(RateMode mode) {
  switch (mode) {
    case RateMode::AtLeast: return "at_least";
    case RateMode::AtMost: return "at_most";
    default: return "report";
  }
}

RateMode rate_mode_from_string(const std::string& s) {
  if (s == "at_least") return RateMode::AtLeast;
  if (s == "at_most") return RateMode::AtMost;
  if (s == "report") return RateMode::Report;
  throw InvalidArgument("unknown rate mode '" + s + "' (expected at_least, at_most or report)");
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw InvalidArgument("fit_rate needs at least 3 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [s, e] : points) {
    if (!(s > 0.0) || !(e > 0.0)) throw InvalidArgument("fit_rate needs positive scales and errors");
    const double x = std::log(s);
    const double y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw InvalidArgument("fit_rate needs at least two distinct scales");
  RateFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  for (std::size_t i = 1; i < points.size(); ++i) {
    fit.pairwise.push_back(std::log(points[i].second / points[i - 1].second) /
                           std::log(points[i].first / points[i - 1].first));
  }
  return fit;
}

namespace {

void finish_report(ConvergenceReport& r) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : r.points) pts.emplace_back(p.scale, p.error);
  r.fit = fit_rate(pts);
  switch (r.mode) {
    case RateMode::AtLeast: r.pass = r.fit.slope >= r.target; break;
    case RateMode::AtMost: r.pass = r.fit.slope <= r.target; break;
    case RateMode::Report: r.pass = true; break;
  }
}

void check_finite(double err, const std::string& where) {
  if (!std::isfinite(err) || err > 1e3) {
    std::ostringstream os;
    os << where << ": error " << err << " indicates an unstable run";
    throw NumericalFailure(os.str());
  }
}

// The eigenvalues of the symmetric part carry a rounding error of order
// eps * ||L_h||, so the gate is 1e-10 relative to max(1, spectral radius).
double gate_mu(const LinearOperator& op, const std::string& where) {
  if (op.dim() > kMuGateLimit) return std::nan("");
  const Semiboundedness s = semiboundedness_mu(op);
  const double scale = std::max({1.0, std::abs(s.min_eigenvalue), std::abs(s.max_eigenvalue)});
  if (s.mu > kMuGate * scale) {
    std::ostringstream os;
    os << where << ": semiboundedness gate failed (mu = " << s.mu << ")";
    throw NumericalFailure(os.str());
  }
  return s.mu;
}

}  // namespace

std::string report_csv(const ConvergenceReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "scale,error,rate_pairwise\n";
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    os << r.points[i].scale << ',' << r.points[i].error << ',';
    if (i > 0 && i - 1 < r.fit.pairwise.size()) os << r.fit.pairwise[i - 1];
    os << '\n';
  }
  return os.str();
}

nlohmann::json report_json(const ConvergenceReport& r) {
  nlohmann::json j;
  j["study"] = r.study;
  j["axis"] = r.axis;
  j["rate"] = r.fit.slope;
  j["rate_pairwise"] = r.fit.pairwise;
  j["target"] = r.target;
  j["mode"] = to_string(r.mode);
  j["pass"] = r.pass;
  j["reliable"] = r.reliable;
  j["notes"] = r.notes;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.points) {
    nlohmann::json q = {{"scale", p.scale}, {"error", p.error}, {"component_error", p.component_error},
                        {"tau", p.tau}, {"steps", p.steps}, {"op_norm", p.op_norm}};
    if (std::isnan(p.mu)) {
      q["mu"] = nullptr;
    } else {
      q["mu"] = p.mu;
    }
    pts.push_back(q);
  }
  j["points"] = pts;
  if (!r.extra.empty()) j["extra"] = r.extra;
  return j;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& f) {
  if (n <= 0) return;
  const int workers = std::max(1, std::min(jobs, n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) {
          try {
            f(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ConvergenceReport run_spatial_convergence(const SpatialStudy& s) {
  if (s.cells.size() < 3) throw InvalidArgument("spatial study needs at least 3 mesh levels");
  const ManufacturedSolution sol = manufactured_solution(s.scheme.pde, s.scheme.wavenumber);
  const double res = sol.max_residual();
  if (res > 1e-10) throw NumericalFailure("manufactured solution fails its PDE residual check");
  ConvergenceReport r;
  r.study = "spatial";
  r.axis = "h";
  r.target = s.target;
  r.mode = s.mode;
  r.points.resize(s.cells.size());
  parallel_for(static_cast<int>(s.cells.size()), s.jobs, [&](int i) {
    const int n = s.cells[i];
    const std::string where = "level N=" + std::to_string(n);
    const Mesh1D mesh = scheme_mesh(s.scheme, n);
    const LinearOperator op = assemble_scheme(s.scheme, mesh);
    ConvergencePoint& p = r.points[i];
    p.mu = gate_mu(op, where);
    p.op_norm = operator_norm(op).value;
    p.tau = s.tau.resolve(mesh.h(), p.op_norm);
    check_cfl(p.tau, p.op_norm, s.guard);
    const Vector u0 = initial_data(s.scheme, mesh, s.init);
    const auto out = evolve(s.rk, op, u0, s.T, p.tau);
    p.steps = out.steps;
    p.scale = mesh.h();
    p.error = solution_error(s.scheme, mesh, out.u, s.T, &p.component_error);
    check_finite(p.error, where);
  });
  for (const auto& p : r.points) {
    if (std::isnan(p.mu)) {
      r.notes.push_back("semiboundedness gate skipped for n > 4000 at h = " + std::to_string(p.scale));
    }
  }
  finish_report(r);
  return r;
}

ConvergenceReport run_temporal_convergence(const TemporalStudy& s) {
  if (s.factors.size() < 3) throw InvalidArgument("temporal study needs at least 3 time steps");
  const Mesh1D mesh = scheme_mesh(s.scheme, s.cells);
  const LinearOperator op = assemble_scheme(s.scheme, mesh);
  const double mu = gate_mu(op, "temporal study");
  const double norm = operator_norm(op).value;
  const Vector u0 = initial_data(s.scheme, mesh, s.init);
  const Vector ref = expm_reference(op, s.T, u0);

  ConvergenceReport r;
  r.study = s.semidiscrete ? "semidiscrete" : "temporal";
  r.axis = "tau";
  r.target = s.target;
  r.mode = s.mode;
  r.points.resize(s.factors.size());
  // Uniform steps only: n_0 steps for the base size, n_0 / f for factor f.
  const double tau0 = s.tau.resolve(mesh.h(), norm) * s.factors[0];
  const int n0 = std::max(1, static_cast<int>(std::ceil(s.T / tau0 - 1e-9)));
  parallel_for(static_cast<int>(s.factors.size()), s.jobs, [&](int i) {
    ConvergencePoint& p = r.points[i];
    const int steps = std::max(1, static_cast<int>(std::lround(n0 * s.factors[0] / s.factors[i])));
    p.tau = s.T / steps;
    p.scale = p.tau;
    p.op_norm = norm;
    p.mu = mu;
    check_cfl(p.tau, norm, s.guard);
    const auto out = evolve(s.rk, op, u0, s.T, p.tau);
    p.steps = out.steps;
    if (s.semidiscrete) {
      p.error = (out.u - ref).norm();
      p.component_error = p.error;
    } else {
      p.error = solution_error(s.scheme, mesh, out.u, s.T, &p.component_error);
    }
    check_finite(p.error, "tau=" + std::to_string(p.tau));
  });
  if (!s.semidiscrete) {
    const double floor = solution_error(s.scheme, mesh, ref, s.T);
    double smallest = INFINITY;
    nlohmann::json raw = nlohmann::json::array();
    for (auto& p : r.points) {
      raw.push_back(p.error);
      p.error -= floor;
      smallest = std::min(smallest, p.error);
    }
    r.extra["spatial_floor"] = floor;
    r.extra["raw_errors"] = raw;
    if (!(smallest > 0.0) || floor > 0.2 * smallest) {
      r.reliable = false;
      r.notes.push_back("spatial floor exceeds 20% of the smallest temporal error; fit unreliable");
    }
    if (!(smallest > 0.0)) {
      r.pass = false;
      r.fit = RateFit{};
      return r;
    }
  }
  finish_report(r);
  if (!r.reliable) r.pass = false;
  return r;
}

ConvergenceReport compare_semidiscrete(const CompareStudy& c) {
  TemporalStudy t = c.temporal;
  t.semidiscrete = true;
  ConvergenceReport r = run_temporal_convergence(t);
  r.study = "compare_semidiscrete";
  if (!c.power_cells.empty()) {
    const int p = t.rk.order;
    nlohmann::json norms = nlohmann::json::array();
    double first = -1.0;
    double hi = 0.0;
    for (int n : c.power_cells) {
      const Mesh1D mesh = scheme_mesh(t.scheme, n);
      const LinearOperator op = assemble_scheme(t.scheme, mesh);
      Vector v = initial_data(t.scheme, mesh, t.init);
      for (int i = 0; i <= p; ++i) v = op.apply(v);
      const double nv = v.norm();
      norms.push_back({{"cells", n}, {"norm", nv}});
      if (first < 0.0) first = nv;
      hi = std::max(hi, nv);
    }
    // Bounded under refinement: no level exceeds the coarsest by more than
    // the factor. Algebraic growth h^{-1} over four levels gives 8x.
    const bool bounded = hi <= c.power_factor * first;
    r.extra["power_norms"] = norms;
    r.extra["power_norms_bounded"] = bounded;
    if (!bounded) {
      r.pass = false;
      r.notes.push_back("||L_h^{p+1} Pi u0|| is not bounded within the requested factor");
    }
  }
  return r;
}

StabilityTable stability_scan(const RKScheme& scheme, const LinearOperator& op, const std::vector<double>& lambdas,
                              int jobs) {
  for (double l : lambdas) {
    if (!(l > 0.0 && l < 1.0)) throw InvalidArgument("stability_scan: lambda values must lie in (0, 1)");
  }
  StabilityTable t;
  t.scheme = scheme.name;
  t.op_norm = operator_norm(op).value;
  t.rows.resize(lambdas.size());
  parallel_for(static_cast<int>(lambdas.size()), jobs, [&](int i) {
    StabilityRow& row = t.rows[i];
    row.lambda = lambdas[i];
    row.tau = t.op_norm > 0.0 ? row.lambda / t.op_norm : row.lambda;
    row.norm = amplification_norm(scheme, row.tau, op);
    row.stable = row.norm <= 1.0 + 1e-10;
  });
  std::vector<StabilityRow> sorted = t.rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  for (const auto& row : sorted) {
    if (row.stable) t.largest_stable = std::max(t.largest_stable, row.lambda);
  }
  for (const auto& row : sorted) {
    if (!row.stable) break;
    t.stable_up_to = row.lambda;
  }
  return t;
}

nlohmann::json stability_json(const StabilityTable& t) {
  nlohmann::json j;
  j["scheme"] = t.scheme;
  j["op_norm"] = t.op_norm;
  j["largest_stable_lambda"] = t.largest_stable;
  j["stable_up_to"] = t.stable_up_to;
  j["empty"] = t.empty();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) rows.push_back({{"lambda", r.lambda}, {"tau", r.tau}, {"norm", r.norm}, {"stable", r.stable}});
  j["rows"] = rows;
  return j;
}

nlohmann::json checks_json(const std::vector<CheckRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"check", r.name}, {"value", r.value}, {"tolerance", r.tolerance}, {"pass", r.pass}});
  }
  return out;
}

namespace {

CheckRow at_most(std::string name, double value, double tol) {
  return CheckRow{std::move(name), value, tol, value <= tol};
}

Vector random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

std::string fmt_theta(double t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

}  // namespace

std::vector<CheckRow> check_operators(int k, int cells, std::uint64_t seed) {
  std::vector<CheckRow> rows;
  std::mt19937_64 rng(seed);
  const Mesh1D mesh = Mesh1D::uniform(0.0, kTwoPi, cells);

  for (double th : {0.0, 0.25, 0.5, 1.0}) {
    const Matrix a = assemble_d_theta(mesh, k, th).dense();
    const Matrix b = assemble_d_theta(mesh, k, 1.0 - th).dense();
    rows.push_back(at_most("antisymmetry theta=" + fmt_theta(th), (a + b.transpose()).cwiseAbs().maxCoeff(), 1e-12));
  }
  for (double th : {0.0, 0.25, 0.5, 1.0}) {
    const LinearOperator d = assemble_d_theta(mesh, k, th);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const DGFunction v(mesh, k, random_vector(d.dim(), rng));
      worst = std::max(worst, std::abs(quadratic_form_defect(d, v)) / v.coefficients().squaredNorm());
    }
    rows.push_back(at_most("quadratic form theta=" + fmt_theta(th), worst, 1e-11));
  }

  struct Entry {
    std::string name;
    LinearOperator op;
  };
  std::vector<Entry> catalog;
  catalog.push_back({"advection upwind", assemble_high_order_lh(mesh, k, {1, -1.0, 1.0, {}})});
  catalog.push_back({"advection central", assemble_high_order_lh(mesh, k, {1, -1.0, 0.5, {}})});
  catalog.push_back({"heat ldg", assemble_high_order_lh(mesh, k, {2, 1.0, 0.0, {0.3}})});
  catalog.push_back({"dispersive ldg", assemble_high_order_lh(mesh, k, {3, -1.0, 0.0, {1.0}})});
  if (k >= 1) catalog.push_back({"ultraweak", assemble_ultraweak3(mesh, std::max(k, 1), -1.0)});
  catalog.push_back({"wave alpha=1/2", assemble_wave_alphabeta(mesh, k, {0.5, 0.0, 0.0})});
  catalog.push_back({"wave beta=-1/2", assemble_wave_alphabeta(mesh, k, {0.0, -0.5, -0.5})});
  catalog.push_back({"energy conserving", assemble_energy_conserving(mesh, k)});
  catalog.push_back({"central dg", assemble_central_dg(mesh, k, 0.1 * mesh.h())});
  const int n2 = std::min(cells, 8);
  const Mesh1D m2 = Mesh1D::uniform(0.0, kTwoPi, n2);
  catalog.push_back({"qk 2d", assemble_qk_2d(Mesh2D{m2, m2}, k, 1.0, 1.0)});

  for (const auto& e : catalog) {
    rows.push_back(at_most("mu " + e.name, semiboundedness_mu(e.op).mu, 1e-10));
  }
  for (const auto& e : catalog) {
    // Constant state: mode 0 of every cell and component carries sqrt(|cell|).
    Vector c = Vector::Zero(e.op.dim());
    if (e.name == "qk 2d") {
      c = l2_project_2d([](double, double) { return 1.0; }, Mesh2D{m2, m2}, k).coefficients();
    } else {
      const int b = e.op.info().block;
      for (Eigen::Index i = 0; i < e.op.dim() / b; ++i) c[i * b] = std::sqrt(mesh.width(0));
    }
    rows.push_back(at_most("kernel " + e.name, e.op.apply(c).norm() / c.norm(), 1e-12 * std::max(1.0, operator_norm(e.op).value)));
  }
  rows.push_back(at_most("skewness energy conserving", skewness_defect(catalog[7].op), 1e-12));
  {
    const auto s = semiboundedness_mu(catalog[1].op);
    rows.push_back(at_most("central flux symmetric part", std::max(std::abs(s.max_eigenvalue), std::abs(s.min_eigenvalue)), 1e-11));
  }
  {
    const std::vector<double> th = {0.3, 0.8};
    const Matrix kt = assemble_k_transpose(mesh, k, th).dense();
    const Matrix kk = compose({assemble_d_theta(mesh, k, th[0]), assemble_d_theta(mesh, k, th[1])}, OperatorInfo{}).dense();
    rows.push_back(at_most("K^T closed form", (kt - kk.transpose()).cwiseAbs().maxCoeff(), 1e-11));
    const Matrix heat = assemble_high_order_lh(mesh, k, {2, 1.0, 0.0, {0.3}}).dense();
    const Matrix prod = assemble_d_theta(mesh, k, 0.7).dense() * assemble_d_theta(mesh, k, 0.3).dense();
    rows.push_back(at_most("composition consistency", (heat - prod).cwiseAbs().maxCoeff(), 1e-11));
  }
  return rows;
}

namespace {

// ||D_theta^{-1}||_2 restricted to Z_h, by dense assembly of D^{-1} P with
// P the orthogonal projector onto Z_h.
double inverse_bound(const Mesh1D& mesh, int k, double theta) {
  const DThetaInverse inv(mesh, k, theta);
  const Eigen::Index n = static_cast<Eigen::Index>(mesh.cells()) * (k + 1);
  Vector one = Vector::Zero(n);
  for (int j = 0; j < mesh.cells(); ++j) one[j * (k + 1)] = std::sqrt(mesh.width(j));
  one.normalize();
  Matrix x(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e[i] = 1.0;
    e -= one.dot(e) * one;
    x.col(i) = inv.apply(e);
  }
  return matrix_two_norm(x, {NormMethod::DenseSvd}).value;
}

}  // namespace

std::vector<CheckRow> check_projections(int k, int cells, std::uint64_t seed) {
  std::vector<CheckRow> rows;
  std::mt19937_64 rng(seed);
  const Mesh1D mesh = Mesh1D::uniform(0.0, kTwoPi, cells);
  const Eigen::Index n = static_cast<Eigen::Index>(cells) * (k + 1);
  const DerivativeFunction sinx = [](double x, int d) { return sin_derivative(d, x); };
  const DerivativeFunction smooth = [](double x, int d) {
    // exp(sin x) is not band-limited; derivatives up to order 3.
    const double s = std::sin(x), c = std::cos(x), e = std::exp(s);
    switch (d) {
      case 0: return e;
      case 1: return c * e;
      case 2: return (c * c - s) * e;
      default: return (c * c * c - 3.0 * s * c - c) * e;
    }
  };

  for (double th : {0.0, 0.25, 1.0}) {
    const DThetaInverse inv(mesh, k, th);
    double left = 0.0, right = 0.0, mean = 0.0;
    for (int i = 0; i < 20; ++i) {
      const MeanZeroFunction z = MeanZeroFunction::remove_mean(DGFunction(mesh, k, random_vector(n, rng)));
      const Vector& zc = z.function().coefficients();
      const Vector x = inv.apply(zc);
      right = std::max(right, (inv.d_theta().apply(x) - zc).norm() / zc.norm());
      left = std::max(left, (inv.apply(inv.d_theta().apply(zc)) - zc).norm() / zc.norm());
      mean = std::max(mean, std::abs(DGFunction(mesh, k, x).integral()) / x.norm());
    }
    rows.push_back(at_most("D D^{-1} = I theta=" + fmt_theta(th), right, 1e-10));
    rows.push_back(at_most("D^{-1} D = I theta=" + fmt_theta(th), left, 1e-10));
    rows.push_back(at_most("mean-zero range theta=" + fmt_theta(th), mean, 1e-11));
  }
  {
    double lo = INFINITY, hi = 0.0;
    for (int nc : {16, 32, 64, 128}) {
      const double c = inverse_bound(Mesh1D::uniform(0.0, kTwoPi, nc), k, 1.0);
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    rows.push_back(at_most("inverse bound ratio N=16..128", hi / lo, 2.0));
  }
  for (double th : {1.0, 0.25}) {
    rows.push_back(at_most("D Pi_theta = Pi_0 d_x theta=" + fmt_theta(th),
                           commuting_defect(ProjectionKind::PiTheta, sinx, assemble_d_theta(mesh, k, th), mesh), 1e-10));
  }
  {
    std::uniform_real_distribution<double> u(0.0, 0.4);
    auto away = [&]() { const double r = u(rng); return r < 0.2 ? r : r + 0.4; };  // [0,0.2) U [0.6,0.8]
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const double t1 = 0.6 + u(rng);
      const double t0 = u(rng);
      const double tg = away();
      worst = std::max(worst, commuting_defect(ProjectionKind::Composed, smooth,
                                               assemble_high_order_lh(mesh, k, {1, -1.0, t1, {}}), mesh));
      worst = std::max(worst, commuting_defect(ProjectionKind::Composed, smooth,
                                               assemble_high_order_lh(mesh, k, {2, 1.0, 0.0, {tg}}), mesh));
      worst = std::max(worst, commuting_defect(ProjectionKind::Composed, smooth,
                                               assemble_high_order_lh(mesh, k, {3, -1.0, t0, {tg}}), mesh));
    }
    rows.push_back(at_most("L_h Pi = Pi_0 L (q=1,2,3)", worst, 1e-9));
  }
  {
    double worst = 0.0;
    for (int i = 1; i <= 3; ++i) {
      const DGFunction p = l2_project([&](double x) { return smooth(x, i); }, mesh, k);
      worst = std::max(worst, std::abs(p.integral()) / std::max(1e-300, p.coefficients().norm()));
    }
    rows.push_back(at_most("Pi_0 d^i w mean-zero", worst, 1e-11));
  }
  if (k >= 1) {
    // Rephrased q=2 projection: D_{t}^{-1}(Pi_{1-t} w' - mean) + mean(w).
    const double t = 0.8;
    const DGFunction direct = composed_projection(smooth, 2, 0.0, {t}, mesh, k);
    const DGFunction p = pi_theta([&](double x) { return smooth(x, 1); }, mesh, k, 1.0 - t);
    const MeanZeroFunction z = MeanZeroFunction::remove_mean(p);
    DGFunction alt(mesh, k, DThetaInverse(mesh, k, t).apply(z.function().coefficients()));
    alt.add_constant(integrate([&](double x) { return smooth(x, 0); }, mesh, k + 5) / mesh.length());
    rows.push_back(at_most("rephrased composed projection", (alt.coefficients() - direct.coefficients()).norm(), 1e-10));
  }
  if (k >= 1) {
    // Central flux with Pi_0: consistency order k only. For even k the
    // leading terms cancel on uniform meshes and one order is gained, so
    // the upper end of the window applies to odd k.
    std::vector<std::pair<double, double>> pts;
    for (int nc : {16, 32, 64, 128}) {
      const Mesh1D m = Mesh1D::uniform(0.0, kTwoPi, nc);
      pts.emplace_back(m.h(), commuting_defect(ProjectionKind::L2, sinx, assemble_d_theta(m, k, 0.5), m));
    }
    const double rate = fit_rate(pts).slope;
    const double upper = (k % 2 == 1) ? k + 0.6 : k + 1.6;
    CheckRow row{k % 2 == 1 ? "central flux Pi_0 defect rate in [k-0.2, k+0.6)"
                            : "central flux Pi_0 defect rate in [k-0.2, k+1.6)",
                 rate, upper, rate >= k - 0.2 && rate < upper};
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rkdg
