#include "rkdg/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "rkdg/config.hpp"
#include "rkdg/harness.hpp"

namespace rkdg {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string out_dir;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  bool strict_cfl = false;
  std::string format = "both";
  int k = 1;
  int n = 16;
};

bool want_csv(const Options& o) { return o.format == "csv" || o.format == "both"; }
bool want_json(const Options& o) { return o.format == "json" || o.format == "both"; }

void write_file(const Options& o, const std::string& name, const std::string& content) {
  if (o.out_dir.empty()) return;
  fs::create_directories(o.out_dir);
  const fs::path path = fs::path(o.out_dir) / name;
  std::ofstream f(path);
  if (!f) throw NumericalFailure("cannot write " + path.string());
  f << content;
}

ExperimentConfig load(const Options& o) {
  if (o.config.empty()) throw ConfigError("<command line>", 0, "--config", "a config file is required");
  ExperimentConfig c = load_config(o.config);
  if (o.strict_cfl) c.guard.strict = true;
  if (o.seed) c.scheme.mesh_seed = *o.seed;
  return c;
}

void emit_report(const Options& o, const ExperimentConfig& c, const ConvergenceReport& r, std::ostream& out) {
  nlohmann::json j = report_json(r);
  j["name"] = c.name;
  j["config"] = c.raw;
  const std::string csv = report_csv(r);
  if (want_csv(o)) write_file(o, c.name + ".csv", csv);
  if (want_json(o)) write_file(o, c.name + ".json", j.dump(2) + "\n");
  out << csv;
  out << "# " << c.name << ": rate " << std::setprecision(4) << r.fit.slope << " (" << to_string(r.mode) << " "
      << r.target << ") " << (r.pass ? "PASS" : "FAIL") << (r.reliable ? "" : " [unreliable]") << '\n';
  for (const auto& note : r.notes) out << "# note: " << note << '\n';
}

int cmd_converge(const Options& o, std::ostream& out) {
  const ExperimentConfig c = load(o);
  ConvergenceReport r;
  if (c.study == "spatial") {
    r = run_spatial_convergence(c.spatial(o.jobs));
  } else if (c.study == "temporal") {
    r = run_temporal_convergence(c.temporal(o.jobs));
  } else if (c.study == "compare_semidiscrete") {
    r = compare_semidiscrete(c.compare(o.jobs));
  } else {
    throw ConfigError(o.config, 0, "study", "converge expects a spatial, temporal or compare_semidiscrete study");
  }
  emit_report(o, c, r, out);
  return r.pass ? kExitPass : kExitRateFailure;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const ExperimentConfig c = load(o);
  if (c.study != "compare_semidiscrete") {
    throw ConfigError(o.config, 0, "study", "compare-semidiscrete expects a compare_semidiscrete study");
  }
  const ConvergenceReport r = compare_semidiscrete(c.compare(o.jobs));
  emit_report(o, c, r, out);
  return r.pass ? kExitPass : kExitRateFailure;
}

int cmd_stability(const Options& o, std::ostream& out) {
  const ExperimentConfig c = load(o);
  if (c.study != "stability_scan") throw ConfigError(o.config, 0, "study", "stability-scan expects a stability_scan study");
  const LinearOperator op = assemble_scheme(c.scheme, c.cells.at(0));
  const StabilityTable t = stability_scan(c.rk, op, c.lambdas, o.jobs);
  bool pass = true;
  if (c.expect == "empty") pass = t.empty();
  if (c.expect == "nonempty") pass = !t.empty();
  nlohmann::json j = stability_json(t);
  j["name"] = c.name;
  j["rk"] = c.rk.name;
  j["expect"] = c.expect;
  j["pass"] = pass;
  j["config"] = c.raw;
  std::ostringstream csv;
  csv << "lambda,tau,norm,stable\n" << std::setprecision(17);
  for (const auto& row : t.rows) csv << row.lambda << ',' << row.tau << ',' << row.norm << ',' << (row.stable ? 1 : 0) << '\n';
  if (want_csv(o)) write_file(o, c.name + ".csv", csv.str());
  if (want_json(o)) write_file(o, c.name + ".json", j.dump(2) + "\n");
  out << csv.str();
  out << "# " << c.name << ": " << c.rk.name << " on " << op.info().scheme << ", largest stable lambda "
      << t.largest_stable << " (expect " << c.expect << ") " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitPass : kExitRateFailure;
}

int emit_checks(const Options& o, const std::string& title, const std::vector<CheckRow>& rows, std::ostream& out) {
  bool pass = true;
  std::ostringstream csv;
  csv << "check,value,tolerance,pass\n" << std::setprecision(6);
  for (const auto& r : rows) {
    pass = pass && r.pass;
    csv << r.name << ',' << r.value << ',' << r.tolerance << ',' << (r.pass ? 1 : 0) << '\n';
  }
  nlohmann::json j = {{"study", title}, {"k", o.k}, {"cells", o.n}, {"seed", o.seed.value_or(1)},
                      {"checks", checks_json(rows)}, {"pass", pass}};
  if (want_csv(o)) write_file(o, title + ".csv", csv.str());
  if (want_json(o)) write_file(o, title + ".json", j.dump(2) + "\n");
  for (const auto& r : rows) {
    out << std::left << std::setw(52) << r.name << std::right << std::setw(13) << std::scientific << std::setprecision(3)
        << r.value << "  <= " << r.tolerance << "  " << (r.pass ? "ok" : "FAIL") << '\n';
  }
  out << std::defaultfloat << "# " << title << ": " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitPass : kExitRateFailure;
}

void check_sizes(const Options& o) {
  if (o.k < 0 || o.k > 8) throw ConfigError("<command line>", 0, "--k", "degree must be in [0, 8]");
  if (o.n < 4 || o.n > 512) throw ConfigError("<command line>", 0, "--n", "cell count must be in [4, 512]");
}

int cmd_dump(const Options& o, std::ostream& out) {
  const ExperimentConfig c = load(o);
  const LinearOperator op = assemble_scheme(c.scheme, c.cells.at(0));
  std::ostringstream mm;
  dump_matrix_market(op, mm);
  if (!o.out_dir.empty()) {
    write_file(o, c.name + ".mtx", mm.str());
    out << "# wrote " << (fs::path(o.out_dir) / (c.name + ".mtx")).string() << " (" << op.dim() << " unknowns)\n";
  } else {
    out << mm.str();
  }
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Runge-Kutta discontinuous Galerkin verification lab", "rkdg-lab"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* sub, bool config) {
    if (config) sub->add_option("--config", o.config, "experiment config (JSON)")->required();
    sub->add_option("--out", o.out_dir, "directory for CSV/JSON reports");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--seed", seed, "seed for randomized draws");
    sub->add_flag("--strict-cfl", o.strict_cfl, "treat CFL violations as numerical failures");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json", "both"}));
  };

  auto* converge = app.add_subcommand("converge", "spatial, temporal or semidiscrete convergence study");
  add_common(converge, true);
  auto* scan = app.add_subcommand("stability-scan", "amplification-norm scan over a lambda grid");
  add_common(scan, true);
  auto* compare = app.add_subcommand("compare-semidiscrete", "fully discrete vs exp(T L_h) comparison");
  add_common(compare, true);
  auto* dump = app.add_subcommand("dump-operator", "write the assembled operator in Matrix Market format");
  add_common(dump, true);
  auto* ops = app.add_subcommand("check-operators", "structural operator identities");
  add_common(ops, false);
  ops->add_option("--k", o.k, "polynomial degree");
  ops->add_option("--n", o.n, "number of cells");
  auto* proj = app.add_subcommand("check-projections", "projection and inverse-operator identities");
  add_common(proj, false);
  proj->add_option("--k", o.k, "polynomial degree");
  proj->add_option("--n", o.n, "number of cells");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "rkdg-lab: " << e.what() << '\n';
    return kExitConfigError;
  }

  bool seed_given = false;
  for (auto* sub : app.get_subcommands()) seed_given = seed_given || sub->count("--seed") > 0;
  if (seed_given) o.seed = seed;

  set_warning_sink([&err](const std::string& m) { err << "warning: " << m << '\n'; });
  int code = kExitPass;
  try {
    if (converge->parsed()) code = cmd_converge(o, out);
    if (scan->parsed()) code = cmd_stability(o, out);
    if (compare->parsed()) code = cmd_compare(o, out);
    if (dump->parsed()) code = cmd_dump(o, out);
    if (ops->parsed()) {
      check_sizes(o);
      code = emit_checks(o, "check_operators", check_operators(o.k, o.n, o.seed.value_or(1)), out);
    }
    if (proj->parsed()) {
      check_sizes(o);
      code = emit_checks(o, "check_projections", check_projections(o.k, o.n, o.seed.value_or(1)), out);
    }
  } catch (const InvalidArgument& e) {
    err << "rkdg-lab: config error: " << e.what() << '\n';
    code = kExitConfigError;
  } catch (const NumericalFailure& e) {
    err << "rkdg-lab: numerical failure: " << e.what() << '\n';
    code = kExitNumericalFailure;
  } catch (const std::exception& e) {
    err << "rkdg-lab: numerical failure: " << e.what() << '\n';
    code = kExitNumericalFailure;
  }
  set_warning_sink(nullptr);
  return code;
}

}  // namespace rkdg
