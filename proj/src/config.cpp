#include "rkdg/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace rkdg {

namespace {

std::string format_error(const std::string& source, int line, const std::string& field, const std::string& message) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ":" << line;
  if (!field.empty()) os << ": field '" << field << "'";
  os << ": " << message;
  return os.str();
}

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Reader that walks the parsed document and reports paths and lines.
class Reader {
 public:
  Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw ConfigError(source_, line_of(path), path, message);
  }

  // Line of the key at a dotted path, found by scanning for each quoted
  // component in turn.
  int line_of(const std::string& path) const {
    std::size_t pos = 0;
    std::stringstream ss(path);
    std::string part;
    bool found = false;
    while (std::getline(ss, part, '.')) {
      const auto br = part.find('[');
      if (br != std::string::npos) part = part.substr(0, br);
      if (part.empty()) continue;
      const auto at = text_.find("\"" + part + "\"", pos);
      if (at == std::string::npos) break;
      pos = at + 1;
      found = true;
    }
    return found ? line_of_offset(text_, pos) : 0;
  }

  void allow(const nlohmann::json& obj, const std::string& path, const std::set<std::string>& keys) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      if (!keys.count(key)) fail(join(path, key), "unknown key");
    }
  }

  static std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

  double number(const nlohmann::json& obj, const std::string& path, const std::string& key, double fallback) const {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(join(path, key), "expected a number");
    return v.get<double>();
  }

  int integer(const nlohmann::json& obj, const std::string& path, const std::string& key, int fallback) const {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
    return v.get<int>();
  }

  bool boolean(const nlohmann::json& obj, const std::string& path, const std::string& key, bool fallback) const {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) fail(join(path, key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const nlohmann::json& obj, const std::string& path, const std::string& key,
                     const std::string& fallback) const {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) fail(join(path, key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const nlohmann::json& obj, const std::string& path, const std::string& key,
                              std::vector<double> fallback) const {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_array()) fail(join(path, key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail(join(path, key), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<int> integers(const nlohmann::json& obj, const std::string& path, const std::string& key) const {
    std::vector<int> out;
    if (!obj.contains(key)) return out;
    const auto& v = obj.at(key);
    if (v.is_number_integer()) return {v.get<int>()};
    if (!v.is_array()) fail(join(path, key), "expected an integer or an array of integers");
    for (const auto& e : v) {
      if (!e.is_number_integer()) fail(join(path, key), "expected an array of integers");
      out.push_back(e.get<int>());
    }
    return out;
  }

 private:
  const std::string& text_;
  std::string source_;
};

const std::set<std::string> kPdes = {"advection", "heat", "dispersive", "ultraweak", "wave",
                                     "augmented", "central", "advection2d"};

SchemeSpec read_scheme(const Reader& r, const nlohmann::json& j) {
  const std::string p = "scheme";
  r.allow(j, p, {"pde", "k", "theta", "theta2", "thetas", "flux", "flux_perturbation", "central_lambda", "wavenumber",
                 "mesh_ratio", "mesh_seed"});
  SchemeSpec s;
  if (!j.contains("pde")) r.fail(p, "missing required key 'pde'");
  s.pde = r.string(j, p, "pde", "");
  if (!kPdes.count(s.pde)) r.fail(p + ".pde", "unknown pde '" + s.pde + "'");
  s.k = r.integer(j, p, "k", 1);
  if (s.k < 0 || s.k > 12) r.fail(p + ".k", "degree must be in [0, 12]");
  s.theta = r.number(j, p, "theta", s.pde == "dispersive" ? 0.0 : 1.0);
  s.theta2 = r.number(j, p, "theta2", 1.0);
  s.thetas = r.numbers(j, p, "thetas", {});
  if (j.contains("flux")) {
    const auto& f = j.at("flux");
    r.allow(f, p + ".flux", {"alpha", "beta1", "beta2"});
    s.flux.alpha = r.number(f, p + ".flux", "alpha", 0.5);
    s.flux.beta1 = r.number(f, p + ".flux", "beta1", 0.0);
    s.flux.beta2 = r.number(f, p + ".flux", "beta2", 0.0);
  }
  if (j.contains("flux_perturbation")) {
    const auto& f = j.at("flux_perturbation");
    r.allow(f, p + ".flux_perturbation", {"delta", "c"});
    s.flux_perturbed = true;
    s.flux_delta = r.number(f, p + ".flux_perturbation", "delta", 1.0);
    s.flux_c = r.number(f, p + ".flux_perturbation", "c", 1.0);
  }
  s.central_lambda = r.number(j, p, "central_lambda", 0.1);
  if (!(s.central_lambda > 0.0)) r.fail(p + ".central_lambda", "must be positive");
  s.wavenumber = r.number(j, p, "wavenumber", 1.0);
  if (!(s.wavenumber > 0.0)) r.fail(p + ".wavenumber", "must be positive");
  s.mesh_ratio = r.number(j, p, "mesh_ratio", 1.0);
  if (s.mesh_ratio < 1.0 || s.mesh_ratio > 2.0) r.fail(p + ".mesh_ratio", "must be in [1, 2]");
  s.mesh_seed = static_cast<std::uint64_t>(r.integer(j, p, "mesh_seed", 1));
  return s;
}

RKScheme read_rk(const Reader& r, const nlohmann::json& j) {
  if (j.is_string()) {
    try {
      return rk_preset(j.get<std::string>());
    } catch (const InvalidArgument& e) {
      r.fail("rk", e.what());
    }
  }
  if (j.is_object()) {
    r.allow(j, "rk", {"alpha", "name"});
    const auto alpha = r.numbers(j, "rk", "alpha", {});
    try {
      return custom_rk(alpha, r.string(j, "rk", "name", "custom"));
    } catch (const InvalidArgument& e) {
      r.fail("rk.alpha", e.what());
    }
  }
  r.fail("rk", "expected a preset name or {\"alpha\": [...]}");
}

TauPolicy read_tau(const Reader& r, const nlohmann::json& j) {
  r.allow(j, "tau", {"policy", "lambda", "c", "power"});
  TauPolicy t;
  t.kind = r.string(j, "tau", "policy", "cfl");
  if (t.kind != "cfl" && t.kind != "mesh_power") r.fail("tau.policy", "expected 'cfl' or 'mesh_power'");
  t.lambda = r.number(j, "tau", "lambda", t.lambda);
  t.c = r.number(j, "tau", "c", t.c);
  t.power = r.number(j, "tau", "power", t.power);
  if (!(t.lambda > 0.0)) r.fail("tau.lambda", "must be positive");
  if (!(t.c > 0.0)) r.fail("tau.c", "must be positive");
  return t;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& field, const std::string& message)
    : InvalidArgument(format_error(source, line, field, message)), line_(line), field_(field) {}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source, line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), "", "malformed JSON");
  }
  const Reader r(text, source);
  r.allow(j, "", {"schema_version", "name", "study", "scheme", "rk", "T", "cells", "init", "tau", "cfl_lambda",
                  "strict_cfl", "target", "mode", "factors", "power_cells", "power_factor", "lambdas", "expect"});
  if (!j.contains("schema_version")) r.fail("schema_version", "missing required key");
  if (r.integer(j, "", "schema_version", 0) != kSchemaVersion) {
    r.fail("schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  ExperimentConfig c;
  c.raw = j;
  c.name = r.string(j, "", "name", "");
  c.study = r.string(j, "", "study", "");
  static const std::set<std::string> studies = {"spatial", "temporal", "compare_semidiscrete", "stability_scan", "operator"};
  if (!studies.count(c.study)) r.fail("study", "expected one of spatial, temporal, compare_semidiscrete, stability_scan, operator");
  if (!j.contains("scheme")) r.fail("scheme", "missing required key");
  c.scheme = read_scheme(r, j.at("scheme"));
  if (j.contains("rk")) c.rk = read_rk(r, j.at("rk"));
  c.T = r.number(j, "", "T", 1.0);
  if (!(c.T >= 0.0)) r.fail("T", "final time must be nonnegative");
  c.cells = r.integers(j, "", "cells");
  for (int n : c.cells) {
    if (n < 2) r.fail("cells", "every mesh needs at least 2 cells");
  }
  if (c.cells.empty()) r.fail("cells", "missing required key");
  if (c.study == "spatial" && c.cells.size() < 3) r.fail("cells", "a spatial study needs at least 3 mesh levels");
  if (c.study != "spatial" && c.cells.size() != 1) r.fail("cells", "this study uses a single mesh");
  c.init = r.string(j, "", "init", "l2");
  static const std::set<std::string> inits = {"l2", "pi_theta", "composed", "pi_tensor"};
  if (!inits.count(c.init)) r.fail("init", "expected l2, pi_theta, composed or pi_tensor");
  if (j.contains("tau")) c.tau = read_tau(r, j.at("tau"));
  c.guard.lambda = r.number(j, "", "cfl_lambda", 0.9);
  if (!(c.guard.lambda > 0.0 && c.guard.lambda < 1.0)) r.fail("cfl_lambda", "must be in (0, 1)");
  c.guard.strict = r.boolean(j, "", "strict_cfl", false);
  c.target = r.number(j, "", "target", 0.0);
  try {
    c.mode = rate_mode_from_string(r.string(j, "", "mode", j.contains("target") ? "at_least" : "report"));
  } catch (const InvalidArgument& e) {
    r.fail("mode", e.what());
  }
  c.factors = r.numbers(j, "", "factors", c.factors);
  if ((c.study == "temporal" || c.study == "compare_semidiscrete") && c.factors.size() < 3) {
    r.fail("factors", "a temporal study needs at least 3 step sizes");
  }
  for (double f : c.factors) {
    if (!(f > 0.0)) r.fail("factors", "step factors must be positive");
  }
  c.power_cells = r.integers(j, "", "power_cells");
  c.power_factor = r.number(j, "", "power_factor", 2.0);
  c.lambdas = r.numbers(j, "", "lambdas", {});
  if (c.study == "stability_scan") {
    if (c.lambdas.empty()) r.fail("lambdas", "a stability scan needs a lambda grid");
    for (double l : c.lambdas) {
      if (!(l > 0.0 && l < 1.0)) r.fail("lambdas", "lambda values must lie in (0, 1)");
    }
  }
  c.expect = r.string(j, "", "expect", "any");
  if (c.expect != "any" && c.expect != "empty" && c.expect != "nonempty") {
    r.fail("expect", "expected any, empty or nonempty");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot read config file");
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig c = parse_config(ss.str(), path);
  if (c.name.empty()) c.name = std::filesystem::path(path).stem().string();
  return c;
}

SpatialStudy ExperimentConfig::spatial(int jobs) const {
  SpatialStudy s;
  s.scheme = scheme;
  s.rk = rk;
  s.T = T;
  s.cells = cells;
  s.init = init;
  s.tau = tau;
  s.guard = guard;
  s.target = target;
  s.mode = mode;
  s.jobs = jobs;
  return s;
}

TemporalStudy ExperimentConfig::temporal(int jobs) const {
  TemporalStudy t;
  t.scheme = scheme;
  t.rk = rk;
  t.T = T;
  t.cells = cells.at(0);
  t.init = init;
  t.tau = tau;
  t.factors = factors;
  t.guard = guard;
  t.target = target;
  t.mode = mode;
  t.jobs = jobs;
  return t;
}

CompareStudy ExperimentConfig::compare(int jobs) const {
  CompareStudy c;
  c.temporal = temporal(jobs);
  c.temporal.semidiscrete = true;
  c.power_cells = power_cells;
  c.power_factor = power_factor;
  return c;
}

}  // namespace rkdg
