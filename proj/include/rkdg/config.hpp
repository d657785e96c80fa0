#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rkdg/error.hpp"
#include "rkdg/harness.hpp"

namespace rkdg {

/// Config rejection with the offending field path and (when known) the
/// 1-based line in the source text.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(const std::string& source, int line, const std::string& field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

inline constexpr int kSchemaVersion = 1;

/// One experiment, validated against the versioned JSON schema. Study kinds
/// are spatial, temporal, compare_semidiscrete, stability_scan and operator
/// (scheme + cells only, used by dump-operator).
struct ExperimentConfig {
  std::string name;
  std::string study;
  SchemeSpec scheme;
  RKScheme rk = rk_preset("ssprk3");
  double T = 1.0;
  std::vector<int> cells;
  std::string init = "l2";
  TauPolicy tau;
  CflGuard guard;
  double target = 0.0;
  RateMode mode = RateMode::Report;
  std::vector<double> factors = {1.0, 0.5, 0.25, 0.125};
  std::vector<int> power_cells;
  double power_factor = 2.0;
  std::vector<double> lambdas;
  std::string expect = "any";  ///< stability_scan: any, empty or nonempty
  nlohmann::json raw;

  SpatialStudy spatial(int jobs) const;
  TemporalStudy temporal(int jobs) const;
  CompareStudy compare(int jobs) const;
};

ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

}  // namespace rkdg
