#pragma once

// Scenario configuration: a JSON document naming a model, its parameters, a
// tolerance schedule and a list of checks.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attlab/chafee.hpp"
#include "attlab/models_scalar.hpp"
#include "attlab/parabolic.hpp"
#include "attlab/verify.hpp"
#include "json.hpp"

namespace attlab::tools {

using nlohmann::json;

enum class ModelKind { linear, ode_inclusion, chafee, parabolic_inclusion };

std::string_view to_string(ModelKind k);

struct Sampling {
  double radius = 4.0;         // half-width of the default bounded set
  std::size_t points = 2001;   // points per closed-form section
  std::size_t ic_count = 16;   // seed bank size for PDE attractor samples
  int departures = 51;         // departure bank for the parabolic attractor
  double eps = 1e-3;           // merge tolerance of numerical sections
  double depth = 10.0;         // pullback depth of numerical sections
};

struct CheckSpec {
  std::string name;   // unique within the scenario
  std::string check;  // check id
  json schedule;      // overrides of the top-level schedule
  json args;
};

struct ScenarioConfig {
  std::string id;
  ModelKind model = ModelKind::linear;
  json params;
  json schedule;
  std::uint64_t seed = 1;
  std::string output_dir = "attlab-out";
  Sampling sampling;
  std::vector<CheckSpec> checks;
  std::map<std::string, bool> expect;  // name -> expected verdict
  std::filesystem::path base_dir;      // for relative csv paths
  json document;                       // the validated input

  LinearModel linear() const;
  InclusionModel inclusion() const;
  ChafeeModel chafee() const;
  ParabolicInclusionModel parabolic() const;

  /// Top-level schedule with `overrides` applied.
  ToleranceSchedule schedule_for(const json& overrides = json::object()) const;
  /// Expected verdict of a check; true unless the expect map says otherwise.
  bool expected(const std::string& name) const;
  const CheckSpec* find_check(const std::string& name_or_id) const;
  /// Stable text of the model part, for cache keys.
  std::string model_key() const;
};

/// Raised with one diagnostic per line.
struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> diags);
  std::vector<std::string> diagnostics;
};

/// The published schema.
const json& config_schema();

/// Validation by the interpreter in schema.cpp; empty when valid.
std::vector<std::string> schema_diagnostics(const json& doc, const json& schema);

/// Schema validation, then model invariants; throws ConfigError or
/// ContractViolation.
ScenarioConfig parse_config(const json& doc, std::filesystem::path base_dir = {});

/// A path to a JSON file, or the id of a built-in scenario.
ScenarioConfig load_config(const std::string& path_or_id);

TimeFn time_fn_from_json(const json& j, const std::filesystem::path& base_dir = {});

/// Number list, or {from, to, count} / {from, to, step}.
std::vector<double> grid_from_json(const json& j);

}  // namespace attlab::tools
