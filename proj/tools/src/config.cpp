#include "config.hpp"

#include <fstream>
#include <sstream>

#include "attlab/errors.hpp"
#include "attlab/io.hpp"
#include "scenarios.hpp"

namespace attlab::tools {

namespace {

constexpr const char* schema_text = R"json({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "attlab scenario",
  "type": "object",
  "required": ["model", "params"],
  "additionalProperties": false,
  "properties": {
    "id": {"type": "string"},
    "description": {"type": "string"},
    "model": {"enum": ["linear", "ode-inclusion", "chafee", "parabolic-inclusion"]},
    "params": {"type": "object"},
    "schedule": {"$ref": "#/$defs/schedule"},
    "seed": {"type": "integer", "minimum": 0},
    "output_dir": {"type": "string"},
    "sampling": {"$ref": "#/$defs/sampling"},
    "checks": {"type": "array", "items": {"$ref": "#/$defs/check"}},
    "expect": {"type": "object", "additionalProperties": {"enum": ["pass", "fail"]}}
  },
  "allOf": [
    {"if": {"properties": {"model": {"const": "linear"}}},
     "then": {"properties": {"params": {"$ref": "#/$defs/linear"}}}},
    {"if": {"properties": {"model": {"const": "ode-inclusion"}}},
     "then": {"properties": {"params": {"$ref": "#/$defs/ode_inclusion"}}}},
    {"if": {"properties": {"model": {"const": "chafee"}}},
     "then": {"properties": {"params": {"$ref": "#/$defs/chafee"}}}},
    {"if": {"properties": {"model": {"const": "parabolic-inclusion"}}},
     "then": {"properties": {"params": {"$ref": "#/$defs/parabolic_inclusion"}}}}
  ],
  "$defs": {
    "time_fn": {
      "type": "object",
      "required": ["kind"],
      "properties": {
        "kind": {"enum": ["constant", "affine", "sinusoidal", "exp_ramp", "table"]},
        "value": {"type": "number"},
        "c0": {"type": "number"},
        "c1": {"type": "number"},
        "freq": {"type": "number"},
        "phase": {"type": "number"},
        "limit": {"type": "number"},
        "initial": {"type": "number"},
        "rate": {"type": "number", "exclusiveMinimum": 0},
        "onset": {"type": "number"},
        "knots": {"type": "array", "minItems": 1,
                  "items": {"type": "array", "minItems": 2, "items": {"type": "number"}}},
        "csv": {"type": "string"}
      },
      "additionalProperties": false,
      "allOf": [
        {"if": {"properties": {"kind": {"const": "constant"}}}, "then": {"required": ["value"]}},
        {"if": {"properties": {"kind": {"const": "affine"}}}, "then": {"required": ["c0", "c1"]}},
        {"if": {"properties": {"kind": {"const": "sinusoidal"}}}, "then": {"required": ["c0", "c1"]}},
        {"if": {"properties": {"kind": {"const": "exp_ramp"}}}, "then": {"required": ["limit", "initial", "rate"]}},
        {"if": {"properties": {"kind": {"const": "table"}}},
         "then": {"anyOf": [{"required": ["knots"]}, {"required": ["csv"]}]}}
      ]
    },
    "grid": {
      "anyOf": [
        {"type": "array", "items": {"type": "number"}},
        {"type": "object", "required": ["from", "to", "count"], "additionalProperties": false,
         "properties": {"from": {"type": "number"}, "to": {"type": "number"},
                        "count": {"type": "integer", "minimum": 1}}},
        {"type": "object", "required": ["from", "to", "step"], "additionalProperties": false,
         "properties": {"from": {"type": "number"}, "to": {"type": "number"},
                        "step": {"type": "number", "exclusiveMinimum": 0}}}
      ]
    },
    "linear": {
      "type": "object",
      "required": ["forcing"],
      "additionalProperties": false,
      "properties": {"drift": {"type": "number"}, "forcing": {"$ref": "#/$defs/time_fn"}}
    },
    "ode_inclusion": {
      "type": "object",
      "required": ["lambda", "b"],
      "additionalProperties": false,
      "properties": {"lambda": {"type": "number", "exclusiveMinimum": 0}, "b": {"$ref": "#/$defs/time_fn"}}
    },
    "chafee": {
      "type": "object",
      "required": ["lambda", "b"],
      "additionalProperties": false,
      "properties": {
        "lambda": {"type": "number", "exclusiveMinimum": 1, "exclusiveMaximum": 4},
        "b": {"$ref": "#/$defs/time_fn"},
        "n": {"type": "integer", "minimum": 15},
        "dt": {"type": "number", "exclusiveMinimum": 0, "maximum": 0.01}
      }
    },
    "parabolic_inclusion": {
      "type": "object",
      "required": ["b", "omega"],
      "additionalProperties": false,
      "properties": {
        "b": {"$ref": "#/$defs/time_fn"},
        "omega": {"$ref": "#/$defs/time_fn"},
        "n": {"type": "integer", "minimum": 15},
        "dt": {"type": "number", "exclusiveMinimum": 0, "maximum": 0.01}
      }
    },
    "schedule": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "grid": {"$ref": "#/$defs/grid"},
        "budget": {"type": "integer", "minimum": 1},
        "eps": {"type": "number", "exclusiveMinimum": 0},
        "floor": {"type": "number", "minimum": 0},
        "horizon": {"type": "number"},
        "window": {"type": "number", "minimum": 0},
        "recurrence_span": {"type": "number", "minimum": 0},
        "samples": {"type": "integer", "minimum": 2}
      }
    },
    "sampling": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "radius": {"type": "number", "exclusiveMinimum": 0},
        "points": {"type": "integer", "minimum": 1},
        "ic_count": {"type": "integer", "minimum": 8},
        "departures": {"type": "integer", "minimum": 2},
        "eps": {"type": "number", "exclusiveMinimum": 0},
        "depth": {"type": "number", "exclusiveMinimum": 0}
      }
    },
    "check": {
      "type": "object",
      "required": ["check"],
      "additionalProperties": false,
      "properties": {
        "name": {"type": "string"},
        "check": {"type": "string"},
        "schedule": {"$ref": "#/$defs/schedule"},
        "args": {"type": "object"}
      }
    }
  }
})json";

double num(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

ModelKind model_from_string(const std::string& s) {
  if (s == "linear") return ModelKind::linear;
  if (s == "ode-inclusion") return ModelKind::ode_inclusion;
  if (s == "chafee") return ModelKind::chafee;
  if (s == "parabolic-inclusion") return ModelKind::parabolic_inclusion;
  throw ConfigError({"$.model: unknown model '" + s + "'"});
}

std::string join(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += (s.empty() ? "" : "\n") + l;
  return s;
}

}  // namespace

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::linear: return "linear";
    case ModelKind::ode_inclusion: return "ode-inclusion";
    case ModelKind::chafee: return "chafee";
    case ModelKind::parabolic_inclusion: return "parabolic-inclusion";
  }
  return "?";
}

ConfigError::ConfigError(std::vector<std::string> diags)
    : std::runtime_error(join(diags)), diagnostics(std::move(diags)) {}

const json& config_schema() {
  static const json schema = json::parse(schema_text);
  return schema;
}

TimeFn time_fn_from_json(const json& j, const std::filesystem::path& base_dir) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") return TimeFn::constant(j.at("value").get<double>());
  if (kind == "affine") return TimeFn::affine(j.at("c0").get<double>(), j.at("c1").get<double>());
  if (kind == "sinusoidal")
    return TimeFn::sinusoidal(j.at("c0").get<double>(), j.at("c1").get<double>(), num(j, "freq", 1.0),
                              num(j, "phase", 0.0));
  if (kind == "exp_ramp")
    return TimeFn::exp_ramp(j.at("limit").get<double>(), j.at("initial").get<double>(),
                            j.at("rate").get<double>(), num(j, "onset", 0.0));
  if (kind == "table") {
    std::vector<std::pair<double, double>> knots;
    if (j.contains("knots")) {
      for (const auto& k : j.at("knots")) knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
    } else {
      std::filesystem::path p = j.at("csv").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      knots = io::table_from_csv(io::read_file(p));
    }
    return TimeFn::table(std::move(knots));
  }
  throw ConfigError({"time function: unknown kind '" + kind + "'"});
}

std::vector<double> grid_from_json(const json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  const double a = j.at("from").get<double>();
  const double b = j.at("to").get<double>();
  std::size_t n = 0;
  if (j.contains("count")) {
    n = j.at("count").get<std::size_t>();
  } else {
    n = static_cast<std::size_t>(std::llround(std::abs(b - a) / j.at("step").get<double>())) + 1;
  }
  std::vector<double> out;
  if (n == 1) return {a};
  for (std::size_t i = 0; i < n; ++i) out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

LinearModel ScenarioConfig::linear() const {
  return {num(params, "drift", -1.0), time_fn_from_json(params.at("forcing"), base_dir)};
}

InclusionModel ScenarioConfig::inclusion() const {
  InclusionModel m{params.at("lambda").get<double>(), time_fn_from_json(params.at("b"), base_dir)};
  m.validate();
  return m;
}

ChafeeModel ScenarioConfig::chafee() const {
  ChafeeModel m;
  m.lambda = params.at("lambda").get<double>();
  m.b = time_fn_from_json(params.at("b"), base_dir);
  m.grid = Grid1D::chafee(params.value("n", std::size_t{127}));
  m.dt = num(params, "dt", 0.005);
  m.validate();
  return m;
}

ParabolicInclusionModel ScenarioConfig::parabolic() const {
  ParabolicInclusionModel m;
  m.b = time_fn_from_json(params.at("b"), base_dir);
  m.omega = time_fn_from_json(params.at("omega"), base_dir);
  m.grid = Grid1D::unit(params.value("n", std::size_t{127}));
  m.dt = num(params, "dt", 0.005);
  m.validate();
  return m;
}

ToleranceSchedule ScenarioConfig::schedule_for(const json& overrides) const {
  json s = schedule;
  for (const auto& [k, v] : overrides.items()) s[k] = v;
  ToleranceSchedule out;
  out.tol = num(s, "tol", out.tol);
  if (s.contains("grid")) out.grid = grid_from_json(s.at("grid"));
  out.budget = s.value("budget", out.budget);
  out.eps = num(s, "eps", out.eps);
  out.floor = num(s, "floor", out.floor);
  out.horizon = num(s, "horizon", out.horizon);
  out.window = num(s, "window", out.window);
  out.recurrence_span = num(s, "recurrence_span", out.recurrence_span);
  out.samples = s.value("samples", out.samples);
  return out;
}

bool ScenarioConfig::expected(const std::string& name) const {
  const auto it = expect.find(name);
  return it == expect.end() || it->second;
}

const CheckSpec* ScenarioConfig::find_check(const std::string& name_or_id) const {
  for (const auto& c : checks)
    if (c.name == name_or_id) return &c;
  for (const auto& c : checks)
    if (c.check == name_or_id) return &c;
  return nullptr;
}

std::string ScenarioConfig::model_key() const {
  return std::string(to_string(model)) + "|" + params.dump();
}

ScenarioConfig parse_config(const json& doc, std::filesystem::path base_dir) {
  auto diags = schema_diagnostics(doc, config_schema());
  if (!diags.empty()) throw ConfigError(std::move(diags));

  ScenarioConfig cfg;
  cfg.document = doc;
  cfg.base_dir = std::move(base_dir);
  cfg.id = doc.value("id", std::string());
  cfg.model = model_from_string(doc.at("model").get<std::string>());
  cfg.params = doc.at("params");
  cfg.schedule = doc.value("schedule", json::object());
  cfg.seed = doc.value("seed", std::uint64_t{1});
  cfg.output_dir = doc.value("output_dir", cfg.output_dir);
  if (doc.contains("sampling")) {
    const auto& s = doc.at("sampling");
    cfg.sampling.radius = num(s, "radius", cfg.sampling.radius);
    cfg.sampling.points = s.value("points", cfg.sampling.points);
    cfg.sampling.ic_count = s.value("ic_count", cfg.sampling.ic_count);
    cfg.sampling.departures = s.value("departures", cfg.sampling.departures);
    cfg.sampling.eps = num(s, "eps", cfg.sampling.eps);
    cfg.sampling.depth = num(s, "depth", cfg.sampling.depth);
  }
  if (doc.contains("checks")) {
    for (const auto& c : doc.at("checks")) {
      CheckSpec spec;
      spec.check = c.at("check").get<std::string>();
      spec.name = c.value("name", spec.check);
      spec.schedule = c.value("schedule", json::object());
      spec.args = c.value("args", json::object());
      for (const auto& other : cfg.checks)
        if (other.name == spec.name) throw ConfigError({"$.checks: duplicate check name '" + spec.name + "'"});
      cfg.checks.push_back(std::move(spec));
    }
  }
  if (doc.contains("expect"))
    for (const auto& [k, v] : doc.at("expect").items()) cfg.expect[k] = v.get<std::string>() == "pass";

  // model invariants beyond the schema
  switch (cfg.model) {
    case ModelKind::linear: (void)cfg.linear(); break;
    case ModelKind::ode_inclusion: (void)cfg.inclusion(); break;
    case ModelKind::chafee: (void)cfg.chafee(); break;
    case ModelKind::parabolic_inclusion: (void)cfg.parabolic(); break;
  }
  cfg.schedule_for().validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path_or_id) {
  const std::filesystem::path p(path_or_id);
  if (!std::filesystem::exists(p)) {
    if (auto doc = builtin_scenario(path_or_id)) return parse_config(*doc);
    std::string known;
    for (const auto& id : example_ids()) known += " " + id;
    throw ConfigError({"config '" + path_or_id + "' is neither a file nor a built-in scenario (known:" + known + ")"});
  }
  json doc;
  try {
    doc = json::parse(io::read_file(p));
  } catch (const json::parse_error& e) {
    throw ConfigError({p.string() + ": " + e.what()});
  }
  return parse_config(doc, p.parent_path());
}

}  // namespace attlab::tools
