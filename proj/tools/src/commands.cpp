#include "commands.hpp"

#include <iomanip>
#include <mutex>
#include <sstream>

#include "attlab/io.hpp"
#include "checks.hpp"
#include "jobs.hpp"
#include "scenarios.hpp"

namespace attlab::tools {

namespace fs = std::filesystem;

namespace {

ScenarioConfig load(const GlobalOptions& g) {
  if (g.config.empty()) throw ConfigError({"--config is required (a file or one of the built-in scenarios)"});
  auto cfg = load_config(g.config);
  if (g.seed) cfg.seed = *g.seed;
  if (!g.out.empty()) cfg.output_dir = g.out;
  return cfg;
}

ModelContext context(ScenarioConfig cfg, const GlobalOptions& g) {
  const fs::path cache_dir = fs::path(cfg.output_dir) / ".cache";
  return ModelContext(std::move(cfg), io::FieldCache(cache_dir, !g.no_cache));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string indexed(const std::string& stem, std::size_t k, const char* ext) {
  std::ostringstream os;
  os << stem << '_' << std::setw(3) << std::setfill('0') << k << ext;
  return os.str();
}

struct Outcome {
  std::string status;  // PASS | FAIL | XFAIL | XPASS | ERROR
  int code = exit_ok;
};

Outcome judge(bool passed, bool expected) {
  if (passed && expected) return {"PASS", exit_ok};
  if (!passed && !expected) return {"XFAIL", exit_ok};
  if (!passed) return {"FAIL", exit_unexpected};
  return {"XPASS", exit_unexpected};
}

void write_check(const fs::path& dir, const std::string& name, const VerifierReport& rep) {
  io::write_atomic(dir / (name + ".json"), io::report_to_json(rep));
  io::write_atomic(dir / (name + "_curve.csv"), io::curve_to_csv(rep));
}

}  // namespace

std::vector<double> parse_time_list(const std::string& s) {
  auto number = [&](const std::string& x) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(x, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != x.size()) throw ContractViolation("bad time list '" + s + "'");
    return v;
  };
  if (s.find(':') != std::string::npos) {
    const auto a = s.find(':');
    const auto b = s.find(':', a + 1);
    if (b == std::string::npos) throw ContractViolation("time range must be from:to:count");
    const double lo = number(s.substr(0, a));
    const double hi = number(s.substr(a + 1, b - a - 1));
    const double n = number(s.substr(b + 1));
    if (n < 1 || n != std::floor(n)) throw ContractViolation("time range count must be a positive integer");
    return grid_from_json(json{{"from", lo}, {"to", hi}, {"count", static_cast<int>(n)}});
  }
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(number(item));
  if (out.empty()) throw ContractViolation("empty time list");
  return out;
}

int cmd_simulate(const GlobalOptions& g, const SimulateArgs& a, std::ostream& out) {
  const auto cfg = load(g);
  if (!(a.t >= a.t0)) throw ContractViolation("simulate: --t must be >= --t0");
  if (a.steps < 1) throw ContractViolation("simulate: --steps must be positive");
  const auto ctx = context(cfg, g);
  const auto x = ctx.parse_ic(a.ic);
  std::vector<double> times;
  for (int i = 0; i <= a.steps; ++i) times.push_back(a.t0 + (a.t - a.t0) * i / a.steps);
  times.back() = a.t;
  const auto paths = evolve_path(ctx.process(), times, a.t0, x, a.budget);

  const fs::path dir = cfg.output_dir;
  json index = json::array();
  for (std::size_t k = 0; k < paths.size(); ++k) {
    TrajectorySample tr{times, paths[k].states, paths[k].label};
    const auto name = indexed("trajectory", k, ".csv");
    io::write_atomic(dir / name, io::trajectory_to_csv(tr));
    index.push_back({{"branch", paths[k].label.to_string()}, {"path", name}});
  }
  io::write_atomic(dir / "trajectories.json",
                   dump({{"model", to_string(cfg.model)}, {"ic", a.ic}, {"t0", a.t0}, {"t", a.t},
                         {"budget", a.budget}, {"branches", index}}));
  out << paths.size() << " branch(es) written to " << dir.string() << '\n';
  return exit_ok;
}

int cmd_attractor(const GlobalOptions& g, const AttractorArgs& a, std::ostream& out) {
  auto cfg = load(g);
  if (a.depth) cfg.sampling.depth = *a.depth;
  if (a.kind != "pullback" && a.kind != "autonomous")
    throw ContractViolation("attractor: --kind must be pullback or autonomous");
  const auto ctx = context(cfg, g);
  SetFamily fam;
  if (a.kind == "pullback") {
    fam = ctx.family(parse_time_list(a.times));
  } else {
    fam = SetFamily({0.0}, {ctx.limit_attractor()}, "autonomous-limit");
  }
  const fs::path dir = fs::path(cfg.output_dir) / ("attractor-" + a.kind);
  io::write_family(fam, dir);
  out << fam.size() << " section(s) written to " << dir.string() << '\n';
  return exit_ok;
}

int cmd_omega(const GlobalOptions& g, const std::string& kind, std::ostream& out) {
  const auto cfg = load(g);
  const auto ctx = context(cfg, g);
  auto sched = cfg.schedule_for();
  if (g.tol) sched.tol = *g.tol;
  const auto res = compute_limit(ctx, kind, json::object(), sched);
  const fs::path dir = cfg.output_dir;
  const auto points = "omega-" + kind + "_points.csv";
  io::write_atomic(dir / points, io::set_to_csv(res.set));
  io::write_atomic(dir / ("omega-" + kind + ".json"), io::limit_to_json(res, points));
  out << to_string(res.kind) << ": " << res.set.size() << " point(s)";
  if (!res.set.empty() && res.set.norm_tag() == NormTag::abs) {
    const auto h = interval_hull(res.set);
    out << ", hull [" << io::format_number(h.lo) << ", " << io::format_number(h.hi) << "]";
  }
  if (res.min_max_defect) out << ", min-max defect " << io::format_number(*res.min_max_defect);
  out << '\n';
  return exit_ok;
}

int cmd_verify(const GlobalOptions& g, const std::string& check, std::ostream& out) {
  const auto cfg = load(g);
  CheckSpec spec;
  if (const auto* found = cfg.find_check(check)) {
    spec = *found;
  } else if (find_check_info(check)) {
    spec = {check, check, json::object(), json::object()};
  } else {
    throw ConfigError({"unknown check '" + check + "'; available: " + available_checks()});
  }
  const auto ctx = context(cfg, g);
  const auto rep = run_check(ctx, spec, {g.jobs, g.tol});
  write_check(cfg.output_dir, spec.name, rep);
  const auto o = judge(rep.passed, cfg.expected(spec.name));
  out << o.status << ' ' << spec.name << " margin=" << io::format_number(rep.margin) << '\n';
  return o.code;
}

int cmd_reproduce(const GlobalOptions& g, std::ostream& out) {
  auto cfg = load(g);
  if (g.out.empty()) cfg.output_dir = (fs::path(cfg.output_dir) / (cfg.id.empty() ? "scenario" : cfg.id)).string();
  const auto ctx = context(cfg, g);
  const fs::path dir = cfg.output_dir;
  const auto& checks = cfg.checks;
  if (checks.empty()) throw ConfigError({"$.checks: the scenario lists no checks"});

  std::vector<json> entries(checks.size());
  std::vector<int> codes(checks.size(), exit_ok);
  for (std::size_t k = 0; k < checks.size(); ++k)
    entries[k] = {{"name", checks[k].name}, {"check", checks[k].check}, {"status", "PENDING"}};
  std::mutex mu;

  auto write_report = [&](bool final) {
    json summary{{"total", checks.size()}};
    std::map<std::string, int> counts;
    for (const auto& e : entries) ++counts[e.at("status").get<std::string>()];
    for (const auto& [k, v] : counts) summary[k] = v;
    bool ok = final;
    for (int c : codes) ok = ok && c == exit_ok;
    const json report{{"scenario", cfg.id},
                      {"model", to_string(cfg.model)},
                      {"seed", cfg.seed},
                      {"complete", final},
                      {"all_as_expected", ok},
                      {"summary", summary},
                      {"checks", entries}};
    io::write_atomic(dir / "report.json", dump(report));
  };
  write_report(false);

  // checks run side by side, so each one marches its own banks serially
  const RunOptions inner{1, g.tol};
  try {
    run_indexed(checks.size(), g.jobs, [&](std::size_t k) {
      const auto& spec = checks[k];
      json entry = entries[k];
      int code = exit_ok;
      const bool expected = cfg.expected(spec.name);
      entry["expected"] = expected ? "pass" : "fail";
      std::ostringstream err;
      const int rc = guarded(err, [&] {
        const auto rep = run_check(ctx, spec, inner);
        write_check(dir / "checks", spec.name, rep);
        const auto o = judge(rep.passed, expected);
        entry["status"] = o.status;
        entry["passed"] = rep.passed;
        entry["tolerance"] = rep.tolerance;
        entry["margin"] = std::isfinite(rep.margin) ? json(rep.margin) : json(io::format_number(rep.margin));
        entry["report"] = "checks/" + spec.name + ".json";
        entry["curve"] = "checks/" + spec.name + "_curve.csv";
        json ev = json::object();
        for (const auto& [key, v] : rep.evidence) ev[key] = std::isfinite(v) ? json(v) : json(io::format_number(v));
        entry["evidence"] = ev;
        code = o.code;
        return exit_ok;
      });
      if (rc != exit_ok) {
        entry["status"] = "ERROR";
        entry["error"] = err.str();
        code = rc;
      }
      std::lock_guard lock(mu);
      entries[k] = std::move(entry);
      codes[k] = code;
      write_report(false);
    });
  } catch (...) {
    write_report(false);
    throw;
  }
  write_report(true);

  int code = exit_ok;
  for (int c : codes)
    if (c != exit_ok && (code == exit_ok || code == exit_unexpected)) code = c;
  for (const auto& e : entries) {
    out << std::left << std::setw(6) << e.at("status").get<std::string>() << ' ' << std::setw(28)
        << e.at("name").get<std::string>();
    if (e.contains("margin")) out << " margin=" << e.at("margin").dump();
    if (e.contains("error")) out << ' ' << e.at("error").get<std::string>();
    out << '\n';
  }
  out << "report: " << (dir / "report.json").string() << '\n';
  return code;
}

int cmd_schema(std::ostream& out) {
  out << config_schema().dump(2) << '\n';
  return exit_ok;
}

int cmd_list(std::ostream& out) {
  out << "scenarios:\n";
  for (const auto& id : example_ids()) out << "  " << id << '\n';
  out << "checks:\n";
  for (const auto& c : check_registry()) out << "  " << std::left << std::setw(24) << c.id << c.summary << '\n';
  return exit_ok;
}

}  // namespace attlab::tools
