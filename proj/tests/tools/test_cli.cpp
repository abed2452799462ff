#include <sys/wait.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("attlab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Run attlab(const std::string& args, const fs::path& dir) {
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd = std::string("\"") + ATTLAB_BIN + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

std::string last_line(const std::string& text) {
  auto end = text.find_last_not_of('\n');
  auto start = text.rfind('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

// every regular file below dir except the cache and captured streams
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir).string();
    if (rel.starts_with(".cache") || rel.find("/.cache") != std::string::npos) continue;
    if (rel.starts_with("std")) continue;
    files[rel] = slurp(e.path());
  }
  return files;
}

}  // namespace

TEST_CASE("simulate of the linear example ends at 1/e") {
  const auto dir = scratch("simulate");
  const auto r = attlab("--config linear-t --out " + (dir / "o").string() + " simulate --t0 0 --t 1 --ic value:0", dir);
  REQUIRE(r.code == 0);
  const auto row = last_line(slurp(dir / "o" / "trajectory_000.csv"));
  const auto comma = row.find(',');
  CHECK(std::stod(row.substr(0, comma)) == doctest::Approx(1.0));
  CHECK(std::abs(std::stod(row.substr(comma + 1)) - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("simulate of the inclusion writes one file per branch") {
  const auto dir = scratch("budget");
  const auto r = attlab("--config ode-inclusion-aa --out " + (dir / "o").string() +
                            " simulate --t0 0 --t 3 --ic value:0 --budget 5",
                        dir);
  REQUIRE(r.code == 0);
  int csvs = 0;
  for (const auto& e : fs::directory_iterator(dir / "o"))
    if (e.path().extension() == ".csv") ++csvs;
  CHECK(csvs == 5);
  CHECK(read_json(dir / "o" / "trajectories.json").at("branches").size() == 5);
}

TEST_CASE("invalid configs are rejected before any computation") {
  const auto dir = scratch("badcfg");
  std::ofstream(dir / "bad.json") << R"({"model": "chafee", "params": {"lambda": 2, "dt": 1,
      "b": {"kind": "constant", "value": 1}}})";
  const auto r = attlab("--config " + (dir / "bad.json").string() + " --out " + (dir / "o").string() + " simulate", dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("$.params.dt") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "o"));

  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK(attlab("--config " + (dir / "broken.json").string() + " simulate", dir).code == 1);
  CHECK(attlab("--config no-such-scenario simulate", dir).code == 1);
  CHECK(attlab("simulate", dir).code == 1);
}

TEST_CASE("the omega-0 condition fails for y' = -y + sin t") {
  const auto dir = scratch("cond");
  const auto r = attlab("--config linear-sin --out " + (dir / "o").string() + " verify cond_omega0", dir);
  CHECK(r.code == 0);  // expected failure
  CHECK(r.out.find("XFAIL") != std::string::npos);
  const auto rep = read_json(dir / "o" / "cond_omega0.json");
  CHECK_FALSE(rep.at("passed").get<bool>());
  CHECK(std::abs(rep.at("evidence").at("min_max_defect").get<double>() - std::sqrt(0.5)) < 1e-2);
  CHECK(fs::exists(dir / "o" / "cond_omega0_curve.csv"));
}

TEST_CASE("aa convergence passes for the inclusion") {
  const auto dir = scratch("aa");
  const auto r = attlab("--config ode-inclusion-aa --out " + (dir / "o").string() + " verify aa_convergence", dir);
  CHECK(r.code == 0);
  CHECK(read_json(dir / "o" / "aa_convergence.json").at("passed").get<bool>());
}

TEST_CASE("limsup hull of the counterexample") {
  const auto dir = scratch("limsup");
  const auto r = attlab("--config ode-inclusion-counterexample --out " + (dir / "o").string() + " omega limsup", dir);
  REQUIRE(r.code == 0);
  const auto lim = read_json(dir / "o" / "omega-limsup.json");
  const double edge = 2.0 + std::sqrt(0.5);
  CHECK(std::abs(lim.at("hull").at(0).get<double>() + edge) < 1e-2);
  CHECK(std::abs(lim.at("hull").at(1).get<double>() - edge) < 1e-2);
  CHECK(fs::exists(dir / "o" / lim.at("points_csv_path").get<std::string>()));
  CHECK(attlab("--config linear-t --out " + (dir / "p").string() + " omega limsup", dir).code == 1);
}

TEST_CASE("exit codes for usage, numerical and expectation failures") {
  const auto dir = scratch("codes");
  const auto unknown = attlab("--config linear-t verify no_such_check", dir);
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("cond_omega0") != std::string::npos);
  CHECK(attlab("--config linear-t simulate --ic sin:1", dir).code == 1);
  CHECK(attlab("--config chafee-aa simulate --ic cos:1", dir).code == 1);
  CHECK(attlab("--config linear-t --jobs 0 list", dir).code == 1);
  CHECK(attlab("--config chafee-aa --out " + (dir / "blow").string() + " simulate --t 5 --ic const:1000", dir).code ==
        2);

  // a check expected to fail that passes, and one expected to pass that fails
  std::ofstream(dir / "xpass.json") << R"({"id": "xpass", "model": "linear",
      "params": {"drift": -1, "forcing": {"kind": "affine", "c0": 0, "c1": 1}},
      "schedule": {"tol": 1e-8},
      "checks": [{"check": "pullback_attraction", "args": {"times": [0], "depths": [10, 20, 40]}}],
      "expect": {"pullback_attraction": "fail"}})";
  const auto xpass = attlab("--config " + (dir / "xpass.json").string() + " --out " + (dir / "x").string() +
                                " verify pullback_attraction",
                            dir);
  CHECK(xpass.code == 3);
  CHECK(xpass.out.find("XPASS") != std::string::npos);

  std::ofstream(dir / "fail.json") << R"({"id": "fail", "model": "linear",
      "params": {"drift": -1, "forcing": {"kind": "sinusoidal", "c0": 0, "c1": 1}},
      "schedule": {"tol": 2e-2, "horizon": 50, "window": 12, "recurrence_span": 6,
                   "grid": {"from": 38, "to": 50, "count": 11}},
      "checks": [{"check": "cond_omega0", "args": {"sets": [{"points": [0]}], "family": {"from": 0, "to": 50, "count": 501}}}]})";
  const auto fail = attlab("--config " + (dir / "fail.json").string() + " --out " + (dir / "f").string() + " reproduce", dir);
  CHECK(fail.code == 3);
  CHECK_FALSE(read_json(dir / "f" / "report.json").at("all_as_expected").get<bool>());
}

TEST_CASE("reproduce of the linear examples") {
  for (const std::string id : {"linear-t", "linear-sin"}) {
    const auto dir = scratch("repro_" + id);
    const auto r = attlab("reproduce " + id + " --out " + (dir / "o").string(), dir);
    CHECK(r.code == 0);
    const auto rep = read_json(dir / "o" / "report.json");
    CHECK(rep.at("complete").get<bool>());
    CHECK(rep.at("all_as_expected").get<bool>());
    CHECK(rep.at("scenario").get<std::string>() == id);
    for (const auto& e : rep.at("checks")) CHECK(fs::exists(dir / "o" / e.at("report").get<std::string>()));
  }
}

TEST_CASE("reproduce is deterministic in seed, jobs and caching") {
  const auto dir = scratch("determinism");
  const auto a = attlab("reproduce ode-inclusion-aa --seed 7 --jobs 1 --out " + (dir / "a").string(), dir);
  const auto b = attlab("reproduce ode-inclusion-aa --seed 7 --jobs 4 --no-cache --out " + (dir / "b").string(), dir);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  const auto ta = tree(dir / "a");
  CHECK(ta.size() > 5);
  CHECK(ta == tree(dir / "b"));
  CHECK(read_json(dir / "a" / "report.json").at("seed").get<std::uint64_t>() == 7);
}

TEST_CASE("seed changes random banks and tol overrides schedules") {
  const auto dir = scratch("seed");
  REQUIRE(attlab("--config parabolic-aa --seed 1 --out " + (dir / "a").string() + " verify positivity", dir).code == 0);
  REQUIRE(attlab("--config parabolic-aa --seed 2 --out " + (dir / "b").string() + " verify positivity", dir).code == 0);
  CHECK(slurp(dir / "a" / "positivity.json") != slurp(dir / "b" / "positivity.json"));

  // an absurdly tight tolerance turns a pass into a failure
  const auto tight = attlab("--config linear-t --tol 1e-300 --out " + (dir / "t").string() + " verify forward_attraction", dir);
  CHECK(tight.code == 3);
  CHECK(read_json(dir / "t" / "forward_attraction.json").at("tolerance").get<double>() == 1e-300);
}

TEST_CASE("attractor families and the schema command") {
  const auto dir = scratch("attractor");
  const auto r = attlab("--config ode-inclusion-aa --out " + (dir / "o").string() +
                            " attractor --kind pullback --times 0,1,2",
                        dir);
  REQUIRE(r.code == 0);
  const auto fam = read_json(dir / "o" / "attractor-pullback" / "family.json");
  CHECK(fam.at("sections").size() == 3);
  CHECK(attlab("--config linear-t attractor --kind autonomous", dir).code == 1);

  const auto s = attlab("schema", dir);
  REQUIRE(s.code == 0);
  const auto schema = json::parse(s.out);
  CHECK(schema.at("properties").contains("model"));
  const auto l = attlab("list", dir);
  CHECK(l.out.find("chafee-aa") != std::string::npos);
}
