#include <cmath>
#include <filesystem>
#include <limits>

#include "attlab/errors.hpp"
#include "attlab/io.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace attlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("attlab_test_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  gen::Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    const double v = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.integer(-300, 300));
    const auto s = io::format_number(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_number(std::nan("")) == "nan");
}

TEST_CASE("property: set csv round trip") {
  gen::Rng rng(17);
  for (int run = 0; run < 100; ++run) {
    const auto a = run % 2 ? rng.scalar_set(20, 5.0) : rng.field_set(10, 17, 1.0 / 18.0, 3.0);
    const auto text = io::set_to_csv(a);
    const auto b = io::set_from_csv(text);
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == a[i]);
    CHECK(io::set_to_csv(b) == text);
  }
  const auto empty = io::set_from_csv(io::set_to_csv(CompactSetSample()));
  CHECK(empty.empty());
  CHECK_THROWS_AS(io::set_from_csv("# norm_tag=abs\nx_0\n1,2\n"), ContractViolation);
  CHECK_THROWS_AS(io::set_from_csv("# norm_tag=abs\nx_0\nabc\n"), ContractViolation);
}

TEST_CASE("trajectory csv round trip") {
  TrajectorySample tr;
  tr.branch = BranchLabel::departure(1, 0.25);
  for (int k = 0; k < 5; ++k) {
    tr.times.push_back(0.1 * k);
    tr.states.push_back(StatePoint::field({1.0 * k, -2.0, 3.5}, 0.25));
  }
  const auto text = io::trajectory_to_csv(tr);
  const auto back = io::trajectory_from_csv(text);
  CHECK(back.branch == tr.branch);
  CHECK(back.times == tr.times);
  CHECK(back.states == tr.states);
  CHECK(text.find("t,x_0,x_1,x_2") != std::string::npos);
}

TEST_CASE("table csv") {
  const auto t = io::table_from_csv("t,value\n0,1\n1,2.5\n");
  REQUIRE(t.size() == 2);
  CHECK(t[1].second == 2.5);
  CHECK_THROWS_AS(io::table_from_csv("0,1\nx,y\n"), ContractViolation);
  CHECK_THROWS_AS(io::table_from_csv("t,value\n"), ContractViolation);
}

TEST_CASE("report json round trip") {
  VerifierReport r;
  r.check_id = "demo";
  r.passed = false;
  r.tolerance = 1e-3;
  r.margin = -0.25;
  r.curve = {{0.0, 1.0}, {1.0, std::numeric_limits<double>::infinity()}};
  r.notes = {"first", "second"};
  r.evidence["ratio"] = 1.25;
  VerifierReport sub;
  sub.check_id = "inner";
  sub.passed = true;
  r.sub_checks.push_back(sub);
  const auto text = io::report_to_json(r);
  const auto back = io::report_from_json(text);
  CHECK(back.check_id == "demo");
  CHECK_FALSE(back.passed);
  CHECK(back.curve.size() == 2);
  CHECK(std::isinf(back.curve[1].value));
  CHECK(back.evidence.at("ratio") == 1.25);
  REQUIRE(back.sub_checks.size() == 1);
  CHECK(back.sub_checks[0].check_id == "inner");
  CHECK(io::report_to_json(back) == text);
  CHECK_THROWS_AS(io::report_from_json("{"), ContractViolation);
  CHECK(io::curve_to_csv(r).find("param,value\n0,1\n") != std::string::npos);
}

TEST_CASE("family files and atomic writes") {
  const auto dir = scratch("family");
  const SetFamily fam({0.0, 0.5}, {CompactSetSample::interval(-1.0, 1.0, 5), CompactSetSample::interval(0.0, 2.0, 3)},
                      "closed-form");
  io::write_family(fam, dir);
  const auto back = io::read_family(dir);
  CHECK(back.source() == "closed-form");
  CHECK(back.times() == fam.times());
  CHECK(back.sections()[1].points() == fam.sections()[1].points());
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    CHECK(e.path().string().find(".tmp") == std::string::npos);
    ++files;
  }
  CHECK(files == 3);
  fs::remove_all(dir);
}

TEST_CASE("field cache") {
  CHECK(io::fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(io::fnv1a("a") == 0xaf63dc4c8601ec8cull);
  const auto dir = scratch("cache");
  const io::FieldCache cache(dir);
  const auto f = StatePoint::field({0.5, 1.0, 0.25}, 0.25);
  CHECK_FALSE(cache.load("xi|2|0").has_value());
  cache.store("xi|2|0", f);
  const auto hit = cache.load("xi|2|0");
  REQUIRE(hit.has_value());
  CHECK(*hit == f);
  CHECK_FALSE(cache.load("xi|2|1").has_value());

  const io::FieldCache off(dir, false);
  CHECK_FALSE(off.load("xi|2|0").has_value());
  off.store("other", f);
  CHECK_FALSE(fs::exists(off.path_for("other")));
  fs::remove_all(dir);
}
