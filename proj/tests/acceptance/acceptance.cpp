// Acceptance battery. Each criterion prints its clauses followed by one
// "C<n> PASS|FAIL" line. Tolerances and parameters are fixed here.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "attlab/errors.hpp"
#include "attlab/io.hpp"
#include "attlab/limits.hpp"
#include "attlab/models_scalar.hpp"
#include "attlab/setcalc.hpp"
#include "checks.hpp"
#include "config.hpp"
#include "context.hpp"
#include "scenarios.hpp"

using namespace attlab;
using namespace attlab::tools;

namespace {

constexpr double pi = std::numbers::pi;

std::string num(double x) { return io::format_number(x); }

class Criterion {
 public:
  Criterion(std::string id, double budget_s) : id_(std::move(id)), budget_s_(budget_s) {}

  void clause(const std::string& name, bool pass, const std::string& detail) {
    pass_ = pass_ && pass;
    std::cout << "  " << id_ << " " << name << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << '\n';
  }

  bool finish() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    clause("runtime", s < budget_s_, num(s) + " s (limit " + num(budget_s_) + " s)");
    std::cout << id_ << " " << (pass_ ? "PASS" : "FAIL") << '\n' << std::flush;
    return pass_;
  }

 private:
  std::string id_;
  double budget_s_;
  bool pass_ = true;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json scenario(const std::string& id) { return *builtin_scenario(id); }

ModelContext context(const json& doc) { return ModelContext(parse_config(doc), io::FieldCache("", false)); }

VerifierReport run(const ModelContext& ctx, const std::string& check, json args = json::object(),
                   json schedule = json::object()) {
  return run_check(ctx, {check, check, std::move(schedule), std::move(args)}, {});
}

VerifierReport run_named(const ModelContext& ctx, const std::string& name) {
  return run_check(ctx, *ctx.config().find_check(name), {});
}

json range(double from, double to, int count) { return {{"from", from}, {"to", to}, {"count", count}}; }

double last(const VerifierReport& r) { return r.curve.empty() ? HUGE_VAL : r.curve.back().value; }

std::string verdict(const VerifierReport& r) {
  return std::string(r.passed ? "passed" : "failed") + ", margin " + num(r.margin);
}

double ev(const VerifierReport& r, const std::string& key) {
  const auto it = r.evidence.find(key);
  return it == r.evidence.end() ? NAN : it->second;
}

CompactSetSample single(double x) { return CompactSetSample({StatePoint::scalar(x)}); }

bool c1() {
  Criterion c("C1", 1.0);
  const auto ctx = context(scenario("linear-t"));
  const auto m = ctx.config().linear();
  const auto B = CompactSetSample::interval(-1.0, 1.0, 21);
  double worst = 0.0;
  for (double t : {0.0, 5.0}) worst = std::max(worst, hausdorff(evolve_set(ctx.process(), t, t - 40.0, B, 1), single(t - 1.0)));
  c.clause("pullback section at t0 = t - 40", worst <= 1e-8, "max dist_H to {t - 1} " + num(worst));

  const auto fwd = run(ctx, "forward_attraction", {{"shifts", {-1.0, 0.0, 3.0}}}, {{"grid", range(1, 30, 30)}, {"tol", 1e-6}});
  c.clause("forward attraction of A_r, r in {-1, 0, 3}", fwd.passed, verdict(fwd));

  double rel = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double t = 0.25 * k;
    const double d = hausdorff(single(linear_solution(m, t, 0.0, -1.0)), single(linear_solution(m, t, 0.0, 2.0)));
    rel = std::max(rel, std::abs(d - 3.0 * std::exp(-t)) / (3.0 * std::exp(-t)));
  }
  c.clause("dist_H(A_0(t), A_3(t)) against 3 e^-t on [0, 10]", rel <= 0.01, "max relative error " + num(rel));
  return c.finish();
}

bool c2() {
  Criterion c("C2", 5.0);
  const auto ctx = context(scenario("linear-sin"));
  double worst = 0.0;
  for (int k = 0; k <= 16; ++k) {
    const double t = k * pi / 4.0;
    const auto img = evolve_set(ctx.process(), t, t - 40.0, single(0.0), 1);
    worst = std::max(worst, hausdorff(img, single(0.5 * (std::sin(t) - std::cos(t)))));
  }
  c.clause("a(t) = (sin t - cos t) / 2", worst <= 1e-8, "max error " + num(worst));

  const auto sched = ctx.config().schedule_for(json::object());
  const auto sup = compute_limit(ctx, "limsup", json::object(), sched);
  const auto h = interval_hull(sup.set);
  const double e = std::max(std::abs(h.lo + std::sqrt(0.5)), std::abs(h.hi - std::sqrt(0.5)));
  c.clause("omega hull = +-0.70711", e <= 1e-2, "hull [" + num(h.lo) + ", " + num(h.hi) + "]");

  const auto inf = compute_limit(ctx, "liminf", json::object(), sched);
  const double defect = inf.min_max_defect.value_or(0.0);
  c.clause("omega_0 empty", inf.set.empty() && defect >= 0.69,
           std::to_string(inf.set.size()) + " point(s), min-max defect " + num(defect));

  const auto cond = run_named(ctx, "cond_omega0");
  const auto fwd = run_named(ctx, "forward_attraction");
  c.clause("cond_omega0 fails while forward attraction passes", !cond.passed && fwd.passed,
           "cond_omega0 " + verdict(cond) + "; forward " + verdict(fwd));
  return c.finish();
}

bool c3() {
  Criterion c("C3", 10.0);
  const auto ctx = context(scenario("ode-inclusion-counterexample"));
  const auto m = ctx.config().inclusion();
  double worst = 0.0;
  for (int k = 0; k <= 60; ++k) {
    const double t = -10.0 + 0.5 * k;
    worst = std::max(worst, std::abs(inclusion_xi_M(m, t, +1) - (2.0 + 0.5 * std::sin(t) - 0.5 * std::cos(t))));
  }
  c.clause("xi_M^+(t) = 2 + (sin t - cos t) / 2", worst <= 1e-8, "max error " + num(worst));

  const auto sched = ctx.config().schedule_for(json::object());
  const auto hull_clause = [&](const char* kind, double edge) {
    const auto res = compute_limit(ctx, kind, json::object(), sched);
    if (res.set.empty()) {
      c.clause(std::string(kind) + " hull = +-" + num(edge), false, "empty");
      return;
    }
    const auto h = interval_hull(res.set);
    const double e = std::max(std::abs(h.lo + edge), std::abs(h.hi - edge));
    c.clause(std::string(kind) + " hull = +-" + num(edge), e <= 1e-2, "hull [" + num(h.lo) + ", " + num(h.hi) + "]");
  };
  hull_clause("limsup", 2.0 + std::sqrt(0.5));
  hull_clause("liminf", 2.0 - std::sqrt(0.5));

  const auto fwd = run(ctx, "forward_attraction", {{"B", {{"interval", {-4.0, 4.0, 9}}}}, {"t0", 0.0}},
                       {{"grid", range(1, 20, 20)}, {"tol", 1e-3}, {"floor", 1e-3}});
  c.clause("forward attraction of [xi_M^-, xi_M^+] over t - t0 = 20", fwd.passed, verdict(fwd));
  return c.finish();
}

bool c4() {
  Criterion c("C4", 10.0);
  const auto ctx = context(scenario("ode-inclusion-aa"));
  const auto A = ctx.section(15.0);
  const auto limit = CompactSetSample::interval(-2.0, 2.0, 4001);
  const double d1 = semidist(A, limit);
  const double d2 = semidist(limit, A);
  c.clause("dist(A(15), [-2, 2]) both ways", std::max(d1, d2) <= 1e-3, num(d1) + " and " + num(d2));

  const auto cond = run_named(ctx, "cond_omega0");
  const auto amin = run_named(ctx, "amin");
  const auto pair = run_named(ctx, "cond_omega_pair");
  c.clause("cond_omega0, amin, cond_omega_pair pass", cond.passed && amin.passed && pair.passed,
           "cond_omega0 " + verdict(cond) + "; amin " + verdict(amin) + "; pair " + verdict(pair));
  return c.finish();
}

json chafee_constant() {
  auto doc = scenario("chafee-aa");
  doc["id"] = "chafee-constant";
  doc["params"]["b"] = {{"kind", "constant"}, {"value", 1.0}};
  return doc;
}

bool c5() {
  Criterion c("C5", 120.0);
  const auto ctx = context(chafee_constant());
  const auto st = run(ctx, "stationary_state", json::object(), {{"tol", 1e-10}});
  c.clause("stationary residual of v_1^+", st.passed, "residual " + num(ev(st, "residual")));

  const auto het = run(ctx, "heteroclinic_rate", {{"rel_tol", 0.1}});
  const double p = ev(het, "exponent");
  c.clause("heteroclinic exponent = 1.0 +- 10%", std::abs(p - 1.0) <= 0.1, "exponent " + num(p));

  const auto en = run(ctx, "chafee_energy", {{"runs", 100}, {"t", 10.0}});
  c.clause("energy inequality over 100 runs", en.passed && ev(en, "runs") == 100.0, verdict(en));

  const auto ord = run(ctx, "chafee_order_interval", {{"runs", 20}, {"t", 10.0}, {"tol", 1e-6}});
  c.clause("order interval -xi_M^+ <= u <= xi_M^+", ord.passed, verdict(ord) + ", worst " + num(ev(ord, "worst")));
  return c.finish();
}

bool c6() {
  Criterion c("C6", 600.0);
  const auto ctx = context(scenario("chafee-aa"));
  const auto xi = run_named(ctx, "xi_M_convergence");
  c.clause("||xi_M^+(30) - v_1^+|| <= 1e-3", xi.passed && ev(xi, "final_gap") <= 1e-3,
           "gap " + num(ev(xi, "final_gap")));

  const auto aa = run_named(ctx, "aa_convergence");
  c.clause("dist_H(A(30), A_inf) <= 5e-3", aa.passed && last(aa) <= 5e-3, "distance " + num(last(aa)));

  const auto fwd = run_named(ctx, "forward_attraction");
  c.clause("forward attraction at tol 1e-2", fwd.passed, verdict(fwd));
  return c.finish();
}

bool c7() {
  Criterion c("C7", 60.0);
  auto doc = scenario("parabolic-aa");
  doc["id"] = "parabolic-constant";
  doc["params"]["b"] = {{"kind", "constant"}, {"value", 2.0}};
  doc["params"]["omega"] = {{"kind", "constant"}, {"value", 0.0}};
  const auto ctx = context(doc);

  const auto st = run(ctx, "stationary_state", json::object(), {{"tol", 1e-4}});
  c.clause("v_1^+ = x (1 - x)", st.passed, "max node error " + num(ev(st, "max_node_error")));

  const auto pos = run(ctx, "positivity", {{"runs", 50}});
  c.clause("positivity over 50 runs", pos.passed, "min value " + num(ev(pos, "min_value")));

  const auto dec = run(ctx, "parabolic_decay", {{"rate", "continuum"}, {"runs", 10}});
  c.clause("decay at rate 2 pi^2", dec.passed,
           verdict(dec) + ", required rate " + num(ev(dec, "rate")) + ", semi-discrete rate " +
               num(ev(dec, "semidiscrete_rate")));
  return c.finish();
}

bool c8() {
  Criterion c("C8", 300.0);
  const auto ctx = context(scenario("parabolic-aa"));
  const auto aa = run_named(ctx, "aa_convergence");
  c.clause("dist_H(A^+(10), A_inf^+) <= 5e-3", aa.passed && last(aa) <= 5e-3, "distance " + num(last(aa)));

  const auto con = run(ctx, "parabolic_aa_contract", {{"taus", {2.0, 4.0, 8.0}}, {"T", 5.0}, {"c_max", 10.0}});
  c.clause("solver-matching contract, C <= 10 over T = 5", con.passed, verdict(con));
  return c.finish();
}

bool c9() {
  Criterion c("C9", 600.0);

  // triangle inequalities on random clouds
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_int_distribution<int> n(1, 30);
  const auto cloud = [&] {
    std::vector<StatePoint> pts;
    const int k = n(g);
    for (int i = 0; i < k; ++i) pts.push_back(StatePoint::scalar(u(g)));
    return CompactSetSample(std::move(pts));
  };
  const auto pde = context(scenario("chafee-aa"));
  auto gf = pde.rng("triangle");
  const auto field_cloud = [&] {
    std::vector<StatePoint> pts;
    const int k = 1 + n(g) / 5;
    for (int i = 0; i < k; ++i) pts.push_back(pde.random_state(gf, false));
    return CompactSetSample(std::move(pts));
  };
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const bool field = trial % 4 == 3;
    const auto a = field ? field_cloud() : cloud();
    const auto b = field ? field_cloud() : cloud();
    const auto d = field ? field_cloud() : cloud();
    const double slack = 1e-12 * (1.0 + hausdorff(a, b) + hausdorff(b, d));
    if (hausdorff(a, d) > hausdorff(a, b) + hausdorff(b, d) + slack) ++violations;
    if (semidist(a, d) > semidist(a, b) + semidist(b, d) + slack) ++violations;
  }
  c.clause("triangle inequalities on 1000 triples", violations == 0, std::to_string(violations) + " violation(s)");

  // cocycle on every model
  bool cocycles = true;
  std::string worst;
  for (const char* id : {"linear-t", "ode-inclusion-counterexample", "chafee-aa", "parabolic-aa"}) {
    const auto ctx = context(scenario(id));
    const auto r = run(ctx, "cocycle", {{"t0", 0.0}, {"tau", 1.0}, {"t", 2.0}}, {{"tol", 1e-9}, {"budget", 11}});
    cocycles = cocycles && r.passed;
    worst += std::string(worst.empty() ? "" : "; ") + id + " " + num(r.tolerance - r.margin);
  }
  c.clause("cocycle on all models", cocycles, worst);

  // omega_0 inside omega, and stability under horizon doubling
  {
    const auto ctx = context(scenario("ode-inclusion-counterexample"));
    const auto s = ctx.config().schedule_for(json::object());
    const auto sup = compute_limit(ctx, "limsup", json::object(), s);
    const auto inf = compute_limit(ctx, "liminf", json::object(), s);
    const double inside = inf.set.empty() ? 0.0 : semidist(inf.set, sup.set);
    const auto sin_ctx = context(scenario("linear-sin"));
    const auto ss = sin_ctx.config().schedule_for(json::object());
    const auto sin_inf = compute_limit(sin_ctx, "liminf", json::object(), ss);
    const auto sin_sup = compute_limit(sin_ctx, "limsup", json::object(), ss);
    const double sin_inside = sin_inf.set.empty() ? 0.0 : semidist(sin_inf.set, sin_sup.set);
    c.clause("omega_0 inside omega", std::max(inside, sin_inside) <= s.eps,
             "semidistances " + num(inside) + ", " + num(sin_inside));

    auto doubled = s;
    doubled.horizon = 2.0 * s.horizon;
    const auto sup2 = compute_limit(ctx, "limsup", json::object(), doubled);
    const auto inf2 = compute_limit(ctx, "liminf", json::object(), doubled);
    const double dsup = hausdorff(sup.set, sup2.set);
    const double dinf = hausdorff(inf.set, inf2.set);
    c.clause("horizon doubling", std::max(dsup, dinf) <= 2.0 * s.eps, "dist_H " + num(dsup) + ", " + num(dinf));
  }

  // cond_omega0 implies cond_omega_pair and forward attraction; amin agrees
  bool implications = true;
  std::string table;
  for (const char* id : {"linear-sin", "ode-inclusion-counterexample", "ode-inclusion-aa"}) {
    const auto ctx = context(scenario(id));
    const auto& s = ctx.config().find_check("cond_omega0")->args;
    const auto cond = run(ctx, "cond_omega0", s);
    const auto pair = run(ctx, "cond_omega_pair", s);
    const auto amin = run(ctx, "amin", s);
    const auto fwd = run_named(ctx, "forward_attraction");
    implications = implications && (!cond.passed || (pair.passed && fwd.passed && amin.passed));
    table += std::string(table.empty() ? "" : "; ") + id + " " + (cond.passed ? "P" : "F") + (pair.passed ? "P" : "F") +
             (amin.passed ? "P" : "F") + (fwd.passed ? "P" : "F");
  }
  c.clause("cond_omega0 => cond_omega_pair, amin, forward", implications, table);
  return c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<bool()>>> all = {
      {"c1", c1}, {"c2", c2}, {"c3", c3}, {"c4", c4}, {"c5", c5}, {"c6", c6}, {"c7", c7}, {"c8", c8}, {"c9", c9}};
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool ok = true;
  for (const auto& [id, f] : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    try {
      ok = f() && ok;
    } catch (const std::exception& e) {
      std::cout << "  error: " << e.what() << '\n' << (char)std::toupper(id[0]) << id.substr(1) << " FAIL\n";
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
