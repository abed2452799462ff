#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "attlab/errors.hpp"
#include "attlab/verify.hpp"
#include "jobs.hpp"

namespace attlab::tools {

namespace {

double arg(const json& a, const char* key, double fallback) {
  return a.contains(key) ? a.at(key).get<double>() : fallback;
}

std::size_t count_arg(const json& a, const char* key, std::size_t fallback) {
  return a.contains(key) ? a.at(key).get<std::size_t>() : fallback;
}

std::vector<double> list_arg(const json& a, const char* key, std::vector<double> fallback) {
  return a.contains(key) ? grid_from_json(a.at(key)) : std::move(fallback);
}

const std::vector<double>& need_grid(const ToleranceSchedule& s, const std::string& id) {
  if (s.grid.empty()) throw ContractViolation(id + ": schedule.grid is required");
  return s.grid;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UnsupportedModel(msg);
}

bool scalar_model(const ModelContext& ctx) { return !ctx.is_field(); }

SetFamily shifted_linear_family(const ModelContext& ctx, double r, const std::vector<double>& times) {
  const auto m = ctx.config().linear();
  std::vector<CompactSetSample> ss;
  for (double t : times)
    ss.push_back(CompactSetSample({StatePoint::scalar(linear_pullback_trajectory(m, t) + r * std::exp(m.drift * t))}));
  return SetFamily(times, std::move(ss), "closed-form");
}

std::vector<TestSet> test_sets(const ModelContext& ctx, const json& a) {
  std::vector<CompactSetSample> sets;
  if (a.contains("sets")) {
    for (const auto& s : a.at("sets")) sets.push_back(ctx.parse_set(s));
  } else {
    sets.push_back(ctx.default_set());
  }
  std::vector<TestSet> out;
  for (const auto& B : sets)
    for (double t0 : list_arg(a, "t0s", {0.0})) out.push_back({B, t0});
  return out;
}

SetFamily limit_family(const ModelContext& ctx, const json& a, const ToleranceSchedule& s) {
  std::vector<double> times;
  if (a.contains("family")) {
    times = grid_from_json(a.at("family"));
  } else {
    times = grid_from_json(json{{"from", 0.0}, {"to", s.horizon}, {"count", 2001}});
  }
  return ctx.family(merge_times(std::move(times), s.grid));
}

/// Drops per-part curves so that bank reports stay small.
VerifierReport bank(std::string id, std::vector<VerifierReport> parts) {
  std::vector<double> params;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    params.push_back(static_cast<double>(k));
    parts[k].curve.clear();
    for (auto& sub : parts[k].sub_checks) sub.curve.clear();
  }
  auto r = combine(std::move(id), std::move(parts), params);
  double worst = 0.0;
  for (const auto& c : r.curve) worst = std::max(worst, c.value);
  r.evidence["worst"] = worst;
  r.evidence["runs"] = static_cast<double>(r.sub_checks.size());
  return r;
}

VerifierReport pullback(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s, const RunOptions&) {
  const auto B = ctx.parse_set(c.args.value("B", json()));
  const auto times = list_arg(c.args, "times", {0.0});
  const auto depths = list_arg(c.args, "depths", {5.0, 10.0, 20.0, 40.0});
  std::vector<VerifierReport> parts;
  for (double t : times) {
    auto st = s;
    st.grid.clear();
    for (double d : depths) st.grid.push_back(t - d);
    const SetFamily A({t}, {ctx.section(t)}, "section");
    parts.push_back(verify_pullback_attraction(ctx.process(), A, B, t, st));
  }
  if (parts.size() == 1) return parts[0];
  return combine("pullback_attraction", std::move(parts), times);
}

VerifierReport forward(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s, const RunOptions& o) {
  const auto& grid = need_grid(s, c.check);
  const auto B = ctx.parse_set(c.args.value("B", json()));
  const double t0 = arg(c.args, "t0", 0.0);
  if (c.args.contains("shifts")) {
    require(ctx.kind() == ModelKind::linear, "forward_attraction: shifts need the linear model");
    const auto shifts = grid_from_json(c.args.at("shifts"));
    std::vector<VerifierReport> parts(shifts.size());
    run_indexed(shifts.size(), o.jobs, [&](std::size_t k) {
      parts[k] = verify_forward_attraction(ctx.process(), shifted_linear_family(ctx, shifts[k], grid), B, t0, s);
      parts[k].notes.push_back("shift r=" + io::format_number(shifts[k]));
    });
    return combine("forward_attraction", std::move(parts), shifts);
  }
  return verify_forward_attraction(ctx.process(), ctx.family(grid), B, t0, s);
}

VerifierReport invariance(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s, const RunOptions&) {
  const auto mode = c.args.value("mode", std::string("negative"));
  if (mode != "strict" && mode != "negative") throw ContractViolation("invariance: mode must be strict or negative");
  return verify_invariance(ctx.process(), ctx.family(need_grid(s, c.check)),
                           mode == "strict" ? InvarianceMode::strict : InvarianceMode::negative, s);
}

VerifierReport cond_omega0(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s, const RunOptions&) {
  return verify_cond_omega0(ctx.process(), limit_family(ctx, c.args, s), test_sets(ctx, c.args), s);
}

VerifierReport cond_omega_pair(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s,
                               const RunOptions&) {
  return verify_cond_omega_pair(ctx.process(), limit_family(ctx, c.args, s), test_sets(ctx, c.args), s);
}

VerifierReport amin(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s, const RunOptions&) {
  std::vector<CompactSetSample> sets;
  std::vector<double> t0s = list_arg(c.args, "t0s", {0.0});
  if (c.args.contains("sets")) {
    for (const auto& x : c.args.at("sets")) sets.push_back(ctx.parse_set(x));
  } else {
    sets.push_back(ctx.default_set());
  }
  return verify_amin(ctx.process(), limit_family(ctx, c.args, s), sets, t0s, s);
}

VerifierReport equivalence(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s, const RunOptions&) {
  const auto& grid = need_grid(s, c.check);
  if (ctx.kind() == ModelKind::linear) {
    const auto shifts = list_arg(c.args, "shifts", {0.0, 1.0});
    if (shifts.size() != 2) throw ContractViolation("asymptotic_equivalence: shifts needs two values");
    auto rep = verify_asymptotic_equivalence(shifted_linear_family(ctx, shifts[0], grid),
                                             shifted_linear_family(ctx, shifts[1], grid), s);
    // the closed-form distance |r1 - r2| e^{drift t}
    const auto m = ctx.config().linear();
    double worst = 0.0;
    for (const auto& pt : rep.curve) {
      const double expect = std::abs(shifts[0] - shifts[1]) * std::exp(m.drift * pt.param);
      worst = std::max(worst, std::abs(pt.value - expect) / std::max(expect, 1e-300));
    }
    rep.evidence["closed_form_rel_error"] = worst;
    return rep;
  }
  require(scalar_model(ctx), "asymptotic_equivalence: needs a scalar model");
  const double depth = arg(c.args, "depth", 15.0);
  const auto B = ctx.parse_set(c.args.value("B", json()));
  std::vector<CompactSetSample> num;
  for (double t : grid) {
    const auto img = evolve_set(ctx.process(), t, t - depth, B, s.budget);
    num.push_back(eps_merge(img.points(), ctx.config().sampling.eps));
  }
  return verify_asymptotic_equivalence(ctx.family(grid), SetFamily(grid, std::move(num), "pullback-numerical"), s);
}

VerifierReport aa_convergence(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s,
                              const RunOptions&) {
  auto rep = verify_aa_convergence(ctx.process(), ctx.family(need_grid(s, c.check)), ctx.limit_attractor(), s);
  return rep;
}

VerifierReport omega_hull(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s, const RunOptions&) {
  const auto kind = c.args.value("kind", std::string("limsup"));
  const auto res = compute_limit(ctx, kind, c.args, s);
  VerifierReport rep;
  rep.check_id = "omega_hull";
  rep.notes.push_back("kind=" + kind);
  rep.evidence["points"] = static_cast<double>(res.set.size());
  rep.evidence["residual"] = res.residual;
  if (res.min_max_defect) rep.evidence["min_max_defect"] = *res.min_max_defect;
  if (c.args.value("empty", false)) {
    const double need = arg(c.args, "defect_min", 0.0);
    const double defect = res.min_max_defect.value_or(0.0);
    rep.tolerance = need;
    rep.curve.push_back({0.0, defect});
    rep.margin = defect - need;
    rep.passed = res.set.empty() && defect >= need;
    rep.notes.push_back(res.set.empty() ? "limit set is empty" : "limit set is not empty");
    return rep;
  }
  require(scalar_model(ctx), "omega_hull: hull endpoints need a scalar model");
  if (res.set.empty()) {
    rep.passed = false;
    rep.tolerance = arg(c.args, "hull_tol", 1e-2);
    rep.margin = -HUGE_VAL;
    rep.notes.push_back("limit set is empty");
    return rep;
  }
  const auto h = interval_hull(res.set);
  rep.evidence["lo"] = h.lo;
  rep.evidence["hi"] = h.hi;
  rep.tolerance = arg(c.args, "hull_tol", 1e-2);
  rep.curve.push_back({0.0, std::abs(h.lo - c.args.at("lo").get<double>())});
  rep.curve.push_back({1.0, std::abs(h.hi - c.args.at("hi").get<double>())});
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

VerifierReport boundedness(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s, const RunOptions&) {
  BoundednessOptions bo;
  bo.samples = s.samples;
  bo.budget = s.budget;
  if (c.args.contains("after")) bo.after = c.args.at("after").get<double>();
  if (c.args.contains("v_bound")) bo.v_bound = c.args.at("v_bound").get<double>();
  if (!c.args.contains("bound")) throw ContractViolation("forward_boundedness: args.bound is required");
  return forward_boundedness_diagnostic(ctx.process(), ctx.parse_set(c.args.value("B", json())),
                                        arg(c.args, "t0", 0.0), s.horizon, c.args.at("bound").get<double>(), bo);
}

VerifierReport cocycle(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s, const RunOptions&) {
  return check_cocycle(ctx.process(), arg(c.args, "t0", 0.0), arg(c.args, "tau", 1.0), arg(c.args, "t", 2.0),
                       ctx.parse_set(c.args.value("B", json())), s.budget, s.tol);
}

VerifierReport xi_convergence(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule& s,
                              const RunOptions& o) {
  const auto& grid = need_grid(s, c.check);
  const auto v1 = ctx.limit_equilibrium();
  VerifierReport rep;
  rep.check_id = "xi_M_convergence";
  rep.tolerance = s.tol;
  rep.curve.resize(grid.size());
  run_indexed(grid.size(), o.jobs, [&](std::size_t k) { rep.curve[k] = {grid[k], distance(ctx.xi_plus(grid[k]), v1)}; });
  rep.evidence["final_gap"] = rep.curve.back().value;
  apply_verdict(rep, VerdictRule::converges, s.floor);
  return rep;
}

VerifierReport stationary(const ModelContext& ctx, const CheckSpec&, const ToleranceSchedule& s, const RunOptions&) {
  VerifierReport rep;
  rep.check_id = "stationary_state";
  rep.tolerance = s.tol;
  if (ctx.kind() == ModelKind::chafee) {
    const auto eq = chafee_autonomous_equilibria(ctx.config().chafee().limit_model());
    rep.curve.push_back({0.0, eq.residual});
    rep.evidence["residual"] = eq.residual;
    rep.evidence["newton_iterations"] = eq.newton_iterations;
    rep.evidence["norm"] = norm(eq.v1_plus);
    rep.notes.push_back("max-norm residual of the discrete stationary equation");
  } else if (ctx.kind() == ModelKind::parabolic_inclusion) {
    // -v'' - w v = b on (0, 1) with zero ends
    const auto lim = ctx.config().parabolic().limit_model();
    const double b = lim.b(0.0);
    const double w = lim.omega(0.0);
    const auto v = parabolic_stationary(lim);
    const auto exact = [&](double x) {
      if (w == 0.0) return 0.5 * b * x * (1.0 - x);
      const double r = std::sqrt(w);
      return b / w * (std::cos(r * (x - 0.5)) / std::cos(0.5 * r) - 1.0);
    };
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(v[i] - exact(lim.grid.x(i))));
    rep.curve.push_back({0.0, err});
    rep.evidence["max_node_error"] = err;
  } else {
    throw UnsupportedModel("stationary_state: needs a PDE model");
  }
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

VerifierReport heteroclinic(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule&, const RunOptions&) {
  require(ctx.kind() == ModelKind::chafee, "heteroclinic_rate: needs the chafee model");
  const auto m = ctx.config().chafee().limit_model();
  const auto fit = chafee_heteroclinic_fit(m, arg(c.args, "amplitude", 1e-6));
  const double expect = m.lambda - m.grid.lambda1();
  VerifierReport rep;
  rep.check_id = "heteroclinic_rate";
  rep.tolerance = arg(c.args, "rel_tol", 0.1);
  rep.curve.push_back({0.0, std::abs(fit.exponent - expect) / expect});
  rep.evidence["exponent"] = fit.exponent;
  rep.evidence["expected"] = expect;
  rep.evidence["window_lo"] = fit.window_lo;
  rep.evidence["window_hi"] = fit.window_hi;
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

VerifierReport chafee_energy(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule&,
                             const RunOptions& o) {
  require(ctx.kind() == ModelKind::chafee, "chafee_energy: needs the chafee model");
  const auto m = ctx.config().chafee();
  const auto runs = count_arg(c.args, "runs", 100);
  const double t0 = arg(c.args, "t0", 0.0);
  const double t = arg(c.args, "t", 10.0);
  auto g = ctx.rng(c.name);
  std::vector<StatePoint> ics;
  for (std::size_t k = 0; k < runs; ++k) ics.push_back(ctx.random_state(g, false));
  std::vector<VerifierReport> parts(runs);
  run_indexed(runs, o.jobs, [&](std::size_t k) { parts[k] = chafee_energy_check(m, ics[k], t0, t); });
  return bank("chafee_energy", std::move(parts));
}

VerifierReport chafee_order(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule&,
                            const RunOptions& o) {
  require(ctx.kind() == ModelKind::chafee, "chafee_order_interval: needs the chafee model");
  const auto m = ctx.config().chafee();
  const auto runs = count_arg(c.args, "runs", 20);
  const double t0 = arg(c.args, "t0", 0.0);
  const double t = arg(c.args, "t", 10.0);
  const double depth = arg(c.args, "depth", ctx.config().sampling.depth);
  const double tol = arg(c.args, "tol", 1e-6);
  const auto xi = chafee_xi_M(m, t0, +1, depth);
  auto g = ctx.rng(c.name);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<StatePoint> ics;
  for (std::size_t k = 0; k < runs; ++k) {
    // |u0| <= 0.95 xi_M^+(t0) nodewise
    const double theta = 0.95 * u(g);
    const double kx = std::floor(1.0 + 4.0 * u(g));
    const double phase = 2.0 * std::numbers::pi * u(g);
    std::vector<double> v(xi.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = theta * xi[i] * std::cos(kx * m.grid.x(i) + phase);
    ics.push_back(m.grid.field(std::move(v)));
  }
  std::vector<VerifierReport> parts(runs);
  run_indexed(runs, o.jobs, [&](std::size_t k) { parts[k] = chafee_order_check(m, ics[k], t0, t, depth, tol); });
  return bank("chafee_order_interval", std::move(parts));
}

VerifierReport positivity(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule&, const RunOptions& o) {
  require(ctx.kind() == ModelKind::parabolic_inclusion, "positivity: needs the parabolic inclusion");
  const auto m = ctx.config().parabolic();
  const auto runs = count_arg(c.args, "runs", 50);
  const auto times = list_arg(c.args, "times", {0.01, 0.2, 1.0});
  auto g = ctx.rng(c.name);
  std::vector<StatePoint> ics;
  for (std::size_t k = 0; k < runs; ++k) ics.push_back(ctx.random_state(g, true));
  VerifierReport rep;
  rep.check_id = "positivity";
  rep.tolerance = 0.0;
  rep.curve.resize(runs);
  std::vector<double> mins(runs);
  run_indexed(runs, o.jobs, [&](std::size_t k) {
    const auto path = parabolic_solve_path(m, times, 0.0, ics[k], 1);
    double lo = HUGE_VAL;
    for (const auto& st : path.at(0).states)
      for (double v : st.values()) lo = std::min(lo, v);
    mins[k] = lo;
    rep.curve[k] = {static_cast<double>(k), std::max(0.0, -lo)};
  });
  rep.evidence["min_value"] = *std::min_element(mins.begin(), mins.end());
  rep.evidence["strictly_positive_runs"] =
      static_cast<double>(std::count_if(mins.begin(), mins.end(), [](double v) { return v > 0.0; }));
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

VerifierReport decay(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule&, const RunOptions& o) {
  require(ctx.kind() == ModelKind::parabolic_inclusion, "parabolic_decay: needs the parabolic inclusion");
  const auto m = ctx.config().parabolic();
  const auto runs = count_arg(c.args, "runs", 10);
  const auto times = list_arg(c.args, "times", {0.05, 0.1, 0.2, 0.4});
  const auto rate_name = c.args.value("rate", std::string("continuum"));
  if (rate_name != "continuum" && rate_name != "scheme")
    throw ContractViolation("parabolic_decay: rate must be continuum or scheme");
  const auto rate = rate_name == "scheme" ? DecayRate::scheme : DecayRate::continuum;
  auto g = ctx.rng(c.name);
  std::vector<std::pair<StatePoint, StatePoint>> pairs;
  for (std::size_t k = 0; k < runs; ++k) {
    auto a = ctx.random_state(g, true);
    auto b = ctx.random_state(g, true);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  std::vector<VerifierReport> parts(runs);
  run_indexed(runs, o.jobs, [&](std::size_t k) {
    parts[k] = parabolic_decay_check(m, pairs[k].first, pairs[k].second, times, 0.0, rate);
  });
  auto rep = bank(rate == DecayRate::scheme ? "parabolic_decay_scheme" : "parabolic_decay", std::move(parts));
  rep.evidence["rate"] = rep.sub_checks.front().evidence.at("rate");
  rep.evidence["semidiscrete_rate"] = rep.sub_checks.front().evidence.at("semidiscrete_rate");
  return rep;
}

VerifierReport aa_contract(const ModelContext& ctx, const CheckSpec& c, const ToleranceSchedule&, const RunOptions&) {
  require(ctx.kind() == ModelKind::parabolic_inclusion, "parabolic_aa_contract: needs the parabolic inclusion");
  const auto taus = list_arg(c.args, "taus", {2.0, 4.0, 8.0});
  return parabolic_aa_contract(ctx.config().parabolic(), ctx.parse_ic(c.args.value("ic", std::string("sin:1"))), taus,
                               arg(c.args, "T", 5.0), arg(c.args, "c_max", 10.0));
}

}  // namespace

LimitSetResult compute_limit(const ModelContext& ctx, const std::string& kind, const json& args,
                             const ToleranceSchedule& s) {
  const auto opts = s.limit_options();
  if (!(s.window > 0.0)) throw ContractViolation("limit sets: schedule.window must be positive");
  if (kind == "forward")
    return forward_omega(ctx.process(), ctx.parse_set(args.value("B", json())), arg(args, "t0", 0.0), s.horizon,
                         s.window, opts);
  if (kind == "amin") {
    std::vector<CompactSetSample> sets;
    if (args.contains("sets")) {
      for (const auto& x : args.at("sets")) sets.push_back(ctx.parse_set(x));
    } else {
      sets.push_back(ctx.default_set());
    }
    return a_min(ctx.process(), sets, list_arg(args, "t0s", {0.0}), s.horizon, s.window, opts);
  }
  if (kind == "limsup" || kind == "liminf") {
    const auto times = grid_from_json(json{{"from", s.horizon - s.window}, {"to", s.horizon}, {"count", s.samples}});
    const auto fam = ctx.family(times);
    return kind == "limsup" ? omega_limsup(fam, s.window, opts) : omega_liminf(fam, s.window, opts);
  }
  throw ContractViolation("omega: kind must be forward, limsup, liminf or amin");
}

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> reg = {
      {"pullback_attraction", "dist(U(t, t - d, B), A(t)) over pullback depths d", pullback},
      {"forward_attraction", "dist(U(t, t0, B), A(t)) along the schedule grid", forward},
      {"invariance", "U(t, s, A(s)) against A(t) on grid pairs", invariance},
      {"cond_omega0", "forward omega-limits inside the liminf of the attractor", cond_omega0},
      {"cond_omega_pair", "forward omega-limits inside the limsup of the attractor", cond_omega_pair},
      {"amin", "distance from the minimal forward attracting set to A(t)", amin},
      {"asymptotic_equivalence", "dist_H between two attractor families", equivalence},
      {"aa_convergence", "semidistances between A(t) and the limit attractor", aa_convergence},
      {"omega_hull", "endpoints (or emptiness) of a limit set", omega_hull},
      {"forward_boundedness", "norm bound along forward orbits", boundedness},
      {"cocycle", "U(t, t0) against U(t, tau) U(tau, t0)", cocycle},
      {"xi_M_convergence", "distance of xi_M^+(t) to the limit equilibrium", xi_convergence},
      {"stationary_state", "accuracy of the positive equilibrium", stationary},
      {"heteroclinic_rate", "growth exponent off the zero equilibrium", heteroclinic},
      {"chafee_energy", "energy and V-norm bounds over a random bank", chafee_energy},
      {"chafee_order_interval", "order interval [-xi_M^+, xi_M^+] over a random bank", chafee_order},
      {"positivity", "non-negative data stay non-negative", positivity},
      {"parabolic_decay", "exponential decay of differences of positive solutions", decay},
      {"parabolic_aa_contract", "gap to the limit solver against coefficient defect", aa_contract},
  };
  return reg;
}

const CheckInfo* find_check_info(const std::string& id) {
  for (const auto& c : check_registry())
    if (c.id == id) return &c;
  return nullptr;
}

std::string available_checks() {
  std::string s;
  for (const auto& c : check_registry()) s += (s.empty() ? "" : ", ") + c.id;
  return s;
}

VerifierReport run_check(const ModelContext& ctx, const CheckSpec& spec, const RunOptions& opts) {
  const auto* info = find_check_info(spec.check);
  if (!info) throw ConfigError({"unknown check '" + spec.check + "'; available: " + available_checks()});
  auto sched = ctx.config().schedule_for(spec.schedule);
  if (opts.tol) sched.tol = *opts.tol;
  sched.validate();
  return info->run(ctx, spec, sched, opts);
}

}  // namespace attlab::tools
