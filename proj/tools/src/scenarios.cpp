#include "scenarios.hpp"

#include <numbers>

namespace attlab::tools {

namespace {

using nlohmann::json;

constexpr double pi = std::numbers::pi;

json range(double from, double to, int count) { return {{"from", from}, {"to", to}, {"count", count}}; }

json check(const std::string& id, json args = json::object(), json schedule = json::object(), std::string name = {}) {
  json c{{"check", id}};
  if (!name.empty()) c["name"] = name;
  if (!args.empty()) c["args"] = std::move(args);
  if (!schedule.empty()) c["schedule"] = std::move(schedule);
  return c;
}

json limit_schedule(double tol, double horizon, double window, double span, json grid) {
  return {{"tol", tol},       {"eps", 1e-2},      {"budget", 201},  {"samples", 801},
          {"horizon", horizon}, {"window", window}, {"recurrence_span", span}, {"grid", std::move(grid)},
          {"floor", 1e-2}};
}

json linear_t() {
  return {
      {"id", "linear-t"},
      {"description", "y' + y = t: one pullback attractor, infinitely many forward attractors"},
      {"model", "linear"},
      {"params", {{"drift", -1.0}, {"forcing", {{"kind", "affine"}, {"c0", 0.0}, {"c1", 1.0}}}}},
      {"schedule", {{"tol", 1e-8}}},
      {"seed", 1},
      {"checks",
       {check("pullback_attraction", {{"times", {0.0, 5.0}}, {"depths", {10.0, 20.0, 40.0}}}),
        check("forward_attraction", {{"shifts", {-1.0, 0.0, 3.0}}}, {{"grid", range(1.0, 30.0, 30)}, {"tol", 1e-6}}),
        check("asymptotic_equivalence", {{"shifts", {0.0, 3.0}}}, {{"grid", range(0.0, 10.0, 41)}, {"tol", 1e-3}}),
        check("cocycle", {{"t0", -1.0}, {"tau", 0.5}, {"t", 2.0}}, {{"tol", 1e-12}})}},
  };
}

json linear_sin() {
  const double T = 16 * pi;
  auto lim = limit_schedule(2e-2, T, 4 * pi, 2 * pi, range(12 * pi, T, 11));
  const json sets = {{{"interval", {-1.0, 1.0, 5}}}, {{"points", {3.0}}}};
  return {
      {"id", "linear-sin"},
      {"description", "y' = -y + sin t: pullback and forward attraction without an omega-0 limit"},
      {"model", "linear"},
      {"params", {{"drift", -1.0}, {"forcing", {{"kind", "sinusoidal"}, {"c0", 0.0}, {"c1", 1.0}}}}},
      {"schedule", lim},
      {"seed", 1},
      {"checks",
       {check("pullback_attraction", {{"times", {0.0, 2.0}}, {"depths", {10.0, 20.0, 40.0}}}, {{"tol", 1e-8}}),
        check("forward_attraction", {{"B", {{"interval", {-1.0, 1.0, 21}}}}}, {{"grid", range(1.0, 30.0, 30)}, {"tol", 1e-6}}),
        check("cond_omega0", {{"sets", sets}, {"t0s", {0.0, 2.0}}, {"family", range(0.0, T, 2001)}}),
        check("omega_hull", {{"kind", "limsup"}, {"lo", -std::sqrt(0.5)}, {"hi", std::sqrt(0.5)}}, {}, "omega_limsup"),
        check("omega_hull", {{"kind", "liminf"}, {"empty", true}, {"defect_min", 0.69}}, {}, "omega0_empty")}},
      {"expect", {{"cond_omega0", "fail"}}},
  };
}

json inclusion_counterexample() {
  const double T = 16 * pi;
  auto sched = limit_schedule(2e-2, T, 4 * pi, 2 * pi, range(12 * pi, T, 11));
  sched["eps"] = 5e-3;
  return {
      {"id", "ode-inclusion-counterexample"},
      {"description", "u' + u in (2 + sin t) H0(u): forward attraction although the omega-0 condition fails"},
      {"model", "ode-inclusion"},
      {"params", {{"lambda", 1.0}, {"b", {{"kind", "sinusoidal"}, {"c0", 2.0}, {"c1", 1.0}}}}},
      {"schedule", sched},
      {"sampling", {{"points", 4001}, {"radius", 4.0}}},
      {"seed", 1},
      {"checks",
       {check("forward_attraction", {{"B", {{"interval", {-4.0, 4.0, 9}}}}},
              {{"grid", range(1.0, 20.0, 20)}, {"tol", 1e-3}, {"floor", 1e-3}}),
        check("cond_omega0", {{"sets", {{{"points", {0.0}}}, {{"points", {1.0}}}}}, {"family", range(0.0, T, 1001)}}),
        check("omega_hull", {{"kind", "limsup"}, {"lo", -2.0 - std::sqrt(0.5)}, {"hi", 2.0 + std::sqrt(0.5)}},
              {{"eps", 5e-3}}, "omega_limsup"),
        check("omega_hull", {{"kind", "liminf"}, {"lo", -2.0 + std::sqrt(0.5)}, {"hi", 2.0 - std::sqrt(0.5)}},
              {{"eps", 5e-3}}, "omega0_hull"),
        check("cocycle", {{"B", {{"interval", {-1.0, 1.0, 5}}}}}, {{"budget", 21}, {"tol", 1e-9}})}},
      {"expect", {{"cond_omega0", "fail"}}},
  };
}

json inclusion_aa() {
  const double H = 30.0;
  const json sets = {{{"points", {0.0}}}, {{"interval", {-3.0, 3.0, 7}}}};
  const json largs = {{"sets", sets}, {"t0s", {0.0}}, {"family", range(0.0, H, 601)}};
  return {
      {"id", "ode-inclusion-aa"},
      {"description", "u' + u in (2 + e^{-t}) H0(u): attractor converges to [-2, 2]"},
      {"model", "ode-inclusion"},
      {"params", {{"lambda", 1.0}, {"b", {{"kind", "exp_ramp"}, {"limit", 2.0}, {"initial", 3.0}, {"rate", 1.0}}}}},
      {"schedule", limit_schedule(2e-2, H, H / 4, 0.0, range(20.0, H, 21))},
      {"sampling", {{"points", 4001}, {"radius", 4.0}}},
      {"seed", 1},
      {"checks",
       {check("aa_convergence", {}, {{"grid", range(0.0, 15.0, 16)}, {"tol", 1e-3}, {"floor", 1e-3}}),
        check("cond_omega0", largs), check("amin", largs), check("cond_omega_pair", largs),
        check("forward_attraction", {}, {{"grid", range(1.0, H, 30)}, {"tol", 1e-2}, {"floor", 2e-3}}),
        check("xi_M_convergence", {}, {{"grid", range(0.0, 15.0, 16)}, {"tol", 1e-3}})}},
  };
}

json chafee_aa() {
  return {
      {"id", "chafee-aa"},
      {"description", "u_t = u_xx + 2u - (1 + 0.5 e^{-t/2}) u^3 on (0, pi)"},
      {"model", "chafee"},
      {"params",
       {{"lambda", 2.0},
        {"b", {{"kind", "exp_ramp"}, {"limit", 1.0}, {"initial", 1.5}, {"rate", 0.5}}},
        {"n", 127},
        {"dt", 0.005}}},
      {"schedule", {{"tol", 1e-3}}},
      {"sampling", {{"ic_count", 256}, {"eps", 1e-3}, {"depth", 10.0}, {"radius", 2.0}}},
      {"seed", 1},
      {"checks",
       {check("xi_M_convergence", {}, {{"grid", {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0}}, {"tol", 1e-3}}),
        check("aa_convergence", {}, {{"grid", {10.0, 20.0, 30.0}}, {"tol", 5e-3}, {"floor", 1e-3}}),
        check("forward_attraction", {}, {{"grid", {10.0, 20.0, 30.0}}, {"tol", 1e-2}, {"floor", 1e-3}}),
        check("stationary_state", {}, {{"tol", 1e-10}}),
        check("heteroclinic_rate", {{"rel_tol", 0.1}}),
        check("chafee_energy", {{"runs", 20}, {"t", 10.0}}),
        check("chafee_order_interval", {{"runs", 10}, {"t", 10.0}, {"tol", 1e-6}})}},
  };
}

json parabolic_aa() {
  return {
      {"id", "parabolic-aa"},
      {"description", "u_t - u_xx - (1 + e^{-t}) u in (2 + e^{-t}) H0(u) on the non-negative cone"},
      {"model", "parabolic-inclusion"},
      {"params",
       {{"b", {{"kind", "exp_ramp"}, {"limit", 2.0}, {"initial", 3.0}, {"rate", 1.0}}},
        {"omega", {{"kind", "exp_ramp"}, {"limit", 1.0}, {"initial", 2.0}, {"rate", 1.0}}},
        {"n", 127},
        {"dt", 0.005}}},
      {"schedule", {{"tol", 1e-3}}},
      {"sampling", {{"departures", 51}, {"eps", 1e-3}, {"depth", 5.0}, {"radius", 1.0}}},
      {"seed", 1},
      {"checks",
       {check("aa_convergence", {}, {{"grid", {2.0, 4.0, 6.0, 8.0, 10.0}}, {"tol", 5e-3}, {"floor", 1e-3}}),
        check("parabolic_aa_contract", {{"taus", {2.0, 4.0, 8.0}}, {"T", 5.0}, {"c_max", 10.0}}),
        check("xi_M_convergence", {}, {{"grid", {0.0, 2.0, 5.0, 10.0}}, {"tol", 1e-3}}),
        check("stationary_state", {}, {{"tol", 1e-4}}),
        check("positivity", {{"runs", 50}}),
        check("parabolic_decay", {{"rate", "scheme"}, {"runs", 10}}),
        check("cocycle", {}, {{"budget", 11}, {"tol", 1e-9}})}},
  };
}

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids = {"linear-t",         "linear-sin", "ode-inclusion-counterexample",
                                               "ode-inclusion-aa", "chafee-aa",  "parabolic-aa"};
  return ids;
}

std::optional<nlohmann::json> builtin_scenario(const std::string& id) {
  if (id == "linear-t") return linear_t();
  if (id == "linear-sin") return linear_sin();
  if (id == "ode-inclusion-counterexample") return inclusion_counterexample();
  if (id == "ode-inclusion-aa") return inclusion_aa();
  if (id == "chafee-aa") return chafee_aa();
  if (id == "parabolic-aa") return parabolic_aa();
  return std::nullopt;
}

}  // namespace attlab::tools
