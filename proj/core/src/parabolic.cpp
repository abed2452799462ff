#include "attlab/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "attlab/errors.hpp"
#include "parallel.hpp"

namespace attlab {

namespace {

constexpr double cone_slack = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Values of a non-negative field, clamped onto the cone; `zero` tells
// whether the field vanishes identically.
std::vector<double> cone_values(const ParabolicInclusionModel& m, const StatePoint& u,
                                const char* op, bool& zero) {
  const auto& g = m.grid;
  if (u.size() != g.size() || !u.step() || std::abs(*u.step() - g.h()) > 1e-12 * g.h())
    throw ContractViolation(std::string(op) + ": field does not live on the model grid");
  std::vector<double> v(u.values().begin(), u.values().end());
  zero = true;
  for (double& x : v) {
    if (!std::isfinite(x)) throw ContractViolation(std::string(op) + ": non-finite field");
    if (x < -cone_slack)
      throw ContractViolation(std::string(op) + ": field leaves the non-negative cone");
    x = std::max(x, 0.0);
    if (x > 0.0) zero = false;
  }
  return v;
}

std::vector<double> run(const ParabolicInclusionModel& m, std::vector<double> u, double t0,
                        double t) {
  ParabolicStepper stepper(m);
  stepper.advance(t0, u, t);
  return u;
}

double l2_diff(std::span<const double> a, std::span<const double> b, double h) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] - b[i];
  return l2_norm(d, h);
}

}  // namespace

void ParabolicInclusionModel::validate() const {
  if (!(b.inf() > 0.0)) throw ContractViolation("parabolic: need inf b > 0");
  if (!std::isfinite(b.sup())) throw ContractViolation("parabolic: b must be bounded");
  if (!(omega.inf() >= 0.0)) throw ContractViolation("parabolic: omega must be non-negative");
  if (!(omega.sup() < grid.lambda1()))
    throw ContractViolation("parabolic: need sup omega < pi^2");
  if (!(dt > 0.0)) throw ContractViolation("parabolic: dt must be positive");
  if (dt > max_dt) throw ContractViolation("parabolic: dt above the cap " + fmt(max_dt));
  if (std::abs(grid.length() - 1.0) > 1e-12) throw ContractViolation("parabolic: the domain is (0, 1)");
}

ParabolicInclusionModel ParabolicInclusionModel::limit_model() const {
  const auto lb = b.declared_limit();
  const auto lo = omega.declared_limit();
  if (!lb || !lo) throw UnsupportedModel("parabolic: coefficients have no declared limit");
  ParabolicInclusionModel out = *this;
  out.b = TimeFn::constant(*lb);
  out.omega = TimeFn::constant(*lo);
  return out;
}

ParabolicStepper::ParabolicStepper(ParabolicInclusionModel m)
    : m_(std::move(m)), rhs_(m_.grid.size()) {
  m_.validate();
}

void ParabolicStepper::step(double t, std::vector<double>& u, double k) {
  if (!(k > 0.0) || k > m_.dt * (1.0 + 1e-9))
    throw ContractViolation("ParabolicStepper: step outside (0, dt]");
  const double h = m_.grid.h();
  const double inv_h2 = 1.0 / (h * h);
  const double diag = 1.0 + k * (2.0 * inv_h2 - m_.omega(t));
  if (!lhs_ || lhs_->diag() != diag || lhs_->off() != -k * inv_h2)
    lhs_.emplace(u.size(), diag, -k * inv_h2);
  const double kb = k * m_.b(t);
  for (std::size_t i = 0; i < u.size(); ++i) rhs_[i] = u[i] + kb;
  lhs_->solve(rhs_);
  guard_state(rhs_, h, t + k, t);
  u.swap(rhs_);
}

void ParabolicStepper::advance(double& t, std::vector<double>& u, double t_end) {
  if (!(t_end >= t)) throw ContractViolation("ParabolicStepper::advance: t_end < t");
  const double span = t_end - t;
  const auto n = static_cast<long>(std::ceil(span / m_.dt - 1e-9));
  const double t_start = t;
  if (n > 0) {
    const double k = span / static_cast<double>(n);
    for (long i = 0; i < n; ++i) step(t_start + static_cast<double>(i) * k, u, k);
  }
  t = t_end;
}

std::vector<BranchPath> parabolic_solve_path(const ParabolicInclusionModel& m,
                                             std::span<const double> times, double t0,
                                             const StatePoint& u0, int budget) {
  m.validate();
  if (times.empty()) throw ContractViolation("parabolic_solve: no times");
  if (budget < 1) throw ContractViolation("parabolic_solve: budget must be positive");
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] < t0 || (i > 0 && !(times[i] > times[i - 1])))
      throw ContractViolation("parabolic_solve: times must increase from t0");
  bool zero = false;
  auto u = cone_values(m, u0, "parabolic_solve", zero);
  const auto tag = u0.norm_tag();

  const auto march = [&](std::vector<double> v, double from) {
    BranchPath path;
    ParabolicStepper stepper(m);
    for (double s : times) {
      if (s > from) stepper.advance(from, v, s);
      path.states.push_back(m.grid.field(v, tag));
    }
    return path;
  };

  if (!zero) {
    auto p = march(std::move(u), t0);
    p.label = BranchLabel::unique();
    return {std::move(p)};
  }

  const std::vector<double> origin(m.grid.size(), 0.0);
  std::vector<BranchPath> out;
  BranchPath rest;
  rest.label = BranchLabel::zero_rest();
  rest.states.assign(times.size(), m.grid.field(origin, tag));
  out.push_back(std::move(rest));

  const double t_hi = times.back();
  if (t_hi > t0 && budget > 1) {
    const auto n = static_cast<std::size_t>(budget - 1);
    std::vector<BranchPath> departures(n);
    detail::parallel_for(n, [&](std::size_t j) {
      const double r = t0 + static_cast<double>(j) * (t_hi - t0) / static_cast<double>(n);
      BranchPath p;
      ParabolicStepper stepper(m);
      std::vector<double> v = origin;
      double from = r;
      for (double s : times) {
        if (s > from) stepper.advance(from, v, s);
        p.states.push_back(m.grid.field(v, tag));
      }
      p.label = BranchLabel::departure(+1, r);
      departures[j] = std::move(p);
    });
    for (auto& p : departures) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Branch> parabolic_solve(const ParabolicInclusionModel& m, double t, double t0,
                                    const StatePoint& u0, int budget) {
  if (!(t >= t0)) throw ContractViolation("parabolic_solve: t < t0");
  const double ts[] = {t};
  std::vector<Branch> out;
  for (auto& p : parabolic_solve_path(m, ts, t0, u0, budget))
    out.push_back({p.label, std::move(p.states.front())});
  return out;
}

ProcessHandle parabolic_process(const ParabolicInclusionModel& m, std::string model_id) {
  m.validate();
  Evaluator ev = [m](double t, double t0, const StatePoint& x, int budget) {
    return parabolic_solve(m, t, t0, x, budget);
  };
  PathEvaluator path = [m](std::span<const double> times, double t0, const StatePoint& x,
                           int budget) { return parabolic_solve_path(m, times, t0, x, budget); };
  return ProcessHandle(std::move(model_id), std::move(ev), true, m.is_autonomous(),
                       std::move(path));
}

VerifierReport parabolic_decay_check(const ParabolicInclusionModel& m, const StatePoint& u0a,
                                     const StatePoint& u0b, std::span<const double> times,
                                     double t0, DecayRate rate) {
  m.validate();
  bool za = false, zb = false;
  auto ua = cone_values(m, u0a, "parabolic_decay_check", za);
  auto ub = cone_values(m, u0b, "parabolic_decay_check", zb);
  if (za || zb) throw ContractViolation("parabolic_decay_check: initial fields must be nonzero");
  const double h = m.grid.h();
  const double omega1 = m.omega.sup();
  const double mu1 = m.grid.lambda1_h();

  // snapshot k: time, ||w||^2 and the cumulative log of the bound
  std::vector<double> ts{t0}, w2, logb{0.0};
  w2.push_back(std::pow(l2_diff(ua, ub, h), 2));
  ParabolicStepper sa(m), sb(m);
  double t = t0;
  for (double s : times) {
    if (!(s > t)) throw ContractViolation("parabolic_decay_check: times must increase after t0");
    const auto n = static_cast<long>(std::ceil((s - t) / m.dt - 1e-9));
    const double k = (s - t) / static_cast<double>(n);
    double lb = logb.back();
    for (long i = 0; i < n; ++i) {
      const double tn = t + static_cast<double>(i) * k;
      sa.step(tn, ua, k);
      sb.step(tn, ub, k);
      lb -= rate == DecayRate::scheme ? 2.0 * std::log1p(k * (mu1 - omega1))
                                      : 2.0 * (m.grid.lambda1() - omega1) * k;
    }
    t = s;
    ts.push_back(s);
    w2.push_back(std::pow(l2_diff(ua, ub, h), 2));
    logb.push_back(lb);
  }

  VerifierReport rep;
  rep.check_id = rate == DecayRate::scheme ? "parabolic_decay_scheme" : "parabolic_decay";
  rep.tolerance = 1.0 + 1e-6;
  double worst = 0.0;
  std::size_t bad = 0;
  double index = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      const double bound = std::exp(logb[j] - logb[i]) * w2[i];
      const double ratio = bound > 0.0 ? w2[j] / bound : (w2[j] > 0.0 ? HUGE_VAL : 0.0);
      worst = std::max(worst, ratio);
      if (ratio > rep.tolerance) ++bad;
      rep.curve.push_back({index++, ratio});
    }
  rep.evidence["worst_ratio"] = worst;
  rep.evidence["violating_pairs"] = static_cast<double>(bad);
  rep.evidence["rate"] = rate == DecayRate::scheme
                             ? std::log1p(m.dt * (mu1 - omega1)) / m.dt
                             : m.grid.lambda1() - omega1;
  rep.evidence["semidiscrete_rate"] = mu1 - omega1;
  if (bad > 0)
    rep.notes.push_back(std::to_string(bad) + " snapshot pairs exceed the bound, worst ratio " +
                        fmt(worst));
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

StatePoint parabolic_stationary(const ParabolicInclusionModel& m) {
  m.validate();
  if (!m.is_autonomous()) throw UnsupportedModel("parabolic_stationary: coefficients are not constant");
  const double h = m.grid.h();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> v(m.grid.size(), m.b(0.0));
  ToeplitzTridiag(v.size(), 2.0 * inv_h2 - m.omega(0.0), -inv_h2).solve(v);
  return m.grid.field(std::move(v));
}

StatePoint parabolic_xi_M(const ParabolicInclusionModel& m, double t, double depth_L, double tol,
                          double max_depth) {
  m.validate();
  if (!(depth_L > 0.0)) throw ContractViolation("parabolic_xi_M: depth must be positive");
  const std::vector<double> seed(m.grid.size(), 5.0);
  double L = depth_L;
  auto prev = run(m, seed, t - L, t);
  double change = std::numeric_limits<double>::quiet_NaN();
  while (2.0 * L <= max_depth) {
    L *= 2.0;
    auto cur = run(m, seed, t - L, t);
    change = l2_diff(cur, prev, m.grid.h());
    if (change <= tol) return m.grid.field(std::move(cur));
    prev = std::move(cur);
  }
  throw NumericalFailure("parabolic_xi_M: pullback not converged at depth " + fmt(L) +
                             " (last change " + fmt(change) + ")",
                         t);
}

std::vector<StatePoint> parabolic_departure_states(const ParabolicInclusionModel& m, double t,
                                                   double depth_L, std::size_t n_departures) {
  m.validate();
  if (!(depth_L > 0.0)) throw ContractViolation("parabolic_departure_states: depth must be positive");
  if (n_departures < 2) throw ContractViolation("parabolic_departure_states: need two departures");
  const std::vector<double> origin(m.grid.size(), 0.0);
  std::vector<StatePoint> out(n_departures, m.grid.field(origin));
  detail::parallel_for(n_departures, [&](std::size_t j) {
    const double r = t - depth_L + static_cast<double>(j) * depth_L /
                                       static_cast<double>(n_departures - 1);
    out[j] = m.grid.field(run(m, origin, r, t));
  });
  return out;
}

CompactSetSample parabolic_attractor_sample(const ParabolicInclusionModel& m, double t,
                                            double depth_L, std::size_t n_departures,
                                            double eps) {
  auto pts = eps_merge(parabolic_departure_states(m, t, depth_L, n_departures), eps).points();
  pts.push_back(m.grid.field(std::vector<double>(m.grid.size(), 0.0)));
  pts.push_back(parabolic_xi_M(m, t, depth_L));
  return CompactSetSample(std::move(pts), eps);
}

SetFamily parabolic_attractor_family(const ParabolicInclusionModel& m,
                                     std::span<const double> times, double depth_L,
                                     std::size_t n_departures, double eps) {
  std::vector<CompactSetSample> sections;
  for (double t : times) sections.push_back(parabolic_attractor_sample(m, t, depth_L, n_departures, eps));
  return SetFamily({times.begin(), times.end()}, std::move(sections), "pullback-numerical");
}

ParabolicAutonomousAttractor parabolic_autonomous_attractor(const ParabolicInclusionModel& m,
                                                            double depth_L,
                                                            std::size_t n_departures,
                                                            double eps) {
  m.validate();
  if (!m.is_autonomous())
    throw UnsupportedModel("parabolic_autonomous_attractor: coefficients are not constant");
  ParabolicAutonomousAttractor out{m.grid.field(std::vector<double>(m.grid.size(), 0.0)),
                                   parabolic_stationary(m), {}};
  auto pts = eps_merge(parabolic_departure_states(m, 0.0, depth_L, n_departures), eps).points();
  pts.push_back(out.zero);
  pts.push_back(out.v1_plus);
  out.sample = CompactSetSample(std::move(pts), eps);
  return out;
}

VerifierReport parabolic_aa_contract(const ParabolicInclusionModel& m, const StatePoint& u0,
                                     std::span<const double> taus, double T, double c_max) {
  const auto lim = m.limit_model();
  if (!(T > 0.0)) throw ContractViolation("parabolic_aa_contract: T must be positive");
  bool zero = false;
  const auto v0 = cone_values(m, u0, "parabolic_aa_contract", zero);
  if (zero) throw ContractViolation("parabolic_aa_contract: initial field must be nonzero");
  const double h = m.grid.h();
  const double b_inf = lim.b(0.0), w_inf = lim.omega(0.0);
  constexpr int checkpoints = 50;

  std::vector<std::vector<double>> z(checkpoints + 1, v0);
  {
    ParabolicStepper s(lim);
    double t = 0.0;
    for (int c = 1; c <= checkpoints; ++c) {
      z[c] = z[c - 1];
      s.advance(t, z[c], T * c / checkpoints);
    }
  }

  VerifierReport rep;
  rep.check_id = "parabolic_aa_contract";
  rep.tolerance = c_max;
  double worst = 0.0;
  for (double tau : taus) {
    double delta = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double s = tau + T * i / 1000.0;
      delta = std::max(delta, std::abs(m.b(s) - b_inf) + std::abs(m.omega(s) - w_inf));
    }
    ParabolicStepper s(m);
    std::vector<double> u = v0;
    double t = tau;
    double gap = 0.0;
    for (int c = 1; c <= checkpoints; ++c) {
      s.advance(t, u, tau + T * c / checkpoints);
      gap = std::max(gap, l2_diff(u, z[c], h));
    }
    const double ratio = delta > 0.0 ? gap / delta : (gap > 0.0 ? HUGE_VAL : 0.0);
    worst = std::max(worst, ratio);
    rep.curve.push_back({tau, ratio});
    rep.evidence["gap@" + fmt(tau)] = gap;
  }
  rep.evidence["constant"] = worst;
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

}  // namespace attlab
