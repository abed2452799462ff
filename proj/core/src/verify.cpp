#include "attlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "attlab/errors.hpp"

namespace attlab {

LimitOptions ToleranceSchedule::limit_options() const {
  LimitOptions o;
  o.eps = eps;
  o.recurrence_span = recurrence_span;
  o.samples = samples;
  o.budget = budget;
  return o;
}

void ToleranceSchedule::validate() const {
  if (!(tol > 0.0)) throw ContractViolation("schedule: tol must be positive");
  if (budget < 1) throw ContractViolation("schedule: budget must be positive");
  if (!(eps >= 0.0)) throw ContractViolation("schedule: eps must be nonnegative");
  if (grid.size() >= 2) {
    const bool up = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1]))
        throw ContractViolation("schedule: grid must be strictly monotone");
  }
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_grid(const ToleranceSchedule& sched, const char* op) {
  sched.validate();
  if (sched.grid.empty()) throw ContractViolation(std::string(op) + ": empty grid");
}

void note_source(VerifierReport& rep, const SetFamily& A) {
  if (!A.source().empty()) rep.notes.push_back("attractor sections: " + A.source());
}

VerifierReport liminf_check(const ProcessHandle& p, const SetFamily& A,
                            const std::vector<TestSet>& tests, const ToleranceSchedule& sched,
                            const LimitSetResult& sup, const LimitSetResult& inf) {
  VerifierReport rep;
  rep.check_id = "cond_omega0";
  rep.tolerance = sched.tol;
  note_source(rep, A);
  rep.notes.insert(rep.notes.end(), inf.notes.begin(), inf.notes.end());
  if (inf.min_max_defect) rep.evidence["min_max_defect"] = *inf.min_max_defect;

  if (inf.set.empty()) {
    rep.passed = false;
    rep.margin = -*inf.min_max_defect;
    rep.notes.push_back("omega_0(A) is empty: the condition cannot hold");
    return rep;
  }

  const auto opts = sched.limit_options();
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const auto fw = forward_omega(p, tests[i].set, tests[i].t0, sched.horizon, sched.window, opts);
    rep.curve.push_back({static_cast<double>(i), semidist(fw.set, inf.set)});
  }

  VerifierReport eq;
  eq.check_id = "omega_equals_omega0";
  eq.tolerance = 2.0 * sched.eps;
  eq.curve.push_back({A.times().back(), hausdorff(sup.set, inf.set)});
  apply_verdict(eq, VerdictRule::bounded);
  rep.sub_checks.push_back(std::move(eq));

  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

}  // namespace

VerifierReport verify_pullback_attraction(const ProcessHandle& p, const SetFamily& A,
                                          const CompactSetSample& B, double t_fixed,
                                          const ToleranceSchedule& sched) {
  require_grid(sched, "verify_pullback_attraction");
  const auto& target = A.at(t_fixed);
  VerifierReport rep;
  rep.check_id = "pullback_attraction";
  rep.tolerance = sched.tol;
  note_source(rep, A);
  bool crashed = false;
  for (double t0 : sched.grid) {
    if (t0 > t_fixed) throw ContractViolation("verify_pullback_attraction: t0 after t_fixed");
    try {
      const auto img = evolve_set(p, t_fixed, t0, B, sched.budget);
      rep.curve.push_back({t0, semidist(img, target)});
    } catch (const std::runtime_error& e) {
      crashed = true;
      rep.notes.push_back("t0=" + fmt(t0) + ": " + e.what());
    }
  }
  apply_verdict(rep, VerdictRule::converges, sched.floor);
  if (crashed) rep.passed = false;
  return rep;
}

VerifierReport verify_forward_attraction(const ProcessHandle& p, const SetFamily& A,
                                         const CompactSetSample& B, double t0_fixed,
                                         const ToleranceSchedule& sched) {
  require_grid(sched, "verify_forward_attraction");
  VerifierReport rep;
  rep.check_id = "forward_attraction";
  rep.tolerance = sched.tol;
  note_source(rep, A);
  try {
    const auto imgs = evolve_set_path(p, sched.grid, t0_fixed, B, sched.budget);
    for (std::size_t k = 0; k < sched.grid.size(); ++k)
      rep.curve.push_back({sched.grid[k], semidist(imgs[k], A.at(sched.grid[k]))});
  } catch (const EvolveSetError& e) {
    rep.notes.push_back(e.what());
    rep.passed = false;
    return rep;
  }
  apply_verdict(rep, VerdictRule::converges, sched.floor);
  return rep;
}

VerifierReport verify_invariance(const ProcessHandle& p, const SetFamily& A, InvarianceMode mode,
                                 const ToleranceSchedule& sched) {
  require_grid(sched, "verify_invariance");
  VerifierReport rep;
  rep.check_id = mode == InvarianceMode::strict ? "invariance_strict" : "invariance_negative";
  rep.tolerance = sched.tol;
  note_source(rep, A);
  double index = 0.0;
  for (std::size_t i = 0; i < sched.grid.size(); ++i) {
    const double s = sched.grid[i];
    const auto& As = A.at(s);
    for (std::size_t j = i + 1; j < sched.grid.size(); ++j) {
      const double t = sched.grid[j];
      const auto img = evolve_set(p, t, s, As, sched.budget);
      const auto& At = A.at(t);
      const double d = mode == InvarianceMode::strict ? hausdorff(img, At) : semidist(At, img);
      rep.curve.push_back({index++, d});
      if (d > sched.tol)
        rep.notes.push_back("pair (s=" + fmt(s) + ", t=" + fmt(t) + "): distance " + fmt(d));
    }
  }
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

VerifierReport verify_cond_omega0(const ProcessHandle& p, const SetFamily& A,
                                  const std::vector<TestSet>& tests,
                                  const ToleranceSchedule& sched) {
  sched.validate();
  if (tests.empty()) throw ContractViolation("verify_cond_omega0: no test sets");
  const auto opts = sched.limit_options();
  const auto sup = omega_limsup(A, sched.window, opts);
  const auto inf = omega_liminf(A, sched.window, opts);
  return liminf_check(p, A, tests, sched, sup, inf);
}

VerifierReport verify_cond_omega_pair(const ProcessHandle& p, const SetFamily& A,
                                      const std::vector<TestSet>& tests,
                                      const ToleranceSchedule& sched) {
  require_grid(sched, "verify_cond_omega_pair");
  if (tests.empty()) throw ContractViolation("verify_cond_omega_pair: no test sets");
  const auto opts = sched.limit_options();
  const auto sup = omega_limsup(A, sched.window, opts);

  VerifierReport cond;
  cond.check_id = "cond_omega";
  cond.tolerance = sched.tol;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const auto fw = forward_omega(p, tests[i].set, tests[i].t0, sched.horizon, sched.window, opts);
    cond.curve.push_back({static_cast<double>(i), semidist(fw.set, sup.set)});
  }
  apply_verdict(cond, VerdictRule::bounded);

  VerifierReport rep;
  rep.check_id = "cond_omega_pair";
  rep.tolerance = sched.tol;
  note_source(rep, A);
  rep.notes.insert(rep.notes.end(), sup.notes.begin(), sup.notes.end());
  for (double t : sched.grid) rep.curve.push_back({t, hausdorff(A.at(t), sup.set)});
  rep.sub_checks.push_back(std::move(cond));
  apply_verdict(rep, VerdictRule::converges, sched.floor);
  return rep;
}

VerifierReport verify_amin(const ProcessHandle& p, const SetFamily& A,
                           const std::vector<CompactSetSample>& bounded_sets,
                           const std::vector<double>& t0s, const ToleranceSchedule& sched) {
  require_grid(sched, "verify_amin");
  const auto opts = sched.limit_options();
  const auto amin = a_min(p, bounded_sets, t0s, sched.horizon, sched.window, opts);

  VerifierReport rep;
  rep.check_id = "amin";
  rep.tolerance = sched.tol;
  note_source(rep, A);
  for (double t : sched.grid) rep.curve.push_back({t, semidist(amin.set, A.at(t))});
  apply_verdict(rep, VerdictRule::converges, sched.floor);

  std::vector<TestSet> tests;
  for (const auto& B : bounded_sets)
    for (double t0 : t0s) tests.push_back({B, t0});
  const auto sup = omega_limsup(A, sched.window, opts);
  const auto inf = omega_liminf(A, sched.window, opts);
  const auto cross = liminf_check(p, A, tests, sched, sup, inf);
  rep.evidence["cond_omega0_passed"] = cross.passed ? 1.0 : 0.0;
  rep.evidence["agrees_with_cond_omega0"] = cross.passed == rep.passed ? 1.0 : 0.0;
  rep.notes.push_back(cross.passed == rep.passed
                          ? "verdict agrees with cond_omega0"
                          : "verdict DISAGREES with cond_omega0 (the two are equivalent)");
  return rep;
}

VerifierReport verify_asymptotic_equivalence(const SetFamily& A1, const SetFamily& A2,
                                             const ToleranceSchedule& sched) {
  sched.validate();
  if (A1.size() != A2.size())
    throw ContractViolation("verify_asymptotic_equivalence: time grids differ");
  for (std::size_t k = 0; k < A1.size(); ++k)
    if (std::abs(A1.times()[k] - A2.times()[k]) > 1e-9 * std::max(1.0, std::abs(A1.times()[k])))
      throw ContractViolation("verify_asymptotic_equivalence: time grids differ");
  VerifierReport rep;
  rep.check_id = "asymptotic_equivalence";
  rep.tolerance = sched.tol;
  for (std::size_t k = 0; k < A1.size(); ++k)
    rep.curve.push_back({A1.times()[k], hausdorff(A1.sections()[k], A2.sections()[k])});
  apply_verdict(rep, VerdictRule::converges, sched.floor);
  return rep;
}

VerifierReport verify_aa_convergence(const ProcessHandle& p, const SetFamily& A,
                                     const CompactSetSample& A_inf,
                                     const ToleranceSchedule& sched) {
  require_grid(sched, "verify_aa_convergence");
  VerifierReport easy;
  easy.check_id = "aa_attracted";  // dist(A(t), A_inf)
  easy.tolerance = sched.tol;
  VerifierReport hard;
  hard.check_id = "aa_covering";  // dist(A_inf, A(t))
  hard.tolerance = sched.tol;
  VerifierReport rep;
  rep.check_id = "aa_convergence";
  rep.tolerance = sched.tol;
  note_source(rep, A);
  for (double t : sched.grid) {
    const auto& At = A.at(t);
    const double e = semidist(At, A_inf);
    const double h = semidist(A_inf, At);
    easy.curve.push_back({t, e});
    hard.curve.push_back({t, h});
    rep.curve.push_back({t, std::max(e, h)});
  }
  apply_verdict(easy, VerdictRule::converges, sched.floor);
  apply_verdict(hard, VerdictRule::converges, sched.floor);
  rep.sub_checks.push_back(std::move(easy));
  rep.sub_checks.push_back(std::move(hard));
  apply_verdict(rep, VerdictRule::converges, sched.floor);
  rep.notes.push_back("model " + p.model_id() +
                      ": only the hypotheses and conclusion are checked; the backward extension "
                      "of limit trajectories used in the proof is not constructed");
  return rep;
}

}  // namespace attlab
