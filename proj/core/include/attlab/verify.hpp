#pragma once

// Runnable checks of pullback/forward attraction and of the omega-limit
// conditions relating the two. Each check returns a VerifierReport whose
// curve is the measured distance along a time grid.

#include <vector>

#include "attlab/limits.hpp"
#include "attlab/process.hpp"
#include "attlab/report.hpp"
#include "attlab/setcalc.hpp"

namespace attlab {

struct ToleranceSchedule {
  double tol = 1e-3;
  /// t0 grid (pullback checks, ordered towards -inf) or t grid (all others).
  std::vector<double> grid;
  int budget = 101;
  /// Set-merge tolerance for limit sets.
  double eps = 1e-2;
  /// Sampling resolution of the compared sets; curve values below it are
  /// treated as equal when judging monotonicity.
  double floor = 0.0;
  /// Limit-set window: forward orbits are sampled on [horizon - window, horizon].
  double horizon = 0.0;
  double window = 0.0;
  double recurrence_span = 0.0;
  std::size_t samples = 201;

  LimitOptions limit_options() const;
  void validate() const;
};

struct TestSet {
  CompactSetSample set;
  double t0 = 0.0;
};

enum class InvarianceMode { strict, negative };

/// curve(t0) = dist(U(t_fixed, t0, B), A(t_fixed)) over sched.grid.
VerifierReport verify_pullback_attraction(const ProcessHandle& p, const SetFamily& A,
                                          const CompactSetSample& B, double t_fixed,
                                          const ToleranceSchedule& sched);

/// curve(t) = dist(U(t, t0_fixed, B), A(t)) over sched.grid.
VerifierReport verify_forward_attraction(const ProcessHandle& p, const SetFamily& A,
                                         const CompactSetSample& B, double t0_fixed,
                                         const ToleranceSchedule& sched);

/// Strict: dist_H(U(t, s, A(s)), A(t)); negative: dist(A(t), U(t, s, A(s))),
/// over all grid pairs s < t.
VerifierReport verify_invariance(const ProcessHandle& p, const SetFamily& A, InvarianceMode mode,
                                 const ToleranceSchedule& sched);

/// omega_f(B, t0) inside omega_0(A) for all test sets; sub-check omega(A) = omega_0(A).
VerifierReport verify_cond_omega0(const ProcessHandle& p, const SetFamily& A,
                                  const std::vector<TestSet>& tests,
                                  const ToleranceSchedule& sched);

/// Sub-check omega_f(B, t0) inside omega(A); curve dist_H(A(t), omega(A)).
VerifierReport verify_cond_omega_pair(const ProcessHandle& p, const SetFamily& A,
                                      const std::vector<TestSet>& tests,
                                      const ToleranceSchedule& sched);

/// curve(t) = dist(A_min, A(t)); records agreement with verify_cond_omega0.
VerifierReport verify_amin(const ProcessHandle& p, const SetFamily& A,
                           const std::vector<CompactSetSample>& bounded_sets,
                           const std::vector<double>& t0s, const ToleranceSchedule& sched);

/// curve(t) = dist_H(A1(t), A2(t)) on the common time grid.
VerifierReport verify_asymptotic_equivalence(const SetFamily& A1, const SetFamily& A2,
                                             const ToleranceSchedule& sched);

/// Both semidistances between A(t) and the autonomous attractor A_inf, and
/// their maximum, over sched.grid.
VerifierReport verify_aa_convergence(const ProcessHandle& p, const SetFamily& A,
                                     const CompactSetSample& A_inf,
                                     const ToleranceSchedule& sched);

}  // namespace attlab
