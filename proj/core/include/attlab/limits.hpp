#pragma once

// Finite-window approximations of forward omega-limit sets and of the Limsup
// and Liminf of a set family as t -> +inf.
//
// Every limit is read off a trailing window [T - W, T]. A candidate point is
// kept only if it recurs: it must lie within eps of the states seen during the
// last recurrence span of the window (a quarter of the window by default).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "attlab/process.hpp"
#include "attlab/report.hpp"
#include "attlab/setcalc.hpp"

namespace attlab {

enum class LimitKind { forward_omega, limsup, liminf, a_min };

std::string_view to_string(LimitKind kind);

struct LimitSetResult {
  LimitKind kind = LimitKind::forward_omega;
  CompactSetSample set;  // empty only for liminf
  double window_lo = 0.0;
  double window_hi = 0.0;
  double eps = 0.0;
  /// Largest membership defect among the reported points (<= eps).
  double residual = 0.0;
  /// Liminf only: min over candidates of the max defect over the window.
  std::optional<double> min_max_defect;
  std::vector<std::string> notes;
};

struct LimitOptions {
  double eps = 1e-2;
  /// Length of the recurrence span at the end of the window; 0 means window / 4.
  double recurrence_span = 0.0;
  /// Snapshot times per window for orbit sampling.
  std::size_t samples = 201;
  int budget = 101;
};

/// Union of branch states of U(t, t0, B) for t in [horizon - window, horizon],
/// recurrence-filtered. Needs horizon - t0 >= 3 window.
LimitSetResult forward_omega(const ProcessHandle& p, const CompactSetSample& B, double t0,
                             double horizon, double window, const LimitOptions& opts = {});

/// Limsup of the family over its last `window` time units.
LimitSetResult omega_limsup(const SetFamily& family, double window, const LimitOptions& opts = {});

/// Liminf: limsup candidates y with max_t dist(y, K(t)) <= eps over the window.
LimitSetResult omega_liminf(const SetFamily& family, double window, const LimitOptions& opts = {});

/// Union of forward_omega over all (B, t0) pairs.
LimitSetResult a_min(const ProcessHandle& p, const std::vector<CompactSetSample>& bounded_sets,
                     const std::vector<double>& t0s, double horizon, double window,
                     const LimitOptions& opts = {});

struct BoundednessOptions {
  std::size_t samples = 201;
  int budget = 101;
  /// Norm bound applies from this time on; defaults to t0.
  std::optional<double> after;
  /// Additional discrete V-norm bound for grid fields.
  std::optional<double> v_bound;
};

/// Checks that every sampled branch state on [t0, horizon] has norm <= bound
/// (and V-norm <= v_bound for fields). Blow-up is reported, not thrown.
VerifierReport forward_boundedness_diagnostic(const ProcessHandle& p, const CompactSetSample& B,
                                              double t0, double horizon, double bound,
                                              const BoundednessOptions& opts = {});

}  // namespace attlab
