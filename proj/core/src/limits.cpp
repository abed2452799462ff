#include "attlab/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "attlab/errors.hpp"

namespace attlab {

std::string_view to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::forward_omega: return "forward-omega";
    case LimitKind::limsup: return "limsup";
    case LimitKind::liminf: return "liminf";
    case LimitKind::a_min: return "a-min";
  }
  return "forward-omega";
}

namespace {

constexpr double kTimeTol = 1e-9;

std::vector<double> linspace(double a, double b, std::size_t n) {
  n = std::max<std::size_t>(n, 2);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i)
    t[i] = (i + 1 == n) ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return t;
}

double resolve_span(double window, const LimitOptions& opts) {
  if (opts.recurrence_span < 0.0) throw ContractViolation("recurrence span must be nonnegative");
  const double span = opts.recurrence_span > 0.0 ? opts.recurrence_span : window / 4.0;
  return std::min(span, window);
}

std::string span_note(double span, double window) {
  std::ostringstream os;
  os << "recurrence filter over the last " << span << " of a window of " << window
     << " (heuristic membership criterion)";
  return os.str();
}

// Union of the window sections, eps-merged, keeping the points that lie
// within eps of the states seen during the final span.
LimitSetResult recurrence_filtered(LimitKind kind, std::span<const double> times,
                                   const std::vector<const CompactSetSample*>& sections,
                                   double lo, double hi, double span, double eps) {
  std::vector<StatePoint> all;
  std::vector<StatePoint> recent;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto& pts = sections[k]->points();
    all.insert(all.end(), pts.begin(), pts.end());
    if (times[k] >= hi - span - kTimeTol) recent.insert(recent.end(), pts.begin(), pts.end());
  }
  if (all.empty()) throw EmptySetError("limit set: no states in the window");

  const auto candidates = eps_merge(all, eps);
  const CompactSetSample recent_set(std::move(recent));
  const NearestIndex index(recent_set);

  std::vector<StatePoint> kept;
  double residual = 0.0;
  for (const auto& y : candidates.points()) {
    const double d = index.distance_to(y);
    if (d <= eps) {
      kept.push_back(y);
      residual = std::max(residual, d);
    }
  }
  LimitSetResult out;
  out.kind = kind;
  out.set = CompactSetSample(std::move(kept), eps);
  out.window_lo = lo;
  out.window_hi = hi;
  out.eps = eps;
  out.residual = residual;
  out.notes.push_back(span_note(span, hi - lo));
  return out;
}

struct Window {
  std::vector<double> times;
  std::vector<const CompactSetSample*> sections;
  double lo = 0.0;
  double hi = 0.0;
};

Window family_window(const SetFamily& family, double window, const char* op) {
  if (!(window > 0.0)) throw ContractViolation(std::string(op) + ": window must be positive");
  if (family.empty()) throw ContractViolation(std::string(op) + ": empty family");
  Window w;
  w.hi = family.times().back();
  w.lo = w.hi - window;
  if (family.times().front() > w.lo + kTimeTol * std::max(1.0, std::abs(w.lo)))
    throw ContractViolation(std::string(op) + ": window exceeds the family's time support");
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (family.times()[k] < w.lo - kTimeTol || family.sections()[k].empty()) continue;
    w.times.push_back(family.times()[k]);
    w.sections.push_back(&family.sections()[k]);
  }
  return w;
}

}  // namespace

LimitSetResult forward_omega(const ProcessHandle& p, const CompactSetSample& B, double t0,
                             double horizon, double window, const LimitOptions& opts) {
  if (!(window > 0.0)) throw ContractViolation("forward_omega: window must be positive");
  if (horizon - t0 < 3.0 * window)
    throw ContractViolation("forward_omega: need horizon - t0 >= 3 * window");
  if (B.empty()) throw EmptySetError("forward_omega: empty initial set");
  const double lo = horizon - window;
  const auto times = linspace(lo, horizon, opts.samples);
  std::vector<CompactSetSample> sections;
  try {
    sections = evolve_set_path(p, times, t0, B, opts.budget);
  } catch (const EvolveSetError& e) {
    throw NumericalFailure(std::string("forward_omega: forward orbit is not bounded (run "
                                       "forward_boundedness_diagnostic): ") +
                               e.what(),
                           t0);
  }
  std::vector<const CompactSetSample*> refs;
  for (const auto& s : sections) refs.push_back(&s);
  return recurrence_filtered(LimitKind::forward_omega, times, refs, lo, horizon,
                             resolve_span(window, opts), opts.eps);
}

LimitSetResult omega_limsup(const SetFamily& family, double window, const LimitOptions& opts) {
  const auto w = family_window(family, window, "omega_limsup");
  return recurrence_filtered(LimitKind::limsup, w.times, w.sections, w.lo, w.hi,
                             resolve_span(window, opts), opts.eps);
}

LimitSetResult omega_liminf(const SetFamily& family, double window, const LimitOptions& opts) {
  const auto w = family_window(family, window, "omega_liminf");
  const auto sup = recurrence_filtered(LimitKind::limsup, w.times, w.sections, w.lo, w.hi,
                                       resolve_span(window, opts), opts.eps);
  std::vector<NearestIndex> indices;
  indices.reserve(w.sections.size());
  for (const auto* s : w.sections) indices.emplace_back(*s);

  const double eps = opts.eps;
  double min_max = std::numeric_limits<double>::infinity();
  double residual = 0.0;
  std::vector<StatePoint> kept;
  for (const auto& y : sup.set.points()) {
    double worst = 0.0;
    for (const auto& idx : indices) {
      worst = std::max(worst, idx.distance_to(y));
      if (worst > eps && worst >= min_max) break;
    }
    min_max = std::min(min_max, worst);
    if (worst <= eps) {
      kept.push_back(y);
      residual = std::max(residual, worst);
    }
  }

  LimitSetResult out;
  out.kind = LimitKind::liminf;
  out.window_lo = w.lo;
  out.window_hi = w.hi;
  out.eps = eps;
  out.min_max_defect = min_max;
  out.notes = sup.notes;
  if (kept.empty()) {
    std::ostringstream os;
    os << "liminf empty: every candidate leaves some section by at least " << min_max;
    out.notes.push_back(os.str());
  } else {
    out.set = CompactSetSample(std::move(kept), eps);
    out.residual = residual;
  }
  return out;
}

LimitSetResult a_min(const ProcessHandle& p, const std::vector<CompactSetSample>& bounded_sets,
                     const std::vector<double>& t0s, double horizon, double window,
                     const LimitOptions& opts) {
  if (bounded_sets.empty() || t0s.empty()) throw ContractViolation("a_min: empty input lists");
  std::vector<StatePoint> all;
  double residual = 0.0;
  LimitSetResult out;
  for (const auto& B : bounded_sets) {
    for (double t0 : t0s) {
      auto r = forward_omega(p, B, t0, horizon, window, opts);
      all.insert(all.end(), r.set.points().begin(), r.set.points().end());
      residual = std::max(residual, r.residual);
      if (out.notes.empty()) out.notes = r.notes;
    }
  }
  out.kind = LimitKind::a_min;
  out.set = eps_merge(all, opts.eps);
  out.window_lo = horizon - window;
  out.window_hi = horizon;
  out.eps = opts.eps;
  out.residual = residual;
  out.notes.push_back("union over " + std::to_string(bounded_sets.size() * t0s.size()) +
                      " (B, t0) pairs");
  return out;
}

VerifierReport forward_boundedness_diagnostic(const ProcessHandle& p, const CompactSetSample& B,
                                              double t0, double horizon, double bound,
                                              const BoundednessOptions& opts) {
  if (!(bound > 0.0)) throw ContractViolation("forward_boundedness_diagnostic: bound must be positive");
  if (!(horizon > t0)) throw ContractViolation("forward_boundedness_diagnostic: horizon <= t0");
  if (B.empty()) throw EmptySetError("forward_boundedness_diagnostic: empty set");
  const double after = opts.after.value_or(t0);
  const auto times = linspace(t0, horizon, opts.samples);

  std::vector<double> worst(times.size(), 0.0);
  std::vector<double> worst_v(times.size(), 0.0);
  bool fields = false;
  std::optional<double> blowup_time;
  std::vector<std::string> blowup_notes;

  for (std::size_t i = 0; i < B.size(); ++i) {
    std::vector<BranchPath> paths;
    try {
      paths = evolve_path(p, times, t0, B[i], opts.budget);
    } catch (const NumericalFailure& e) {
      blowup_time = std::min(blowup_time.value_or(e.last_good_time()), e.last_good_time());
      blowup_notes.push_back("point " + std::to_string(i) + ": " + e.what());
      continue;
    }
    for (const auto& path : paths) {
      for (std::size_t k = 0; k < times.size(); ++k) {
        const auto& x = path.states[k];
        worst[k] = std::max(worst[k], norm(x));
        if (x.norm_tag() != NormTag::abs) {
          fields = true;
          worst_v[k] = std::max(worst_v[k], v_norm(x.values(), *x.step()));
        }
      }
    }
  }

  VerifierReport rep;
  rep.check_id = "forward_boundedness";
  rep.tolerance = bound;
  double transient_max = 0.0;
  std::optional<double> first_violation;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < after - kTimeTol) {
      transient_max = std::max(transient_max, worst[k]);
      continue;
    }
    rep.curve.push_back({times[k], worst[k]});
    const bool over = worst[k] > bound || (fields && opts.v_bound && worst_v[k] > *opts.v_bound);
    if (over && !first_violation) first_violation = times[k];
  }
  rep.evidence["transient_max_norm"] = transient_max;

  if (fields && opts.v_bound) {
    VerifierReport v;
    v.check_id = "forward_boundedness_v_norm";
    v.tolerance = *opts.v_bound;
    for (std::size_t k = 0; k < times.size(); ++k)
      if (times[k] >= after - kTimeTol) v.curve.push_back({times[k], worst_v[k]});
    apply_verdict(v, VerdictRule::bounded);
    rep.sub_checks.push_back(std::move(v));
  }
  apply_verdict(rep, VerdictRule::bounded);

  if (blowup_time) {
    rep.passed = false;
    first_violation = std::min(first_violation.value_or(*blowup_time), *blowup_time);
    rep.notes.insert(rep.notes.end(), blowup_notes.begin(), blowup_notes.end());
  }
  if (first_violation) {
    rep.evidence["first_violation_time"] = *first_violation;
    rep.notes.push_back("first violation at t=" + std::to_string(*first_violation));
  }
  rep.notes.push_back("boundedness of forward orbits stands in for forward asymptotic compactness");
  return rep;
}

}  // namespace attlab
