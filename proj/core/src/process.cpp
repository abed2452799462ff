#include "attlab/process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "attlab/errors.hpp"

namespace attlab {

std::string BranchLabel::to_string() const {
  switch (kind) {
    case BranchKind::unique: return "unique";
    case BranchKind::zero_rest: return "zero-rest";
    case BranchKind::departure_plus:
    case BranchKind::departure_minus: {
      std::ostringstream os;
      os.precision(17);
      os << (kind == BranchKind::departure_plus ? "departure-plus@" : "departure-minus@")
         << departure_time.value_or(0.0);
      return os.str();
    }
  }
  return "unique";
}

BranchLabel BranchLabel::parse(std::string_view s) {
  if (s == "unique") return unique();
  if (s == "zero-rest") return zero_rest();
  const auto at = s.find('@');
  if (at == std::string_view::npos) throw ContractViolation("bad branch label: " + std::string(s));
  const auto kind = s.substr(0, at);
  const std::string num(s.substr(at + 1));
  const double r = std::stod(num);
  if (kind == "departure-plus") return departure(+1, r);
  if (kind == "departure-minus") return departure(-1, r);
  throw ContractViolation("bad branch label: " + std::string(s));
}

void TrajectorySample::validate() const {
  if (times.size() != states.size() || times.empty())
    throw ContractViolation("TrajectorySample: one state per time required");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ContractViolation("TrajectorySample: times must increase");
    if (!states[i].compatible_with(states[0]))
      throw ContractViolation("TrajectorySample: states differ in dimension");
  }
  if (branch.is_departure() != branch.departure_time.has_value())
    throw ContractViolation("TrajectorySample: departure time iff departure branch");
}

ProcessHandle::ProcessHandle(std::string model_id, Evaluator evaluator, bool multivalued,
                             bool autonomous, PathEvaluator path)
    : model_id_(std::move(model_id)),
      evaluator_(std::move(evaluator)),
      path_(std::move(path)),
      multivalued_(multivalued),
      autonomous_(autonomous) {
  if (!evaluator_) throw ContractViolation("ProcessHandle: missing evaluator");
}

std::vector<double> departure_grid(double t0, double t, int budget) {
  if (budget < 1) throw ContractViolation("branch budget must be positive");
  const int n = (budget - 1) / 2;
  std::vector<double> r;
  r.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int k = 0; k < n; ++k) r.push_back(t0 + (t - t0) * k / n);
  return r;
}

void guard_state(std::span<const double> values, double h, double t, double last_good_time) {
  for (double v : values)
    if (!std::isfinite(v))
      throw NumericalFailure("non-finite state at t=" + std::to_string(t), last_good_time);
  if (l2_norm(values, h) > 1e8)
    throw NumericalFailure("discrete L2 norm above 1e8 at t=" + std::to_string(t),
                           last_good_time);
}

namespace {

void check_times(double t, double t0, int budget) {
  if (!(t >= t0)) throw ContractViolation("evolve: t < t0");
  if (budget < 1) throw ContractViolation("evolve: branch budget must be positive");
}

}  // namespace

std::vector<Branch> evolve(const ProcessHandle& p, double t, double t0, const StatePoint& x,
                           int budget) {
  check_times(t, t0, budget);
  if (t == t0) return {Branch{BranchLabel::unique(), x}};
  auto out = p.evaluator()(t, t0, x, budget);
  if (out.empty()) throw NumericalFailure("evaluator returned no state", t0);
  if (!p.is_multivalued() && out.size() != 1)
    throw ContractViolation("single-valued process returned several states");
  return out;
}

std::vector<BranchPath> evolve_path(const ProcessHandle& p, std::span<const double> times,
                                    double t0, const StatePoint& x, int budget) {
  if (budget < 1) throw ContractViolation("evolve: branch budget must be positive");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t0) throw ContractViolation("evolve_path: time before t0");
    if (i > 0 && times[i] < times[i - 1]) throw ContractViolation("evolve_path: times must increase");
  }
  if (times.empty()) return {};
  if (p.path_evaluator()) return p.path_evaluator()(times, t0, x, budget);
  if (p.is_multivalued())
    throw ContractViolation("evolve_path: multivalued handle without a path evaluator");
  BranchPath path{BranchLabel::unique(), {}};
  path.states.reserve(times.size());
  for (double t : times) path.states.push_back(evolve(p, t, t0, x, budget).front().state);
  return {std::move(path)};
}

CompactSetSample evolve_set(const ProcessHandle& p, double t, double t0,
                            const CompactSetSample& B, int budget) {
  check_times(t, t0, budget);
  if (B.empty()) throw EmptySetError("evolve_set: empty set");
  std::vector<StatePoint> images;
  std::vector<std::size_t> failed;
  std::string first_error;
  for (std::size_t i = 0; i < B.size(); ++i) {
    try {
      for (auto& br : evolve(p, t, t0, B[i], budget)) images.push_back(std::move(br.state));
    } catch (const NumericalFailure& e) {
      if (failed.empty()) first_error = e.what();
      failed.push_back(i);
    }
  }
  if (!failed.empty())
    throw EvolveSetError("evolve_set: " + std::to_string(failed.size()) +
                             " point(s) failed; first: " + first_error,
                         std::move(failed));
  return eps_merge(images, B.merge_eps());
}

std::vector<CompactSetSample> evolve_set_path(const ProcessHandle& p,
                                              std::span<const double> times, double t0,
                                              const CompactSetSample& B, int budget) {
  if (B.empty()) throw EmptySetError("evolve_set_path: empty set");
  std::vector<std::vector<StatePoint>> per_time(times.size());
  std::vector<std::size_t> failed;
  std::string first_error;
  for (std::size_t i = 0; i < B.size(); ++i) {
    try {
      for (auto& path : evolve_path(p, times, t0, B[i], budget))
        for (std::size_t k = 0; k < times.size(); ++k)
          per_time[k].push_back(std::move(path.states[k]));
    } catch (const NumericalFailure& e) {
      if (failed.empty()) first_error = e.what();
      failed.push_back(i);
    }
  }
  if (!failed.empty())
    throw EvolveSetError("evolve_set_path: " + std::to_string(failed.size()) +
                             " point(s) failed; first: " + first_error,
                         std::move(failed));
  std::vector<CompactSetSample> out;
  out.reserve(times.size());
  for (auto& pts : per_time) out.push_back(eps_merge(pts, B.merge_eps()));
  return out;
}

namespace {

CompactSetSample as_set(std::vector<Branch> branches) {
  std::vector<StatePoint> pts;
  pts.reserve(branches.size());
  for (auto& b : branches) pts.push_back(std::move(b.state));
  return eps_merge(pts, 0.0);
}

}  // namespace

VerifierReport check_cocycle(const ProcessHandle& p, double t0, double tau, double t,
                             const CompactSetSample& B, int budget, double tol) {
  if (!(t0 <= tau && tau <= t)) throw ContractViolation("check_cocycle: need t0 <= tau <= t");
  VerifierReport rep;
  rep.check_id = "cocycle";
  rep.tolerance = tol;
  double worst_reverse = 0.0;
  for (std::size_t i = 0; i < B.size(); ++i) {
    const auto direct = as_set(evolve(p, t, t0, B[i], budget));
    const auto mid = as_set(evolve(p, tau, t0, B[i], budget));
    const auto composed = evolve_set(p, t, tau, mid, budget);
    double d = semidist(direct, composed);
    const double reverse = semidist(composed, direct);
    worst_reverse = std::max(worst_reverse, reverse);
    if (!p.is_multivalued()) d = std::max(d, reverse);
    rep.curve.push_back({static_cast<double>(i), d});
  }
  rep.evidence["reverse_semidist"] = worst_reverse;
  rep.notes.push_back(p.is_multivalued() ? "one-sided inclusion checked (multivalued)"
                                         : "two-sided equality checked (strict process)");
  rep.evidence["two_sided"] = p.is_multivalued() ? 0.0 : 1.0;
  if (p.is_multivalued() && worst_reverse <= tol)
    rep.notes.push_back("reverse inclusion also holds within tol (strict on this sample)");
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

namespace {

// min over reproduced branches of the max distance along the samples.
double reproduction_defect(const ProcessHandle& p, std::span<const double> times,
                           std::span<const StatePoint> states, int budget) {
  const auto paths = evolve_path(p, times, times.front(), states.front(), budget);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& path : paths) {
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size() && worst < best; ++k)
      worst = std::max(worst, distance(path.states[k], states[k]));
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace

VerifierReport check_axioms_K(const ProcessHandle& p,
                              const std::vector<TrajectorySample>& trajectories,
                              const std::vector<Gluing>& gluings, double tol, int budget) {
  VerifierReport rep;
  rep.check_id = "axioms_K";
  rep.tolerance = tol;
  double index = 0.0;
  for (std::size_t j = 0; j < trajectories.size(); ++j) {
    const auto& tr = trajectories[j];
    tr.validate();
    for (std::size_t k = 0; k + 1 < tr.times.size(); ++k) {
      const std::span<const double> ts(tr.times.data() + k, tr.times.size() - k);
      const std::span<const StatePoint> xs(tr.states.data() + k, tr.states.size() - k);
      const double d = reproduction_defect(p, ts, xs, budget);
      rep.curve.push_back({index++, d});
      if (d > tol)
        rep.notes.push_back("translation: trajectory " + std::to_string(j) + " suffix from t=" +
                            std::to_string(tr.times[k]) + " not reproduced (defect " +
                            std::to_string(d) + ")");
    }
  }
  for (const auto& g : gluings) {
    if (g.head >= trajectories.size() || g.tail >= trajectories.size())
      throw ContractViolation("check_axioms_K: gluing index out of range");
    const auto& head = trajectories[g.head];
    const auto& tail = trajectories[g.tail];
    const double s = tail.times.front();
    auto it = std::find_if(head.times.begin(), head.times.end(),
                           [&](double v) { return std::abs(v - s) <= 1e-12 * std::max(1.0, std::abs(s)); });
    if (it == head.times.end())
      throw ContractViolation("check_axioms_K: junction time is not a sample of the head");
    const auto idx = static_cast<std::size_t>(it - head.times.begin());
    const double jump = distance(head.states[idx], tail.states.front());
    if (jump > tol) {
      rep.notes.push_back("concatenation: junction mismatch " + std::to_string(jump) +
                          " at t=" + std::to_string(s) + " (axiom violation finding)");
      rep.curve.push_back({index++, jump});
      continue;
    }
    std::vector<double> ts(head.times.begin(), head.times.begin() + idx + 1);
    std::vector<StatePoint> xs(head.states.begin(), head.states.begin() + idx + 1);
    ts.insert(ts.end(), tail.times.begin() + 1, tail.times.end());
    xs.insert(xs.end(), tail.states.begin() + 1, tail.states.end());
    const double d = reproduction_defect(p, ts, xs, budget);
    rep.curve.push_back({index++, d});
    if (d > tol)
      rep.notes.push_back("concatenation: glued trajectory not reproduced (defect " +
                          std::to_string(d) + ")");
  }
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

}  // namespace attlab
