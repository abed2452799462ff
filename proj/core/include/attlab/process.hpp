#pragma once

// Two-time evolution operators U(t, t0, x), single- or multivalued.
//
// Multivalued images are enumerated by branch: the solution catalogues of the
// built-in models parametrize every branch by a sign and a departure time, so
// a uniform departure grid on [t0, t] is the finite surrogate of U(t, t0, x).

#include <compare>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "attlab/report.hpp"
#include "attlab/setcalc.hpp"

namespace attlab {

enum class BranchKind { unique, zero_rest, departure_plus, departure_minus };

struct BranchLabel {
  BranchKind kind = BranchKind::unique;
  std::optional<double> departure_time;

  static BranchLabel unique() { return {}; }
  static BranchLabel zero_rest() { return {BranchKind::zero_rest, std::nullopt}; }
  static BranchLabel departure(int sign, double r) {
    return {sign > 0 ? BranchKind::departure_plus : BranchKind::departure_minus, r};
  }

  bool is_departure() const noexcept {
    return kind == BranchKind::departure_plus || kind == BranchKind::departure_minus;
  }

  /// "unique", "zero-rest", "departure-plus@<r>", "departure-minus@<r>"
  std::string to_string() const;
  static BranchLabel parse(std::string_view s);

  friend auto operator<=>(const BranchLabel&, const BranchLabel&) = default;
};

struct Branch {
  BranchLabel label;
  StatePoint state;
};

struct BranchPath {
  BranchLabel label;
  std::vector<StatePoint> states;  // one per requested time
};

/// Sampled member of a trajectory family.
struct TrajectorySample {
  std::vector<double> times;
  std::vector<StatePoint> states;
  BranchLabel branch;

  void validate() const;
};

/// (t, t0, x, budget) -> branch-labelled states of U(t, t0, x).
using Evaluator =
    std::function<std::vector<Branch>(double t, double t0, const StatePoint& x, int budget)>;
/// Same, evaluated along increasing times >= t0 in one pass; branches are
/// consistent across times.
using PathEvaluator = std::function<std::vector<BranchPath>(
    std::span<const double> times, double t0, const StatePoint& x, int budget)>;

class ProcessHandle {
 public:
  ProcessHandle(std::string model_id, Evaluator evaluator, bool multivalued, bool autonomous,
                PathEvaluator path = {});

  const std::string& model_id() const noexcept { return model_id_; }
  bool is_multivalued() const noexcept { return multivalued_; }
  bool is_autonomous() const noexcept { return autonomous_; }
  const Evaluator& evaluator() const noexcept { return evaluator_; }
  const PathEvaluator& path_evaluator() const noexcept { return path_; }

 private:
  std::string model_id_;
  Evaluator evaluator_;
  PathEvaluator path_;
  bool multivalued_;
  bool autonomous_;
};

/// Departure times per sign for a budget: floor((budget - 1) / 2) points
/// r_k = t0 + k (t - t0) / n, k = 0..n-1. r = t coincides with the zero-rest
/// branch and is left out; r = t0 is always present when n >= 1.
std::vector<double> departure_grid(double t0, double t, int budget);

/// Blow-up guard: non-finite entries or discrete L2 norm above 1e8.
void guard_state(std::span<const double> values, double h, double t, double last_good_time);

std::vector<Branch> evolve(const ProcessHandle& p, double t, double t0, const StatePoint& x,
                           int budget);

std::vector<BranchPath> evolve_path(const ProcessHandle& p, std::span<const double> times,
                                    double t0, const StatePoint& x, int budget);

/// Union of the images of all points of B, eps-merged at B.merge_eps().
CompactSetSample evolve_set(const ProcessHandle& p, double t, double t0,
                            const CompactSetSample& B, int budget);

/// evolve_set at each of several increasing times, one march per point.
std::vector<CompactSetSample> evolve_set_path(const ProcessHandle& p,
                                              std::span<const double> times, double t0,
                                              const CompactSetSample& B, int budget);

/// U(t,t0,x) subset U(t,tau,U(tau,t0,x)) for every x in B, plus the reverse
/// inclusion for single-valued handles.
VerifierReport check_cocycle(const ProcessHandle& p, double t0, double tau, double t,
                             const CompactSetSample& B, int budget, double tol);

struct Gluing {
  std::size_t head = 0;  // trajectory providing the initial segment
  std::size_t tail = 0;  // trajectory starting at a time of `head`
};

/// Translation (every suffix is reproduced by the model from its start) and
/// concatenation (glued trajectories are reproduced) checks.
VerifierReport check_axioms_K(const ProcessHandle& p,
                              const std::vector<TrajectorySample>& trajectories,
                              const std::vector<Gluing>& gluings, double tol, int budget);

}  // namespace attlab
