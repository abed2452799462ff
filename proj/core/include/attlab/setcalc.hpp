#pragma once

// Finite-sample compact sets and the Hausdorff semidistance.
//
// A compact set is represented by a finite eps-net (CompactSetSample). All
// set-level statements are therefore checked up to the recorded merge eps.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace attlab {

enum class NormTag { abs, l2_discrete, h1_discrete };

std::string_view to_string(NormTag tag);
NormTag norm_tag_from_string(std::string_view s);

/// Discrete L2 norm on an interior grid: sqrt(h * sum u_i^2).
double l2_norm(std::span<const double> u, double h);
/// Discrete H1_0 seminorm with zero phantom boundary values.
double v_norm(std::span<const double> u, double h);

/// A state of a system. Scalars carry the absolute-value metric; grid fields
/// carry a discrete L2 or H1_0 metric together with their spatial step.
class StatePoint {
 public:
  static StatePoint scalar(double x);
  static StatePoint field(std::vector<double> values, double h,
                          NormTag tag = NormTag::l2_discrete);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  NormTag norm_tag() const noexcept { return tag_; }
  std::optional<double> step() const noexcept { return h_; }

  /// Value of a scalar point; throws ContractViolation for fields.
  double scalar_value() const;

  bool compatible_with(const StatePoint& other) const noexcept;

  /// Same values, possibly different metric (e.g. L2 -> H1 for diagnostics).
  StatePoint with_norm(NormTag tag) const;

  friend bool operator==(const StatePoint&, const StatePoint&) = default;

 private:
  StatePoint(std::vector<double> values, NormTag tag, std::optional<double> h);

  std::vector<double> values_;
  NormTag tag_ = NormTag::abs;
  std::optional<double> h_;
};

/// Metric distance between compatible points.
double distance(const StatePoint& a, const StatePoint& b);
/// Distance to the origin in the point's own metric.
double norm(const StatePoint& x);

class CompactSetSample {
 public:
  /// The explicitly empty sample (only meaningful as a liminf result).
  CompactSetSample() = default;
  explicit CompactSetSample(std::vector<StatePoint> points, double merge_eps = 0.0);

  /// Uniform n-point sample of [lo, hi] (n >= 2, or n == 1 when lo == hi).
  static CompactSetSample interval(double lo, double hi, std::size_t n, double merge_eps = 0.0);

  bool empty() const noexcept { return points_.empty(); }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<StatePoint>& points() const noexcept { return points_; }
  const StatePoint& operator[](std::size_t i) const { return points_[i]; }
  double merge_eps() const noexcept { return merge_eps_; }
  NormTag norm_tag() const;
  std::size_t dimension() const;

 private:
  std::vector<StatePoint> points_;
  double merge_eps_ = 0.0;
};

/// min over b of distance(y, b).
double point_to_set(const StatePoint& y, const CompactSetSample& b);

/// dist(A, B) = sup_{a in A} inf_{b in B} |a - b|.
double semidist(const CompactSetSample& a, const CompactSetSample& b);

/// Reference implementation: plain O(|A||B|) scan with no fast paths. The
/// scalar path of semidist sorts B; this is kept as the oracle it is tested
/// against.
double semidist_exhaustive(const CompactSetSample& a, const CompactSetSample& b);

double hausdorff(const CompactSetSample& a, const CompactSetSample& b);

/// Repeated nearest-point queries against one sample. Scalar samples are
/// searched in sorted order; fields fall back to a scan. The sample must
/// outlive the index.
class NearestIndex {
 public:
  explicit NearestIndex(const CompactSetSample& set);
  double distance_to(const StatePoint& y) const;

 private:
  const CompactSetSample* set_;
  std::vector<double> sorted_;
};

/// Greedy first-kept merge: scan in input order and keep a point iff its
/// distance to every kept point exceeds eps.
CompactSetSample eps_merge(std::span<const StatePoint> points, double eps);

/// eps_merge of the concatenation of several samples.
CompactSetSample merge_union(std::span<const CompactSetSample> sets, double eps);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const noexcept { return hi - lo; }
};

Interval interval_hull(const CompactSetSample& a);

/// Time-indexed family {K(t)} on a strictly increasing finite grid.
class SetFamily {
 public:
  SetFamily() = default;
  SetFamily(std::vector<double> times, std::vector<CompactSetSample> sections,
            std::string source = {});

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<CompactSetSample>& sections() const noexcept { return sections_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }

  /// Where the sections came from ("closed-form", "pullback-numerical", ...).
  const std::string& source() const noexcept { return source_; }

  /// Section at time t; throws ContractViolation when t is not a grid time.
  const CompactSetSample& at(double t, double time_tol = 1e-9) const;
  bool has_time(double t, double time_tol = 1e-9) const;

 private:
  std::vector<double> times_;
  std::vector<CompactSetSample> sections_;
  std::string source_;
};

}  // namespace attlab
