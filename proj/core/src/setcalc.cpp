#include "attlab/setcalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "attlab/errors.hpp"

namespace attlab {

std::string_view to_string(NormTag tag) {
  switch (tag) {
    case NormTag::abs: return "abs";
    case NormTag::l2_discrete: return "L2-discrete";
    case NormTag::h1_discrete: return "H1-discrete";
  }
  return "abs";
}

NormTag norm_tag_from_string(std::string_view s) {
  if (s == "abs") return NormTag::abs;
  if (s == "L2-discrete") return NormTag::l2_discrete;
  if (s == "H1-discrete") return NormTag::h1_discrete;
  throw ContractViolation("unknown norm tag: " + std::string(s));
}

double l2_norm(std::span<const double> u, double h) {
  double s = 0.0;
  for (double v : u) s += v * v;
  return std::sqrt(h * s);
}

double v_norm(std::span<const double> u, double h) {
  double s = 0.0;
  double prev = 0.0;
  for (double v : u) {
    const double d = v - prev;
    s += d * d;
    prev = v;
  }
  s += prev * prev;
  return std::sqrt(s / h);
}

StatePoint::StatePoint(std::vector<double> values, NormTag tag, std::optional<double> h)
    : values_(std::move(values)), tag_(tag), h_(h) {
  if (values_.empty()) throw ContractViolation("StatePoint: empty value vector");
  for (double v : values_)
    if (!std::isfinite(v)) throw ContractViolation("StatePoint: non-finite entry");
  if (tag_ == NormTag::abs && values_.size() != 1)
    throw ContractViolation("StatePoint: abs norm requires a scalar");
  if (tag_ != NormTag::abs && !(h_ && *h_ > 0.0))
    throw ContractViolation("StatePoint: discrete norms require a positive grid step");
}

StatePoint StatePoint::scalar(double x) { return StatePoint({x}, NormTag::abs, std::nullopt); }

StatePoint StatePoint::field(std::vector<double> values, double h, NormTag tag) {
  if (tag == NormTag::abs) throw ContractViolation("StatePoint::field: use a discrete norm");
  return StatePoint(std::move(values), tag, h);
}

double StatePoint::scalar_value() const {
  if (tag_ != NormTag::abs) throw ContractViolation("StatePoint: not a scalar state");
  return values_[0];
}

bool StatePoint::compatible_with(const StatePoint& other) const noexcept {
  if (tag_ != other.tag_ || values_.size() != other.values_.size()) return false;
  if (tag_ == NormTag::abs) return true;
  return std::abs(*h_ - *other.h_) <= 1e-12 * std::max(1.0, *h_);
}

StatePoint StatePoint::with_norm(NormTag tag) const {
  if ((tag == NormTag::abs) != (tag_ == NormTag::abs))
    throw ContractViolation("StatePoint::with_norm: cannot switch between scalar and field metrics");
  return StatePoint(values_, tag, h_);
}

namespace {

double field_distance(std::span<const double> a, std::span<const double> b, NormTag tag,
                      double h) {
  double s = 0.0;
  if (tag == NormTag::l2_discrete) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(h * s);
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += (d - prev) * (d - prev);
    prev = d;
  }
  s += prev * prev;
  return std::sqrt(s / h);
}

}  // namespace

double distance(const StatePoint& a, const StatePoint& b) {
  if (!a.compatible_with(b)) throw ContractViolation("distance: incompatible states");
  if (a.norm_tag() == NormTag::abs) return std::abs(a[0] - b[0]);
  return field_distance(a.values(), b.values(), a.norm_tag(), *a.step());
}

double norm(const StatePoint& x) {
  switch (x.norm_tag()) {
    case NormTag::abs: return std::abs(x[0]);
    case NormTag::l2_discrete: return l2_norm(x.values(), *x.step());
    case NormTag::h1_discrete: return v_norm(x.values(), *x.step());
  }
  return 0.0;
}

CompactSetSample::CompactSetSample(std::vector<StatePoint> points, double merge_eps)
    : points_(std::move(points)), merge_eps_(merge_eps) {
  if (!(merge_eps_ >= 0.0)) throw ContractViolation("CompactSetSample: negative merge eps");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!points_[i].compatible_with(points_[0]))
      throw ContractViolation("CompactSetSample: points differ in dimension or norm");
}

CompactSetSample CompactSetSample::interval(double lo, double hi, std::size_t n, double merge_eps) {
  if (hi < lo) throw ContractViolation("interval: hi < lo");
  if (n == 0 || (n == 1 && lo != hi)) throw ContractViolation("interval: need n >= 2");
  std::vector<StatePoint> pts;
  pts.reserve(n);
  if (n == 1) {
    pts.push_back(StatePoint::scalar(lo));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = (i + 1 == n) ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
      pts.push_back(StatePoint::scalar(x));
    }
  }
  return CompactSetSample(std::move(pts), merge_eps);
}

NormTag CompactSetSample::norm_tag() const {
  if (empty()) throw EmptySetError("norm_tag of an empty sample");
  return points_[0].norm_tag();
}

std::size_t CompactSetSample::dimension() const {
  if (empty()) throw EmptySetError("dimension of an empty sample");
  return points_[0].size();
}

namespace {

void require_comparable(const CompactSetSample& a, const CompactSetSample& b, const char* op) {
  if (a.empty() || b.empty()) throw EmptySetError(std::string(op) + ": empty set");
  if (!a[0].compatible_with(b[0]))
    throw ContractViolation(std::string(op) + ": dimension or norm mismatch");
}

std::vector<double> sorted_scalars(const CompactSetSample& b) {
  std::vector<double> v;
  v.reserve(b.size());
  for (const auto& p : b.points()) v.push_back(p[0]);
  std::sort(v.begin(), v.end());
  return v;
}

double nearest_in_sorted(const std::vector<double>& sorted, double y) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), y);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = *it - y;
  if (it != sorted.begin()) best = std::min(best, y - *std::prev(it));
  return best;
}

}  // namespace

double point_to_set(const StatePoint& y, const CompactSetSample& b) {
  if (b.empty()) throw EmptySetError("point_to_set: empty set");
  if (!y.compatible_with(b[0])) throw ContractViolation("point_to_set: dimension or norm mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : b.points()) best = std::min(best, distance(y, q));
  return best;
}

double semidist_exhaustive(const CompactSetSample& a, const CompactSetSample& b) {
  require_comparable(a, b, "semidist");
  double worst = 0.0;
  for (const auto& p : a.points()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b.points()) best = std::min(best, distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

double semidist(const CompactSetSample& a, const CompactSetSample& b) {
  require_comparable(a, b, "semidist");
  if (a.norm_tag() != NormTag::abs) return semidist_exhaustive(a, b);
  const auto sorted = sorted_scalars(b);
  double worst = 0.0;
  for (const auto& p : a.points()) worst = std::max(worst, nearest_in_sorted(sorted, p[0]));
  return worst;
}

NearestIndex::NearestIndex(const CompactSetSample& set) : set_(&set) {
  if (set.empty()) throw EmptySetError("NearestIndex: empty set");
  if (set.norm_tag() == NormTag::abs) sorted_ = sorted_scalars(set);
}

double NearestIndex::distance_to(const StatePoint& y) const {
  if (!y.compatible_with((*set_)[0]))
    throw ContractViolation("NearestIndex: dimension or norm mismatch");
  if (!sorted_.empty()) return nearest_in_sorted(sorted_, y[0]);
  return point_to_set(y, *set_);
}

double hausdorff(const CompactSetSample& a, const CompactSetSample& b) {
  return std::max(semidist(a, b), semidist(b, a));
}

CompactSetSample eps_merge(std::span<const StatePoint> points, double eps) {
  if (!(eps >= 0.0)) throw ContractViolation("eps_merge: negative eps");
  if (points.empty()) return CompactSetSample({}, eps);
  for (const auto& p : points)
    if (!p.compatible_with(points[0]))
      throw ContractViolation("eps_merge: points differ in dimension or norm");

  std::vector<StatePoint> kept;
  if (points[0].norm_tag() == NormTag::abs) {
    // The nearest kept value decides each point, so an ordered index gives the
    // same result as the linear greedy scan.
    std::set<double> index;
    for (const auto& p : points) {
      const double y = p[0];
      auto it = index.lower_bound(y);
      double best = std::numeric_limits<double>::infinity();
      if (it != index.end()) best = *it - y;
      if (it != index.begin()) best = std::min(best, y - *std::prev(it));
      if (best > eps) {
        index.insert(y);
        kept.push_back(p);
      }
    }
  } else {
    for (const auto& p : points) {
      bool keep = true;
      for (const auto& k : kept)
        if (distance(p, k) <= eps) {
          keep = false;
          break;
        }
      if (keep) kept.push_back(p);
    }
  }
  return CompactSetSample(std::move(kept), eps);
}

CompactSetSample merge_union(std::span<const CompactSetSample> sets, double eps) {
  std::vector<StatePoint> all;
  for (const auto& s : sets) all.insert(all.end(), s.points().begin(), s.points().end());
  return eps_merge(all, eps);
}

Interval interval_hull(const CompactSetSample& a) {
  if (a.empty()) throw EmptySetError("interval_hull: empty set");
  if (a.norm_tag() != NormTag::abs) throw ContractViolation("interval_hull: scalar points only");
  Interval iv{a[0][0], a[0][0]};
  for (const auto& p : a.points()) {
    iv.lo = std::min(iv.lo, p[0]);
    iv.hi = std::max(iv.hi, p[0]);
  }
  return iv;
}

SetFamily::SetFamily(std::vector<double> times, std::vector<CompactSetSample> sections,
                     std::string source)
    : times_(std::move(times)), sections_(std::move(sections)), source_(std::move(source)) {
  if (times_.size() != sections_.size())
    throw ContractViolation("SetFamily: one section per time required");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1])) throw ContractViolation("SetFamily: times must increase");
  const CompactSetSample* ref = nullptr;
  for (const auto& s : sections_) {
    if (s.empty()) continue;
    if (ref && !s[0].compatible_with((*ref)[0]))
      throw ContractViolation("SetFamily: sections differ in dimension");
    ref = &s;
  }
}

bool SetFamily::has_time(double t, double time_tol) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t - time_tol);
  return it != times_.end() && std::abs(*it - t) <= time_tol;
}

const CompactSetSample& SetFamily::at(double t, double time_tol) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t - time_tol);
  if (it == times_.end() || std::abs(*it - t) > time_tol)
    throw ContractViolation("SetFamily: no section at t=" + std::to_string(t));
  return sections_[static_cast<std::size_t>(it - times_.begin())];
}

}  // namespace attlab
