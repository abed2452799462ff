#include "attlab/report.hpp"

#include <algorithm>

namespace attlab {

bool tail_non_increasing(const std::vector<CurvePoint>& curve, double floor) {
  if (curve.size() < 2) return true;
  const std::size_t n = curve.size();
  const std::size_t start = n - std::max<std::size_t>(2, (n + 3) / 4);
  for (std::size_t i = start; i + 1 < n; ++i) {
    const double prev = std::max(curve[i].value, floor);
    const double next = std::max(curve[i + 1].value, floor);
    if (next > 1.1 * prev) return false;
  }
  return true;
}

void apply_verdict(VerifierReport& report, VerdictRule rule, double floor) {
  bool ok = !report.curve.empty();
  if (!ok) report.notes.push_back("empty curve");
  double measured = 0.0;
  if (ok) {
    if (rule == VerdictRule::converges) {
      measured = report.curve.back().value;
      ok = measured <= report.tolerance;
      if (!tail_non_increasing(report.curve, floor)) {
        ok = false;
        report.notes.push_back("curve tail is not non-increasing (10% jitter allowance)");
      }
    } else {
      for (const auto& c : report.curve) measured = std::max(measured, c.value);
      ok = measured <= report.tolerance;
    }
  }
  for (const auto& sub : report.sub_checks) ok = ok && sub.passed;
  report.margin = report.tolerance - measured;
  report.passed = ok;
}

}  // namespace attlab
