#pragma once

#include <map>
#include <string>
#include <vector>

namespace attlab {

struct CurvePoint {
  double param = 0.0;
  double value = 0.0;
};

/// Outcome of one check: verdict, measured distance curve and findings.
struct VerifierReport {
  std::string check_id;
  bool passed = false;
  std::vector<CurvePoint> curve;
  double tolerance = 0.0;
  /// tolerance minus the final (or worst, for bound checks) curve value.
  double margin = 0.0;
  std::vector<std::string> notes;
  /// Named scalar evidence (min_max_defect, fitted exponents, ...).
  std::map<std::string, double> evidence;
  std::vector<VerifierReport> sub_checks;
};

enum class VerdictRule {
  /// "-> 0": final value <= tol and the last quartile is non-increasing up to
  /// 10% jitter.
  converges,
  /// every curve value <= tol.
  bounded,
};

/// Last-quartile monotonicity with 10% jitter. Values below `floor` count as
/// the floor (the sampling resolution of the sets being compared).
bool tail_non_increasing(const std::vector<CurvePoint>& curve, double floor = 0.0);

/// Sets passed/margin from the curve. Existing sub-checks must also pass.
void apply_verdict(VerifierReport& report, VerdictRule rule, double floor = 0.0);

}  // namespace attlab
