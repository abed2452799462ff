#pragma once

#include <functional>
#include <string>
#include <vector>

#include "attlab/limits.hpp"
#include "attlab/report.hpp"
#include "context.hpp"

namespace attlab::tools {

struct RunOptions {
  std::size_t jobs = 1;
  std::optional<double> tol;  // overrides every schedule tolerance
};

using CheckFn = std::function<VerifierReport(const ModelContext&, const CheckSpec&, const ToleranceSchedule&,
                                             const RunOptions&)>;

struct CheckInfo {
  std::string id;
  std::string summary;
  CheckFn run;
};

const std::vector<CheckInfo>& check_registry();
const CheckInfo* find_check_info(const std::string& id);
/// Comma-separated ids, for diagnostics.
std::string available_checks();

VerifierReport run_check(const ModelContext& ctx, const CheckSpec& spec, const RunOptions& opts);

/// forward | limsup | liminf | amin, configured from the schedule and
/// `args` (B, sets, t0s, t0).
LimitSetResult compute_limit(const ModelContext& ctx, const std::string& kind, const json& args,
                             const ToleranceSchedule& sched);

}  // namespace attlab::tools
