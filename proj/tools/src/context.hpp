#pragma once

#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "attlab/io.hpp"
#include "attlab/process.hpp"
#include "attlab/setcalc.hpp"
#include "config.hpp"

namespace attlab::tools {

/// Everything a command needs about the configured model.
class ModelContext {
 public:
  ModelContext(ScenarioConfig cfg, io::FieldCache cache);

  const ScenarioConfig& config() const noexcept { return cfg_; }
  ModelKind kind() const noexcept { return cfg_.model; }
  bool is_field() const noexcept { return grid_.has_value(); }
  const Grid1D& grid() const;
  const ProcessHandle& process() const noexcept { return process_; }

  /// zero | const:a | sin:a[:k] | value:x | csv:path
  StatePoint parse_ic(const std::string& spec) const;
  /// {"interval": [lo, hi, n]}, {"points": [..]}, {"ics": [..]}; null gives
  /// the default bounded set.
  CompactSetSample parse_set(const json& spec) const;
  CompactSetSample default_set() const;

  /// Attractor section at t: closed form for the scalar models, numerical
  /// pullback samples for the PDEs.
  CompactSetSample section(double t) const;
  /// Sections on a time grid, computed concurrently.
  SetFamily family(const std::vector<double>& times) const;
  /// Sample of the attractor of the t -> +inf limit system, sampled the same
  /// way as section().
  CompactSetSample limit_attractor() const;
  /// xi_M^+(t) and the positive equilibrium of the limit system.
  StatePoint xi_plus(double t) const;
  StatePoint limit_equilibrium() const;

  /// Generator seeded from the config seed and a stream name.
  std::mt19937_64 rng(const std::string& stream) const;
  /// A random initial field (or scalar) of moderate size.
  StatePoint random_state(std::mt19937_64& g, bool nonnegative) const;

  const io::FieldCache& cache() const noexcept { return cache_; }

 private:
  ScenarioConfig cfg_;
  io::FieldCache cache_;
  std::optional<Grid1D> grid_;
  ProcessHandle process_;
};

/// Union of two time grids, sorted, with near-duplicates dropped.
std::vector<double> merge_times(std::vector<double> a, const std::vector<double>& b);

/// Report that passes when every part passes; curve value k is the final
/// (or worst) value of part k.
VerifierReport combine(std::string check_id, std::vector<VerifierReport> parts,
                       const std::vector<double>& params);

}  // namespace attlab::tools
