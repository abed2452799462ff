#pragma once

// Text formats for sets, trajectories, reports and limit sets.
//
// CSV files carry `# key=value` comment lines before a column header.
// Numbers are written in shortest round-trip form, so identical inputs give
// byte-identical files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "attlab/limits.hpp"
#include "attlab/process.hpp"
#include "attlab/report.hpp"
#include "attlab/setcalc.hpp"

namespace attlab::io {

/// Shortest decimal form that reads back to the same double.
std::string format_number(double v);

std::string set_to_csv(const CompactSetSample& set);
CompactSetSample set_from_csv(std::string_view text);

std::string trajectory_to_csv(const TrajectorySample& tr);
TrajectorySample trajectory_from_csv(std::string_view text);

/// Two columns (t, value), optional header row.
std::vector<std::pair<double, double>> table_from_csv(std::string_view text);

std::string report_to_json(const VerifierReport& rep);
VerifierReport report_from_json(std::string_view text);
/// "param,value" rows of the report curve.
std::string curve_to_csv(const VerifierReport& rep);

std::string limit_to_json(const LimitSetResult& res, const std::string& points_csv_path);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// One CSV per section plus family.json with {time, path} records.
void write_family(const SetFamily& family, const std::filesystem::path& dir);
SetFamily read_family(const std::filesystem::path& dir);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Fields stored on disk under a key hash, one CSV each.
class FieldCache {
 public:
  /// A disabled cache never hits and never writes.
  explicit FieldCache(std::filesystem::path dir, bool enabled = true);

  bool enabled() const noexcept { return enabled_; }
  std::optional<StatePoint> load(std::string_view key) const;
  void store(std::string_view key, const StatePoint& field) const;
  std::filesystem::path path_for(std::string_view key) const;

 private:
  std::filesystem::path dir_;
  bool enabled_;
};

}  // namespace attlab::io
