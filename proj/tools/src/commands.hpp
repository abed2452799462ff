#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace attlab::tools {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_numerical = 2, exit_unexpected = 3 };

struct GlobalOptions {
  std::string config;  // path or built-in scenario id
  std::string out;     // empty: the config's output_dir
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool no_cache = false;
};

struct SimulateArgs {
  double t0 = 0.0;
  double t = 1.0;
  std::string ic = "zero";
  int budget = 1;
  int steps = 100;
};

struct AttractorArgs {
  std::string kind = "pullback";  // pullback | autonomous
  std::string times = "0";        // comma list or from:to:count
  std::optional<double> depth;
};

int cmd_simulate(const GlobalOptions& g, const SimulateArgs& a, std::ostream& out);
int cmd_attractor(const GlobalOptions& g, const AttractorArgs& a, std::ostream& out);
int cmd_omega(const GlobalOptions& g, const std::string& kind, std::ostream& out);
int cmd_verify(const GlobalOptions& g, const std::string& check, std::ostream& out);
int cmd_reproduce(const GlobalOptions& g, std::ostream& out);
int cmd_schema(std::ostream& out);
int cmd_list(std::ostream& out);

/// Runs a command body and maps exceptions to exit codes, with diagnostics
/// on `err`.
template <class F>
int guarded(std::ostream& err, F&& body);

/// Parses "a,b,c" or "from:to:count".
std::vector<double> parse_time_list(const std::string& s);

}  // namespace attlab::tools

#include "commands_guard.hpp"
