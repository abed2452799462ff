#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace attlab::tools {

/// Ids of the built-in example scenarios.
const std::vector<std::string>& example_ids();

/// Config document of a built-in scenario.
std::optional<nlohmann::json> builtin_scenario(const std::string& id);

}  // namespace attlab::tools
