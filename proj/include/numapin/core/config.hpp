#pragma once

#include <string>
#include <string_view>

#include "numapin/core/scenario.hpp"

namespace numapin {

inline constexpr int kScenarioSchemaVersion = 1;

/// Parses and validates a scenario document (JSON, schema version 1; see
/// README for the key reference). Returns a Scenario whose topology,
/// resources and params members are the individually validated parts.
///
/// Throws ParseError (with line/column) for malformed text and
/// ValidationError naming the offending key or violated invariant.
Scenario parse_config(std::string_view text);

/// Reads `path` and forwards to parse_config.
Scenario load_config(const std::string& path);

/// Canonical document for `scenario`; parse_config(to_config_text(s)) == s.
std::string to_config_text(const Scenario& scenario);

}  // namespace numapin
