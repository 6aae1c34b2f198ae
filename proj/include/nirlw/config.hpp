#pragma once
// Flat key = value configuration files. Keys mirror the SolverConfig and
// ExperimentSpec field names; `preset = example1` selects the base spec and
// every other key overrides one field of it.

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "nirlw/experiments.hpp"

namespace nirlw {

/// Ordered key/value pairs; later entries override earlier ones.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
/// Throws ConfigError (with the line number) on malformed lines.
KeyValues parse_key_values(std::istream& in, const std::string& source = "<config>");
KeyValues load_key_values(const std::string& path);

/// Parses a single `key=value` override.
std::pair<std::string, std::string> parse_override(const std::string& text);

/// Keys understood by apply_setting, for help text and validation.
const std::vector<std::string>& known_keys();

/// Sets one field. Throws ConfigError on unknown keys or unparsable values.
void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value);

/// Builds the preset named by `preset` (default example1) at the grid size
/// given by N / M, then applies the remaining keys. p and r are applied
/// before s so that an explicit s is not overwritten by the max(p, 2) default.
ExperimentSpec build_spec(const KeyValues& settings);

}  // namespace nirlw
