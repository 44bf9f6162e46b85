#pragma once

#include <stdexcept>
#include <string>

#include "hetalloc/network.hpp"

namespace hetalloc {

/// Malformed scenario document: bad JSON, a missing or unknown key, or a value
/// of the wrong type. `field()` is the offending key ("" for syntax errors).
class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(std::string field, const std::string& what);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses and validates a scenario document. Every ScenarioConfig key is
/// required except rb_bandwidth (180 kHz) and i_max_per_rb (uniform i_max).
/// Invariant violations surface as ConfigError.
ScenarioConfig parse_scenario(const std::string& text);

/// parse_scenario on a file's contents. Throws std::runtime_error when the
/// file cannot be read.
ScenarioConfig load_scenario(const std::string& path);

/// Pretty-printed JSON with every field; i_max_per_rb only when set.
std::string scenario_to_json(const ScenarioConfig& config);

}  // namespace hetalloc
