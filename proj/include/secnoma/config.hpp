#pragma once

#include "secnoma/experiments.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace secnoma {

/// Flat `key = value` text. Blank lines and `#` comments are ignored;
/// repeated keys are an error.
using KeyValueConfig = std::map<std::string, std::string>;

KeyValueConfig parse_key_value(std::istream& in);
KeyValueConfig load_key_value(const std::filesystem::path& path);

/// Builds a SweepSpec. Reserved keys: kind, axis, start, stop, steps, trials,
/// seed, output. Every other key is a numeric fixed parameter.
SweepSpec sweep_spec_from_config(const KeyValueConfig& config);

} // namespace secnoma
