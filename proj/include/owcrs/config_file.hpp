// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "owcrs/experiment.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace owcrs {

// Flat `key = value` text, one entry per line, `#` starts a comment. Lists
// are comma separated. The recognised keys are listed in README.md.

/// Sets one field; throws ConfigError("<key>: ...") on an unknown key or a
/// malformed value.
void apply_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Applies every line of `text`; errors are prefixed with origin:line.
void apply_config_text(ExperimentConfig& cfg, std::string_view text, std::string_view origin = "<config>");

/// Throws IoError if the file cannot be read.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

std::vector<double> parse_number_list(std::string_view text, std::string_view key);

}  // namespace owcrs
