/*
* Copyright (C) 2026 cabm contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef CABM_CONFIG_HPP
#define CABM_CONFIG_HPP

#include "cabm/core.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cabm
{

/// One key=value assignment and where it came from (for diagnostics).
struct Setting {
    std::string key;
    std::string value;
    std::string origin;
};

/// All accepted parameter keys, in file order.
std::vector<std::string_view> parameter_keys();

/**
 * Parse a flat key=value document. Blank lines and lines starting with '#' are ignored,
 * whitespace around keys and values is trimmed. Throws std::invalid_argument on lines
 * without '=' or with an empty key; the message names source and line.
 */
std::vector<Setting> parse_settings(std::istream& in, std::string_view source);

/// Read and parse a config file. Throws std::runtime_error naming the path if it cannot be read.
std::vector<Setting> read_settings(const std::filesystem::path& path);

/// Parse a single "key=value" assignment as given on the command line.
Setting parse_assignment(std::string_view text);

/**
 * Apply assignments in order, later ones overriding earlier ones.
 *
 * Table keys take comma separated lists, day ranges have separate _min and _max keys.
 * Unknown keys and malformed values are errors. personal_gdp_share is derived from the
 * public and business shares and is only accepted if it agrees with them.
 * The result is validated.
 */
Parameters apply_settings(Parameters params, std::span<const Setting> settings);

/**
 * Values of a sweep argument: either "lo:hi:step" (inclusive of hi up to rounding) or a
 * comma separated list. Throws std::invalid_argument on malformed or empty ranges.
 */
std::vector<double> parse_values(std::string_view text);

/// Config document listing every key with its current value; parses back to the same set.
std::string format_parameters(const Parameters& params);

} // namespace cabm

#endif // CABM_CONFIG_HPP
