/*
 * Copyright 2026 The mdproj Authors
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

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mdproj::cli {

/// Resolved key=value settings of one invocation.
struct Settings {
  std::string command;
  std::map<std::string, std::string> values;
  /// Keys given explicitly (file or flag), as opposed to defaults.
  std::vector<std::string> explicit_keys;

  const std::string& get(const std::string& key) const;
  bool has(const std::string& key) const { return values.count(key) != 0; }
};

/// Every accepted key, in the underscore spelling used by config files.
const std::vector<std::string>& known_keys();

/// Reads a key=value file. Blank lines and lines starting with '#' are
/// skipped; keys may use '-' or '_'. Throws ConfigError for unknown keys,
/// malformed lines, or an unreadable file (key "config").
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Parses argv (argv[0] is the program name) into settings: defaults, then
/// the config file, then flags. Throws ConfigError.
Settings parse_arguments(int argc, const char* const* argv);

/// Entry point. Returns 0 on success, 2 on configuration errors and 1 on
/// runtime errors; diagnostics go to `err`, non-file output to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mdproj::cli
