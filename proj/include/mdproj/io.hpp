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

#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mdproj/dependence.hpp"
#include "mdproj/distance.hpp"
#include "mdproj/experiments.hpp"

namespace mdproj {

using Cell = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;
using Fields = std::vector<std::pair<std::string, Cell>>;

/// A table plus the resolved configuration and named summary blocks.
///
/// CSV layout: "# key=value" lines for the config, the header row, the data
/// rows, then one "# block: key=value, ..." line per block. JSON: one object
/// with "config", "rows" (array of objects keyed by column) and one member
/// per block.
struct Report {
  Fields config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Fields>> blocks;
};

enum class Format { Csv, Json };

/// Shortest text with 17 significant digits, '.' as decimal separator and
/// independent of the global locale.
std::string format_double(double value);
std::string format_cell(const Cell& cell);

std::string to_csv(const Report& report);
std::string to_json(const Report& report);

/// Writes the report; "-" or an empty path means standard output. Throws
/// Error(Io) when the file cannot be written.
void emit(const Report& report, Format format, const std::string& path,
          std::ostream& console = std::cout);

Report rate_table_report(const RateTable& table, Fields config);
Report gamma_profile_report(const GammaProfile& profile, const ConditionReport& condition,
                            Fields config);
Report regression_report(const std::vector<RegressionRun>& runs, Fields config);

struct EstimateRecord {
  KappaMethod method = KappaMethod::CfInversion;
  Index n = 0;
  std::string model;
  double value = 0.0;
  double se = 0.0;
  std::uint64_t seed = 0;
};

Report estimate_report(const std::vector<EstimateRecord>& records, Fields config);

}  // namespace mdproj
