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

#include "mdproj/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace mdproj {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string quote_csv(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json to_json_value(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

nlohmann::ordered_json fields_json(const Fields& fields) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [key, value] : fields) obj[key] = to_json_value(value);
  return obj;
}

}  // namespace

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

std::string to_csv(const Report& report) {
  std::string out;
  for (const auto& [key, value] : report.config) {
    out += "# " + key + "=" + format_cell(value) + "\n";
  }
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ',';
    out += quote_csv(report.columns[i]);
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += quote_csv(format_cell(row[i]));
    }
    out += '\n';
  }
  for (const auto& [name, fields] : report.blocks) {
    out += "# " + name + ":";
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out += (i ? ", " : " ") + fields[i].first + "=" + format_cell(fields[i].second);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Report& report) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["config"] = fields_json(report.config);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
      obj[report.columns[i]] = to_json_value(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  for (const auto& [name, fields] : report.blocks) doc[name] = fields_json(fields);
  return doc.dump(2) + "\n";
}

void emit(const Report& report, Format format, const std::string& path, std::ostream& console) {
  const std::string text = format == Format::Csv ? to_csv(report) : to_json(report);
  if (path.empty() || path == "-") {
    console << text << std::flush;
    if (!console) throw Error(ErrorCode::Io, "cannot write to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.close();
  if (!file) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

Report rate_table_report(const RateTable& table, Fields config) {
  Report r;
  r.config = std::move(config);
  r.columns = {"n", "mean", "se", "floor_flag", "ref_inv_n", "ref_log2_n"};
  for (const auto& row : table.rows) {
    r.rows.push_back({std::int64_t(row.n), row.mean, row.se, row.floor_flag, row.ref_inv_n,
                      row.ref_log2_n});
  }
  std::string excluded;
  for (Index i : table.fit.excluded) {
    if (!excluded.empty()) excluded += ' ';
    excluded += std::to_string(table.rows[i].n);
  }
  r.blocks.push_back({"fit",
                      {{"slope", table.fit.slope},
                       {"intercept", table.fit.intercept},
                       {"r2", table.fit.r2},
                       {"degenerate", table.fit.degenerate},
                       {"used", std::int64_t(table.fit.used)},
                       {"excluded_n", excluded}}});
  for (const auto& ref : table.references) {
    r.blocks.push_back({"reference " + ref.curve,
                        {{"constant", ref.constant}, {"rms_log_residual", ref.rms_log_residual}}});
  }
  return r;
}

Report gamma_profile_report(const GammaProfile& profile, const ConditionReport& condition,
                            Fields config) {
  Report r;
  r.config = std::move(config);
  r.columns = {"lag", "g02", "g12", "g22", "g13", "gamma"};
  const bool with_se = profile.se02.size() == profile.vmax();
  if (with_se) {
    for (const char* c : {"se02", "se12", "se22", "se13"}) r.columns.emplace_back(c);
  }
  for (Index v = 0; v < profile.vmax(); ++v) {
    std::vector<Cell> row{std::int64_t(v + 1), profile.g02[v], profile.g12[v],
                          profile.g22[v], profile.g13[v], profile.gamma[v]};
    if (with_se) {
      row.insert(row.end(), {profile.se02[v], profile.se12[v], profile.se22[v], profile.se13[v]});
    }
    r.rows.push_back(std::move(row));
  }
  r.blocks.push_back({"profile", {{"ell_max", std::int64_t(profile.ell_max)},
                                  {"notes", profile.notes}}});
  const double last = condition.partial_sums.size() ? condition.partial_sums[condition.partial_sums.size() - 1] : 0.0;
  r.blocks.push_back({"condition",
                      {{"partial_sum", last},
                       {"tail_exponent", condition.tail_exponent},
                       {"satisfied_estimate", condition.satisfied_estimate},
                       {"notes", condition.notes}}});
  return r;
}

Report regression_report(const std::vector<RegressionRun>& runs, Fields config) {
  Report r;
  r.config = std::move(config);
  r.columns = {"n",     "replicates", "mu", "sigma", "noise", "kappa", "se",
               "max_identity_gap", "max_projection_gap"};
  for (const auto& run : runs) {
    r.rows.push_back({std::int64_t(run.n), std::int64_t(run.replicates), run.mu, run.sigma,
                      run.noise, run.kappa.value, run.kappa.se, run.max_identity_gap,
                      run.max_projection_gap});
  }
  return r;
}

Report estimate_report(const std::vector<EstimateRecord>& records, Fields config) {
  Report r;
  r.config = std::move(config);
  r.columns = {"method", "n", "model", "value", "se", "seed"};
  for (const auto& e : records) {
    r.rows.push_back({to_string(e.method), std::int64_t(e.n), e.model, e.value, e.se,
                      e.seed});
  }
  return r;
}

}  // namespace mdproj
