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

#include "mdproj/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mdproj/dependence.hpp"
#include "mdproj/errors.hpp"
#include "mdproj/experiments.hpp"
#include "mdproj/io.hpp"
#include "mdproj/oracles.hpp"
#include "mdproj/parallel.hpp"
#include "mdproj/two_point.hpp"

namespace mdproj::cli {

namespace {

const std::vector<std::string> kCommands{"sweep", "gamma", "regress", "dist", "two-point",
                                         "selftest"};

// Keys that never reach the output header: they do not affect results.
const std::vector<std::string> kNotEchoed{"threads", "out", "config", "format"};

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> values{
      {"model", "iid-rademacher"},
      {"innovation", "gaussian"},
      {"sigma2", "1"},
      {"beta3", "0"},
      {"c", "auto"},
      {"kappa", "0.4"},
      {"b", "4"},
      {"J", "64"},
      {"burn_in", "0"},
      {"N", "200"},
      {"epsilon", "0.1"},
      {"f", "f1"},
      {"n", ""},
      {"rtheta", "100"},
      {"rx", "10000"},
      {"method", "auto"},
      {"centered", "false"},
      {"seed", "1"},
      {"threads", "auto"},
      {"out", "-"},
      {"format", "csv"},
      {"config", ""},
      {"vmax", "20"},
      {"ell_max", "20"},
      {"R", "10000"},
      {"mu", "0"},
      {"sigma", "1"},
  };
  return values;
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const Settings& s, const std::string& key) {
  const std::string& text = s.get(key);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError(key, key + ": expected a finite number, got '" + text + "'");
  }
  return value;
}

long long parse_integer(const Settings& s, const std::string& key, long long min) {
  const std::string& text = s.get(key);
  long long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(key, key + ": expected an integer, got '" + text + "'");
  }
  if (value < min) {
    throw ConfigError(key, key + ": must be >= " + std::to_string(min) + " (got " + text + ")");
  }
  return value;
}

std::uint64_t parse_seed(const Settings& s) {
  const std::string& text = s.get("seed");
  std::uint64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("seed", "seed: expected an unsigned 64-bit integer, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const Settings& s, const std::string& key) {
  const std::string& text = s.get(key);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(key, key + ": expected true or false, got '" + text + "'");
}

int parse_threads(const Settings& s) {
  if (s.get("threads") == "auto") return resolve_threads(0);
  return resolve_threads(static_cast<int>(parse_integer(s, "threads", 1)));
}

std::vector<Index> parse_grid(const Settings& s, std::vector<Index> fallback) {
  const std::string& text = s.get("n");
  if (text.empty()) return fallback;
  std::vector<Index> grid;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    long long value = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw ConfigError("n", "n: expected a comma-separated list of integers, got '" + text + "'");
    }
    grid.push_back(static_cast<Index>(value));
  }
  return grid;
}

Format parse_format(const Settings& s) {
  const std::string& text = s.get("format");
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw ConfigError("format", "format: expected csv or json, got '" + text + "'");
}

InnovationLaw parse_innovation(const Settings& s, const std::string& name) {
  if (name == "rademacher") return InnovationLaw::rademacher();
  if (name == "gaussian") return InnovationLaw::gaussian();
  if (name == "two-point") {
    const double sigma2 = parse_real(s, "sigma2");
    if (!(sigma2 > 0.0)) throw ConfigError("sigma2", "sigma2: must be > 0");
    return InnovationLaw::two_point(two_point_from_moments(sigma2, parse_real(s, "beta3")));
  }
  throw ConfigError("innovation",
                    "innovation: expected rademacher, gaussian or two-point, got '" + name + "'");
}

ArchModel parse_arch(const Settings& s) {
  const double kappa = parse_real(s, "kappa");
  const double b = parse_real(s, "b");
  const int lags = static_cast<int>(parse_integer(s, "J", 1));
  const int burn_in = static_cast<int>(parse_integer(s, "burn_in", 0));
  if (!(kappa >= 0.0)) throw ConfigError("kappa", "kappa: must be >= 0");
  double coeff_sum = 0.0;
  for (int j = 1; j <= lags; ++j) coeff_sum += kappa * std::pow(double(j), -b);
  double c = 1.0 - coeff_sum;
  if (s.get("c") != "auto") c = parse_real(s, "c");
  if (!(c > 0.0)) throw ConfigError("c", "c: must be > 0 (sum of ARCH coefficients is " +
                                             format_double(coeff_sum) + ")");
  return ArchModel::power_law(c, kappa, b, lags, parse_innovation(s, s.get("innovation")),
                              burn_in);
}

TruncatedChain parse_chain(const Settings& s) {
  TruncatedChainConfig config;
  config.half_width = static_cast<int>(parse_integer(s, "N", 2));
  config.epsilon = parse_real(s, "epsilon");
  if (!(config.epsilon > 0.0)) throw ConfigError("epsilon", "epsilon: must be > 0");
  const std::string& f = s.get("f");
  if (f == "f1") {
    config.alpha = 1.0;
    config.beta = 0.0;
  } else if (f == "f2") {
    config.alpha = 0.0;
    config.beta = 1.0;
  } else {
    // alpha,beta weights of f1 and f2
    const auto comma = f.find(',');
    double alpha = 0.0, beta = 0.0;
    const bool ok =
        comma != std::string::npos &&
        std::from_chars(f.data(), f.data() + comma, alpha).ptr == f.data() + comma &&
        std::from_chars(f.data() + comma + 1, f.data() + f.size(), beta).ptr ==
            f.data() + f.size();
    if (!ok) throw ConfigError("f", "f: expected f1, f2 or 'alpha,beta', got '" + f + "'");
    config.alpha = alpha;
    config.beta = beta;
  }
  return make_truncated_chain(config);
}

MartingaleModel parse_model(const Settings& s) {
  const std::string& name = s.get("model");
  if (name == "iid") return MartingaleModel::iid(parse_innovation(s, s.get("innovation")));
  if (name.rfind("iid-", 0) == 0) return MartingaleModel::iid(parse_innovation(s, name.substr(4)));
  if (name == "arch") return MartingaleModel::arch(parse_arch(s));
  if (name == "markov") return MartingaleModel::markov(parse_chain(s).chain);
  throw ConfigError("model", "model: expected iid-rademacher, iid-gaussian, iid-two-point, iid, "
                             "arch or markov, got '" + name + "'");
}

KappaMethod parse_method(const Settings& s, const MartingaleModel& model) {
  const std::string& text = s.get("method");
  if (text == "cf") return KappaMethod::CfInversion;
  if (text == "empirical") return KappaMethod::Empirical;
  if (text == "auto") {
    return model.kind() == MartingaleModel::Kind::Iid ? KappaMethod::CfInversion
                                                      : KappaMethod::Empirical;
  }
  throw ConfigError("method", "method: expected cf, empirical or auto, got '" + text + "'");
}

Fields echo(const Settings& s, const std::vector<std::string>& keys) {
  Fields fields{{"command", s.command}};
  for (const auto& key : keys) {
    if (std::find(kNotEchoed.begin(), kNotEchoed.end(), key) != kNotEchoed.end()) continue;
    fields.emplace_back(key, s.get(key));
  }
  return fields;
}

std::vector<std::string> model_keys(const Settings& s) {
  const std::string& m = s.get("model");
  if (m == "arch") return {"model", "innovation", "c", "kappa", "b", "J", "burn_in"};
  if (m == "markov") return {"model", "N", "epsilon", "f"};
  if (m == "iid") return {"model", "innovation"};
  if (m == "iid-two-point") return {"model", "sigma2", "beta3"};
  return {"model"};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

int cmd_sweep(const Settings& s, std::ostream& out) {
  SweepConfig config;
  config.model = parse_model(s);
  config.n_grid = parse_grid(s, config.n_grid);
  config.r_theta = parse_integer(s, "rtheta", 10);
  config.r_x = parse_integer(s, "rx", 100);
  config.method = parse_method(s, config.model);
  config.centered = parse_bool(s, "centered");
  config.master_seed = parse_seed(s);
  config.threads = parse_threads(s);
  const Format format = parse_format(s);
  validate(config);

  const RateTable table = rate_sweep(config);
  Fields fields = echo(s, concat(model_keys(s), {"n", "rtheta", "rx", "centered", "seed"}));
  fields.emplace_back("method", to_string(config.method));
  emit(rate_table_report(table, std::move(fields)), format, s.get("out"), out);
  return 0;
}

int cmd_dist(const Settings& s, std::ostream& out) {
  const MartingaleModel model = parse_model(s);
  const std::vector<Index> grid = parse_grid(s, {32, 64, 128, 256, 512});
  for (Index n : grid) {
    if (n < 2) throw ConfigError("n", "n: every value must satisfy n >= 2");
  }
  KappaOptions options;
  options.method = parse_method(s, model);
  options.paths = parse_integer(s, "rx", 100);
  options.centered = parse_bool(s, "centered");
  options.threads = parse_threads(s);
  const Index r_theta = parse_integer(s, "rtheta", 10);
  const std::uint64_t seed = parse_seed(s);
  const Format format = parse_format(s);

  std::vector<EstimateRecord> records;
  for (Index n : grid) {
    const ExpectedKappa e = expected_kappa(model, n, r_theta, options, seed);
    records.push_back({options.method, n, model.name(), e.mean, e.se, seed});
  }
  Fields fields = echo(s, concat(model_keys(s), {"n", "rtheta", "rx", "centered", "seed"}));
  fields.emplace_back("method", to_string(options.method));
  emit(estimate_report(records, std::move(fields)), format, s.get("out"), out);
  return 0;
}

int cmd_gamma(const Settings& s, std::ostream& out) {
  const Index vmax = parse_integer(s, "vmax", 1);
  const Index ell_max = parse_integer(s, "ell_max", 0);
  const Format format = parse_format(s);
  const std::string& name = s.get("model");
  GammaProfile profile;
  std::vector<std::string> keys = concat(model_keys(s), {"vmax", "ell_max"});
  if (name == "markov") {
    profile = gamma_exact_markov(parse_chain(s).chain, vmax, ell_max);
  } else if (name == "arch") {
    const Index replicates = parse_integer(s, "R", 100);
    profile = gamma_mc_arch(parse_arch(s), vmax, ell_max, replicates, parse_seed(s),
                            parse_threads(s));
    keys = concat(keys, {"R", "seed"});
  } else {
    // Conditionally iid: every centered conditional moment vanishes.
    parse_model(s);
    profile.ell_max = ell_max;
    for (auto* g : {&profile.g02, &profile.g12, &profile.g22, &profile.g13, &profile.gamma}) {
      g->setZero(vmax);
    }
    profile.ell_arg22.assign(vmax, 0);
    profile.ell_arg13.assign(vmax, 0);
    profile.notes = "independent model: all coefficients vanish";
  }
  emit(gamma_profile_report(profile, condition_report(profile), echo(s, keys)), format,
       s.get("out"), out);
  return 0;
}

int cmd_regress(const Settings& s, std::ostream& out) {
  const MartingaleModel noise = parse_model(s);
  const std::vector<Index> grid = parse_grid(s, {8, 32, 128});
  for (Index n : grid) {
    if (n < 2) throw ConfigError("n", "n: every value must satisfy n >= 2");
  }
  const Index replicates = parse_integer(s, "R", 1);
  const double mu = parse_real(s, "mu");
  const double sigma = parse_real(s, "sigma");
  if (!(sigma > 0.0)) throw ConfigError("sigma", "sigma: must be > 0");
  const std::uint64_t seed = parse_seed(s);
  const int threads = parse_threads(s);
  const Format format = parse_format(s);

  std::vector<RegressionRun> runs;
  for (Index n : grid) {
    runs.push_back(regression_experiment(noise, n, replicates, mu, sigma, seed, threads));
  }
  emit(regression_report(runs, echo(s, concat(model_keys(s), {"n", "R", "mu", "sigma", "seed"}))),
       format, s.get("out"), out);
  return 0;
}

int cmd_two_point(const Settings& s, std::ostream& out) {
  const double sigma2 = parse_real(s, "sigma2");
  const double beta3 = parse_real(s, "beta3");
  if (!(sigma2 > 0.0)) throw ConfigError("sigma2", "sigma2: must be > 0");
  const Format format = parse_format(s);
  const TwoPointLaw law = two_point_from_moments(sigma2, beta3);
  Report report;
  report.config = echo(s, {"sigma2", "beta3"});
  report.columns = {"sigma2", "beta3", "m", "m_prime", "t", "fourth_moment"};
  report.rows.push_back({sigma2, beta3, law.m, law.m_prime, law.t, law.moment(4)});
  emit(report, format, s.get("out"), out);
  return 0;
}

int cmd_selftest(std::ostream& out) {
  std::vector<Index> sizes;
  for (Index n = 2; n <= 64; ++n) sizes.push_back(n);
  for (Index n : {100, 128, 255, 256, 512, 1000, 1024}) sizes.push_back(n);
  const std::vector<oracle::SuiteResult> suites{
      oracle::moment_match_suite(),
      oracle::beta_moments_suite(200, 11),
      oracle::gamma_toy_suite(),
      oracle::stationary_suite(),
      oracle::helmert_orthonormality_suite(sizes),
      oracle::helmert_identity_suite(100, 12),
  };
  bool ok = true;
  for (const auto& r : suites) {
    ok = ok && r.passed();
    out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.checks << " checks, "
        << r.failures << " failures, max error " << r.max_error << " (tolerance "
        << r.tolerance << ")\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

const std::string& Settings::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ConfigError(key, "missing setting '" + key + "'");
  return it->second;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [key, value] : defaults()) k.push_back(key);
    return k;
  }();
  return keys;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("config", "config: cannot read '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int number = 0;
  while (std::getline(file, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config", "config: line " + std::to_string(number) +
                                      " is not of the form key=value");
    }
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    if (!defaults().count(key) || key == "config") {
      throw ConfigError(key, "config: unknown key '" + key + "' on line " +
                                 std::to_string(number));
    }
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

Settings parse_arguments(int argc, const char* const* argv) {
  CLI::App app{"Projections of martingale difference sequences on random directions"};
  app.allow_extras(false);
  std::string command;
  app.add_option("command", command, "sweep | gamma | regress | dist | two-point | selftest")
      ->required();
  std::map<std::string, std::string> given;
  std::map<std::string, CLI::Option*> options;
  for (const auto& [key, value] : defaults()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (key == "centered") {
      options[key] = app.add_option(flag, given[key], "project on the centered direction")
                         ->expected(0, 1)
                         ->default_str("true");
    } else {
      options[key] = app.add_option(flag, given[key]);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw ConfigError("arguments", std::string("arguments: ") + e.what());
  }

  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    throw ConfigError("command", "command: unknown command '" + command + "'");
  }

  Settings s;
  s.command = command;
  s.values = defaults();
  if (options["config"]->count() > 0) {
    for (const auto& [key, value] : read_config_file(given["config"])) {
      s.values[key] = value;
      s.explicit_keys.push_back(key);
    }
  }
  for (const auto& [key, option] : options) {
    if (option->count() == 0) continue;
    std::string value = given[key];
    if (key == "centered" && value.empty()) value = "true";
    s.values[key] = value;
    s.explicit_keys.push_back(key);
  }
  return s;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const Settings s = parse_arguments(argc, argv);
    if (s.command == "sweep") return cmd_sweep(s, out);
    if (s.command == "dist") return cmd_dist(s, out);
    if (s.command == "gamma") return cmd_gamma(s, out);
    if (s.command == "regress") return cmd_regress(s, out);
    if (s.command == "two-point") return cmd_two_point(s, out);
    return cmd_selftest(out);
  } catch (const CLI::CallForHelp&) {
    out << "usage: mdproj <sweep|gamma|regress|dist|two-point|selftest> [--key value ...]\n"
           "keys:";
    for (const auto& key : known_keys()) {
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      out << " --" << flag;
    }
    out << "\n";
    return 0;
  } catch (const ConfigError& e) {
    err << "config error [" << e.key() << "]: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mdproj::cli
