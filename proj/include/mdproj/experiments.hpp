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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mdproj/distance.hpp"
#include "mdproj/processes.hpp"

namespace mdproj {

/// Means at or below this level are treated as zero by sweeps (exact
/// normality gives values at rounding level).
inline constexpr double kNumericalZero = 1e-9;

struct FitPoint {
  double n = 0.0;
  double value = 0.0;
};

/// Least squares on (log n, log value).
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool degenerate = true;
  Index used = 0;
  std::vector<Index> excluded;  ///< indices of points left out of the fit
};

/// Points with value <= floor are excluded and listed; fewer than two usable
/// points yield a degenerate fit (never an exception).
FitResult loglog_fit(const std::vector<FitPoint>& points, double floor = 0.0);

struct SweepConfig {
  MartingaleModel model = MartingaleModel::iid(InnovationLaw::rademacher());
  std::vector<Index> n_grid{32, 64, 128, 256, 512};
  Index r_theta = 100;
  Index r_x = 10000;
  KappaMethod method = KappaMethod::CfInversion;
  CfGrid grid{};
  bool centered = false;
  std::uint64_t master_seed = 1;
  int threads = 1;
  /// Replaces the estimator with mean(n) = injection(n), se = 0 (harness tests).
  std::function<double(Index)> injection;
};

/// Throws ConfigError("n") unless the grid is strictly increasing with min >= 2.
void validate(const SweepConfig& config);

struct RateRow {
  Index n = 0;
  double mean = 0.0;
  double se = 0.0;
  bool floor_flag = false;  ///< MC floor exceeds half the measured signal
  double ref_inv_n = 0.0;   ///< 1/n
  double ref_log2_n = 0.0;  ///< (log n)^2 / n
};

/// Log residual RMS of the best single-constant fit mean ~ c * curve(n).
struct ReferenceFit {
  std::string curve;
  double constant = 0.0;
  double rms_log_residual = 0.0;
};

struct RateTable {
  std::vector<RateRow> rows;
  FitResult fit;
  std::vector<ReferenceFit> references;
};

/// One expected_kappa per grid point; the fit excludes floor-flagged and
/// numerically-zero rows.
RateTable rate_sweep(const SweepConfig& config);

struct RegressionRun {
  Index n = 0;
  Index replicates = 0;
  double mu = 0.0;
  double sigma = 1.0;
  std::string noise;
  KappaEstimate kappa;
  /// Largest |T_n(beta-hat route) - T_n(weight route)| over replicates.
  double max_identity_gap = 0.0;
  /// Largest |T_n(weight route) - centered projection on xi / |xi||.
  double max_projection_gap = 0.0;
};

/// OLS slope statistic T_n = |Z - mean(Z)| (beta_hat - beta) for the model
/// Y_i = alpha + beta Z_i + X_i with Gaussian design Z_i ~ N(mu, sigma^2)
/// and martingale-difference noise X. Replicate r draws its design from
/// derive_seed(seed, n, r, Design) and its noise from derive_seed(seed, n, r,
/// Paths). Requires n >= 2 and sigma > 0.
RegressionRun regression_experiment(const MartingaleModel& noise, Index n, Index replicates,
                                    double mu, double sigma, std::uint64_t seed,
                                    int threads = 1, double alpha = 1.0, double beta = 2.0);

}  // namespace mdproj
