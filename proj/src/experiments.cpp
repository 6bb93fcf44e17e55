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

#include "mdproj/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "mdproj/errors.hpp"
#include "mdproj/parallel.hpp"
#include "mdproj/sphere_geometry.hpp"

namespace mdproj {

FitResult loglog_fit(const std::vector<FitPoint>& points, double floor) {
  FitResult fit;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!(p.value > floor) || !(p.n > 0.0) || !std::isfinite(p.value)) {
      fit.excluded.push_back(static_cast<Index>(i));
      continue;
    }
    xs.push_back(std::log(p.n));
    ys.push_back(std::log(p.value));
  }
  fit.used = static_cast<Index>(xs.size());
  if (xs.size() < 2) return fit;

  const double m = double(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) return fit;  // all points at the same n
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.degenerate = false;
  return fit;
}

void validate(const SweepConfig& config) {
  if (config.n_grid.empty()) throw ConfigError("n", "n: the grid must not be empty");
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] < 2) {
      throw ConfigError("n", "n: every grid value must satisfy n >= 2 (got " +
                                 std::to_string(config.n_grid[i]) + ")");
    }
    if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
      throw ConfigError("n", "n: the grid must be strictly increasing");
    }
  }
  if (config.r_theta < 10) throw ConfigError("rtheta", "rtheta: must be >= 10");
  if (config.method == KappaMethod::Empirical && config.r_x < 100) {
    throw ConfigError("rx", "rx: must be >= 100");
  }
}

RateTable rate_sweep(const SweepConfig& config) {
  validate(config);
  RateTable table;
  for (Index n : config.n_grid) {
    RateRow row;
    row.n = n;
    row.ref_inv_n = 1.0 / double(n);
    row.ref_log2_n = std::pow(std::log(double(n)), 2) / double(n);
    if (config.injection) {
      row.mean = config.injection(n);
      row.se = 0.0;
    } else {
      KappaOptions options;
      options.method = config.method;
      options.paths = config.r_x;
      options.grid = config.grid;
      options.centered = config.centered;
      options.threads = config.threads;
      const ExpectedKappa e = expected_kappa(config.model, n, config.r_theta, options,
                                             config.master_seed);
      row.mean = e.mean;
      row.se = e.se;
      if (config.method == KappaMethod::Empirical) {
        const double mc_floor = 1.0 / (2.0 * std::sqrt(double(config.r_x)));
        row.floor_flag = mc_floor > 0.5 * row.mean;
      }
    }
    table.rows.push_back(row);
  }

  std::vector<FitPoint> points;
  for (const auto& row : table.rows) {
    points.push_back({double(row.n), row.floor_flag ? 0.0 : row.mean});
  }
  table.fit = loglog_fit(points, kNumericalZero);

  const auto reference = [&](const std::string& name, auto curve) {
    ReferenceFit ref;
    ref.curve = name;
    double sum = 0.0;
    Index used = 0;
    for (const auto& row : table.rows) {
      if (row.floor_flag || !(row.mean > kNumericalZero)) continue;
      sum += std::log(row.mean / curve(row));
      ++used;
    }
    if (used == 0) return ref;
    const double log_c = sum / double(used);
    double ss = 0.0;
    for (const auto& row : table.rows) {
      if (row.floor_flag || !(row.mean > kNumericalZero)) continue;
      const double r = std::log(row.mean / curve(row)) - log_c;
      ss += r * r;
    }
    ref.constant = std::exp(log_c);
    ref.rms_log_residual = std::sqrt(ss / double(used));
    return ref;
  };
  table.references.push_back(reference("1/n", [](const RateRow& r) { return r.ref_inv_n; }));
  table.references.push_back(
      reference("(log n)^2/n", [](const RateRow& r) { return r.ref_log2_n; }));
  return table;
}

RegressionRun regression_experiment(const MartingaleModel& noise, Index n, Index replicates,
                                    double mu, double sigma, std::uint64_t seed, int threads,
                                    double alpha, double beta) {
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "regression: n must be >= 2");
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidInput, "regression: sigma must be > 0");
  if (replicates < 1) throw Error(ErrorCode::InvalidInput, "regression: need >= 1 replicate");

  const std::size_t count = static_cast<std::size_t>(replicates);
  std::vector<double> statistics(count);
  constexpr std::size_t chunk = 256;
  const std::size_t chunks = (count + chunk - 1) / chunk;
  std::vector<double> identity_gap(chunks, 0.0), projection_gap(chunks, 0.0);
  const auto un = static_cast<std::uint64_t>(n);

  parallel_for(chunks, resolve_threads(threads), [&](std::size_t c) {
    Vector z(n), x(n), y(n);
    const std::size_t end = std::min(count, (c + 1) * chunk);
    for (std::size_t r = c * chunk; r < end; ++r) {
      Stream design(derive_seed(seed, un, r, StreamRole::Design));
      Stream path(derive_seed(seed, un, r, StreamRole::Paths));
      double spread = 0.0;
      Vector zc;
      do {
        for (Index i = 0; i < n; ++i) z[i] = mu + sigma * design.normal();
        zc = z.array() - z.mean();
        spread = zc.norm();
      } while (!(spread > 0.0));
      noise.simulate_into(x, path);
      y = (alpha + beta * z.array()).matrix() + x;

      const Vector yc = y.array() - y.mean();
      const double beta_hat = yc.dot(zc) / zc.squaredNorm();
      const double via_estimator = spread * (beta_hat - beta);
      const double via_weights = zc.dot(x) / spread;
      const SphereVector direction = SphereVector::normalized((z.array() - mu) / sigma);
      const double via_projection = project_centered(x, direction);

      statistics[r] = via_weights;
      identity_gap[c] = std::max(identity_gap[c], std::abs(via_estimator - via_weights));
      projection_gap[c] = std::max(projection_gap[c], std::abs(via_projection - via_weights));
    }
  });

  RegressionRun run;
  run.n = n;
  run.replicates = replicates;
  run.mu = mu;
  run.sigma = sigma;
  run.noise = noise.name();
  run.kappa = kolmogorov_vs_normal(std::span<const double>(statistics));
  run.kappa.se = 1.0 / (2.0 * std::sqrt(double(replicates)));
  run.max_identity_gap = *std::max_element(identity_gap.begin(), identity_gap.end());
  run.max_projection_gap = *std::max_element(projection_gap.begin(), projection_gap.end());
  return run;
}

}  // namespace mdproj
