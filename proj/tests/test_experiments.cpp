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

#include <doctest.h>

#include <cmath>

#include "mdproj/experiments.hpp"
#include "mdproj/normal.hpp"
#include "support.hpp"

using namespace mdproj;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an mdproj::Error");
  return ErrorCode::Config;
}

std::string config_key(const SweepConfig& c) {
  try {
    validate(c);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("log-log fit") {
  const FitResult exact = loglog_fit({{10, 0.1}, {100, 0.01}, {1000, 0.001}});
  CHECK_FALSE(exact.degenerate);
  CHECK(exact.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(exact.r2 == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<FitPoint> curve;
  for (double n = 64; n <= 4096; n *= 2) curve.push_back({n, std::pow(std::log(n), 2) / n});
  const FitResult c = loglog_fit(curve);
  // Local slope of (log n)^2 / n is -1 + 2 / log n, between -0.76 and -0.52
  // on this range; the fit must land inside.
  CHECK(c.slope > -1.0 + 2.0 / std::log(4096.0));
  CHECK(c.slope < -1.0 + 2.0 / std::log(64.0));

  const FitResult single = loglog_fit({{10, 0.0}, {20, 0.5}, {40, -1.0}});
  CHECK(single.degenerate);
  CHECK(single.used == 1);
  CHECK(single.excluded == std::vector<Index>{0, 2});

  const FitResult floored = loglog_fit({{10, 1e-12}, {20, 0.5}, {40, 0.25}}, 1e-9);
  CHECK(floored.used == 2);
  CHECK(floored.slope == doctest::Approx(-1.0));
}

TEST_CASE("sweep configuration") {
  SweepConfig c;
  CHECK(config_key(c).empty());
  c.n_grid = {1, 2};
  CHECK(config_key(c) == "n");
  c.n_grid = {4, 4};
  CHECK(config_key(c) == "n");
  c.n_grid = {};
  CHECK(config_key(c) == "n");
  c.n_grid = {8, 16};
  c.r_theta = 3;
  CHECK(config_key(c) == "rtheta");
  try {
    SweepConfig bad;
    bad.n_grid = {1, 2};
    validate(bad);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("n >= 2") != std::string::npos);
  }
}

TEST_CASE("rate sweep with injected means") {
  SweepConfig c;
  c.n_grid = {32, 64, 128, 256, 512};
  c.injection = [](Index n) { return 0.7 / double(n); };
  const RateTable t = rate_sweep(c);
  REQUIRE(t.rows.size() == 5);
  CHECK(t.fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(t.fit.slope + 1.0) <= 1e-12);
  CHECK(std::abs(t.fit.intercept - std::log(0.7)) <= 1e-12);
  REQUIRE(t.references.size() == 2);
  CHECK(t.references[0].curve == "1/n");
  CHECK(t.references[0].constant == doctest::Approx(0.7));
  CHECK(t.references[0].rms_log_residual <= 1e-12);
  CHECK(t.references[1].rms_log_residual > 0.01);
}

TEST_CASE("rate sweep: Gaussian null gives a degenerate fit") {
  SweepConfig c;
  c.model = MartingaleModel::iid(InnovationLaw::gaussian());
  c.r_theta = 20;
  const RateTable t = rate_sweep(c);
  for (const auto& row : t.rows) CHECK(row.mean <= 1e-6);
  CHECK(t.fit.degenerate);
  CHECK(t.fit.used == 0);
}

TEST_CASE("rate sweep: Rademacher slope and monotone trend") {
  SweepConfig c;
  c.n_grid = {64, 128, 256, 512};
  const RateTable t = rate_sweep(c);
  CHECK(t.fit.slope >= -1.3);
  CHECK(t.fit.slope <= -0.75);

  SweepConfig d;  // default grid and seed
  const RateTable u = rate_sweep(d);
  for (std::size_t i = 1; i < u.rows.size(); ++i) CHECK(u.rows[i].mean < u.rows[i - 1].mean);
}

TEST_CASE("rate sweep is independent of the worker count") {
  SweepConfig c;
  c.n_grid = {16, 48};
  c.r_theta = 20;
  c.method = KappaMethod::Empirical;
  c.r_x = 500;
  c.model = MartingaleModel::arch(ArchModel::power_law(0.6, 0.4, 4.0, 8));
  c.threads = 1;
  const RateTable a = rate_sweep(c);
  c.threads = 4;
  const RateTable b = rate_sweep(c);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].mean == b.rows[i].mean);
    CHECK(a.rows[i].se == b.rows[i].se);
  }
  CHECK(a.fit.slope == b.fit.slope);
}

TEST_CASE("rate sweep flags rows dominated by Monte Carlo noise") {
  SweepConfig c;
  c.n_grid = {8, 512};
  c.r_theta = 40;
  c.method = KappaMethod::Empirical;
  c.r_x = 2000;
  const RateTable t = rate_sweep(c);
  CHECK_FALSE(t.rows[0].floor_flag);
  CHECK(t.rows[1].floor_flag);
  CHECK(t.fit.excluded == std::vector<Index>{1});
}

TEST_CASE("regression experiment") {
  const MartingaleModel gauss = MartingaleModel::iid(InnovationLaw::gaussian());
  const MartingaleModel rad = MartingaleModel::iid(InnovationLaw::rademacher());

  CHECK(code_of([&] { regression_experiment(gauss, 1, 100, 0, 1, 1); }) ==
        ErrorCode::InvalidDimension);
  CHECK(code_of([&] { regression_experiment(gauss, 5, 100, 0, 0, 1); }) ==
        ErrorCode::InvalidInput);

  SUBCASE("Gaussian noise") {
    const RegressionRun r = regression_experiment(gauss, 20, 10000, 1.5, 2.0, 4);
    CHECK(r.kappa.value <= testing::dkw_threshold(1e4));
    CHECK(r.max_identity_gap <= 1e-10);
    CHECK(r.max_projection_gap <= 1e-10);
    CHECK(r.noise == "iid-gaussian");
  }

  SUBCASE("n = 2 Rademacher noise against the three-atom law") {
    // T_2 = +-(X_1 - X_2) / sqrt 2 takes -sqrt2, 0, sqrt2 with weights 1/4, 1/2, 1/4.
    const double r2 = std::sqrt(2.0);
    const double exact =
        std::max({normal_cdf(-r2), std::abs(0.25 - normal_cdf(-r2)), 0.25,
                  std::abs(0.75 - normal_cdf(r2)), 1.0 - normal_cdf(r2)});
    const RegressionRun r = regression_experiment(rad, 2, 10000, 0.0, 1.0, 6);
    CHECK(std::abs(r.kappa.value - exact) <= 3.0 * r.kappa.se);
    CHECK(r.max_identity_gap <= 1e-10);
  }

  SUBCASE("worker count does not change results") {
    const RegressionRun a = regression_experiment(rad, 16, 3000, 0.0, 1.0, 8, 1);
    const RegressionRun b = regression_experiment(rad, 16, 3000, 0.0, 1.0, 8, 4);
    CHECK(a.kappa.value == b.kappa.value);
    CHECK(a.max_identity_gap == b.max_identity_gap);
  }
}
