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

#include "mdproj/moment_match.hpp"
#include "mdproj/oracles.hpp"
#include "mdproj/two_point.hpp"

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

}  // namespace

TEST_CASE("two-point law examples") {
  const TwoPointLaw rad = two_point_from_moments(1.0, 0.0);
  CHECK(rad.m == doctest::Approx(1.0));
  CHECK(rad.m_prime == doctest::Approx(-1.0));
  CHECK(rad.t == doctest::Approx(0.5));

  const TwoPointLaw wide = two_point_from_moments(4.0, 0.0);
  CHECK(wide.m == doctest::Approx(2.0));
  CHECK(wide.m_prime == doctest::Approx(-2.0));
  CHECK(wide.t == doctest::Approx(0.5));

  // Closed forms: m = 1 + sqrt 2, m' = 1 - sqrt 2, t = (2 - sqrt 2) / 4.
  const TwoPointLaw skew = two_point_from_moments(1.0, 2.0);
  CHECK(skew.m == doctest::Approx(2.4142135623730950).epsilon(1e-14));
  CHECK(skew.m_prime == doctest::Approx(-0.41421356237309505).epsilon(1e-14));
  CHECK(skew.t == doctest::Approx(0.14644660940672624).epsilon(1e-14));
  CHECK(oracle::two_atom_moment(skew.m, skew.m_prime, skew.t, 4) ==
        doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("two-point law errors") {
  CHECK(code_of([] { two_point_from_moments(0.0, 1.0); }) == ErrorCode::InvalidVariance);
  CHECK(code_of([] { two_point_from_moments(-1.0, 1.0); }) == ErrorCode::InvalidVariance);
  CHECK(code_of([] { two_point_from_moments(NAN, 1.0); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { two_point_from_moments(1.0, INFINITY); }) == ErrorCode::InvalidInput);
}

TEST_CASE("moment matching on the 200-point grid") {
  const auto result = oracle::moment_match_suite();
  CHECK(result.passed());
  CHECK(result.checks == 800);

  for (const auto& [sigma2, beta3] : oracle::moment_grid()) {
    const TwoPointLaw law = two_point_from_moments(sigma2, beta3);
    CHECK(law.t > 0.0);
    CHECK(law.t < 1.0);
    CHECK(law.m > 0.0);
    CHECK(law.m_prime < 0.0);
    CHECK(std::abs(law.t * law.m + (1 - law.t) * law.m_prime) < 1e-12 * std::sqrt(sigma2));
    CHECK(std::abs(law.moment(2) - sigma2) < 1e-12 * std::max(1.0, sigma2));
  }
}

TEST_CASE("two-point law under strong negative skew keeps precision") {
  // beta3 << -sigma^3: the naive formula for m cancels.
  const TwoPointLaw law = two_point_from_moments(1e-4, -10.0);
  CHECK(std::abs(law.moment(1)) < 1e-18);
  CHECK(law.moment(2) == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(law.moment(3) == doctest::Approx(-10.0).epsilon(1e-10));
}

TEST_CASE("scale covariance") {
  for (const auto& [sigma2, beta3] : oracle::moment_grid()) {
    const double lambda = 2.0;
    const TwoPointLaw base = two_point_from_moments(sigma2, beta3);
    const TwoPointLaw scaled =
        two_point_from_moments(lambda * lambda * sigma2, lambda * lambda * lambda * beta3);
    CHECK(scaled.m == doctest::Approx(lambda * base.m).epsilon(1e-12));
    CHECK(scaled.m_prime == doctest::Approx(lambda * base.m_prime).epsilon(1e-12));
    CHECK(scaled.t == doctest::Approx(base.t).epsilon(1e-12));
  }
}

TEST_CASE("beta moments") {
  SUBCASE("symmetric iid table") {
    Stream rng(1);
    const SphereVector theta = sample_uniform_sphere(10, rng);
    MomentTable table;
    table.a = Vector::Zero(10);
    table.cov_sq = Vector::Zero(10);
    const BetaMoments b = beta_moments(theta, table);
    CHECK(b.beta3.cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.beta4 - theta.coords().array().pow(4).matrix()).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("n = 2 single cross term") {
    Vector t(2);
    t << 0.6, 0.8;
    MomentTable table;
    table.a = Vector(2);
    table.a << 0.0, 0.3;
    table.cov_sq = Vector::Zero(2);
    const BetaMoments b = beta_moments(SphereVector(t), table);
    CHECK(b.beta3[0] == 0.0);
    CHECK(b.beta3[1] == doctest::Approx(3.0 * 0.3 * 0.6 * 0.64).epsilon(1e-14));
  }

  SUBCASE("zero weight convention and invariants") {
    Vector w(4);
    w << 0.5, 0.0, -0.5, std::sqrt(0.5);
    MomentTable table;
    table.a = Vector(4);
    table.a << 0.7, -0.2, 0.4, 0.1;
    table.cov_sq = Vector::Zero(4);
    const BetaMoments b = beta_moments(w, table);
    CHECK(b.beta4[1] == 0.0);
    CHECK(b.beta3[1] == 0.0);
    for (Index k = 0; k < 4; ++k) CHECK(b.beta4[k] >= std::pow(w[k], 4));
  }

  SUBCASE("short table") {
    MomentTable table;
    table.a = Vector::Zero(3);
    table.cov_sq = Vector::Zero(3);
    CHECK(code_of([&] { beta_moments(Vector::Ones(5), table); }) ==
          ErrorCode::InsufficientTable);
  }

  SUBCASE("against the direct double loop") {
    const auto result = oracle::beta_moments_suite(500, 77);
    CHECK(result.passed());
  }
}

TEST_CASE("surrogate variables") {
  Stream rng(2);
  SUBCASE("zero weight gives zero") {
    Vector w(3);
    w << 0.6, 0.8, 0.0;
    MomentTable table;
    table.a = Vector::Zero(3);
    table.a[0] = 1.0;
    table.cov_sq = Vector::Zero(3);
    const BetaMoments b = beta_moments(w, table);
    for (int i = 0; i < 100; ++i) CHECK(sample_surrogates(w, b, rng)[2] == 0.0);
  }

  SUBCASE("second moment of the sum") {
    const SphereVector theta = sample_uniform_sphere(8, rng);
    MomentTable table;
    table.a = Vector::Zero(8);
    table.cov_sq = Vector::Zero(8);
    const BetaMoments b = beta_moments(theta, table);
    double acc = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
      const double s = sample_surrogates(theta.coords(), b, rng).sum();
      acc += s * s;
    }
    CHECK(std::abs(acc / draws - 1.0) < 0.02);
  }

  SUBCASE("third moments match beta3") {
    Vector w(3);
    w << 0.5, 0.5, std::sqrt(0.5);
    MomentTable table;
    table.a = Vector(3);
    table.a << 1.2, 0.4, -0.3;
    table.cov_sq = Vector::Zero(3);
    const BetaMoments b = beta_moments(w, table);
    const int draws = 200000;
    Vector sum3 = Vector::Zero(3), sum6 = Vector::Zero(3);
    for (int i = 0; i < draws; ++i) {
      const Vector y = sample_surrogates(w, b, rng);
      sum3 += y.array().pow(3).matrix();
      sum6 += y.array().pow(6).matrix();
    }
    for (Index k = 0; k < 3; ++k) {
      const double mean = sum3[k] / draws;
      const double se = std::sqrt((sum6[k] / draws - mean * mean) / draws);
      CHECK(std::abs(mean - b.beta3[k]) < 4.0 * se);
    }
  }

  SUBCASE("length mismatch") {
    BetaMoments b{Vector::Zero(2), Vector::Zero(2)};
    CHECK(code_of([&] { sample_surrogates(Vector::Ones(3), b, rng); }) ==
          ErrorCode::LengthMismatch);
  }
}

TEST_CASE("moment event") {
  BetaMoments small{Vector::Zero(4), Vector::Constant(4, 1e-6)};
  const GammaEvent ok = gamma_event(small, 1.0);
  CHECK(ok.holds);

  BetaMoments heavy{Vector::Zero(4), Vector::Constant(4, 0.5)};
  const GammaEvent bad = gamma_event(heavy, 1.0);
  CHECK_FALSE(bad.holds);
  CHECK(bad.margins[2] == doctest::Approx(2.0));
}

TEST_CASE("moment event frequency shrinks with n") {
  // Rademacher iid: beta3 = 0 and beta4 = theta^4, so the event fails only
  // when T0^4 sum theta_k^4 > 1; that sum concentrates near 3 / (n + 2).
  const double t0 = 1.5;
  double previous = 1.1;
  for (Index n : {4, 8, 16, 64}) {
    Stream rng(100 + n);
    MomentTable table;
    table.a = Vector::Zero(n);
    table.cov_sq = Vector::Zero(n);
    int failures = 0;
    const int draws = 4000;
    for (int i = 0; i < draws; ++i) {
      const SphereVector theta = sample_uniform_sphere(n, rng);
      failures += !gamma_event(beta_moments(theta, table), t0).holds;
    }
    const double freq = double(failures) / draws;
    CHECK(freq <= previous);
    previous = freq;
  }
  CHECK(previous == 0.0);
}
