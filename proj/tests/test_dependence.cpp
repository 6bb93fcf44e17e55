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

#include "mdproj/dependence.hpp"
#include "mdproj/oracles.hpp"

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

double window_mean(const Vector& v, Index from, Index to) {
  return v.segment(from, to - from).mean();
}

}  // namespace

TEST_CASE("exact coefficients vanish for an iid functional") {
  Matrix k(3, 3);
  k.rowwise() = RowVector::Map(std::vector<double>{0.2, 0.5, 0.3}.data(), 3);
  Vector f(3);
  f << -1.0, 0.5, 2.0;
  const GammaProfile g = gamma_exact_markov(FiniteChain(k, f), 6, 4);
  CHECK(g.gamma.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("exact coefficients equal path enumeration on toy chains") {
  const auto suite = oracle::gamma_toy_suite();
  CHECK(suite.passed());
  CHECK(suite.max_error <= 1e-10);

  // Attained lags agree as well on the pseudo-random chains.
  for (const FiniteChain& chain : oracle::toy_chains()) {
    for (Index vmax : {1, 2, 3, 4}) {
      for (Index ell : {0, 1, 2, 3}) {
        const GammaProfile a = gamma_exact_markov(chain, vmax, ell);
        const GammaProfile b = oracle::gamma_by_paths(chain, vmax, ell);
        CHECK((a.gamma - b.gamma).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }
}

TEST_CASE("profile invariants on the default chain") {
  const TruncatedChain chain = make_truncated_chain(TruncatedChainConfig{});
  const GammaProfile g = gamma_exact_markov(chain.chain, 40, 20);
  for (Index v = 0; v < g.vmax(); ++v) {
    CHECK(g.g02[v] >= 0.0);
    CHECK(g.g12[v] >= 0.0);
    CHECK(g.g22[v] >= 0.0);
    CHECK(g.g13[v] >= 0.0);
    CHECK(g.gamma[v] == std::max({g.g02[v], g.g12[v], g.g22[v], g.g13[v]}));
    CHECK(g.ell_arg22[v] <= 20);
  }
  // Decay over smoothing windows (per-lag monotonicity is not claimed).
  CHECK(window_mean(g.gamma, 30, 40) < window_mean(g.gamma, 10, 20));
  CHECK(window_mean(g.gamma, 10, 20) < window_mean(g.gamma, 0, 10));
  CHECK(g.notes.find("ell_max") != std::string::npos);
}

TEST_CASE("exact coefficients respect the memory budget") {
  const TruncatedChain chain = make_truncated_chain(TruncatedChainConfig{});
  CHECK(code_of([&] { gamma_exact_markov(chain.chain, 10, 5, 1024); }) == ErrorCode::Resource);
  CHECK(code_of([&] { gamma_exact_markov(chain.chain, 0, 5); }) == ErrorCode::InvalidInput);
}

TEST_CASE("ARCH coupling") {
  SUBCASE("no coefficients, no difference") {
    const ArchModel m = ArchModel::power_law(1.0, 0.0, 2.0, 4);
    const CouplingDelta d = coupling_delta_arch(m, 5, 200, 1);
    CHECK(d.delta_hat == 0.0);
    CHECK(d.se == 0.0);
  }

  SUBCASE("single coefficient decays geometrically") {
    const ArchModel m = ArchModel::power_law(0.5, 0.5, 2.0, 1);
    const CouplingProfile p = coupling_delta_profile(m, 16, 4000, 2);
    for (Index k : {2, 4, 8}) {
      const double diff = p.delta[k] - p.delta[2 * k];
      const double se = std::sqrt(p.se[k] * p.se[k] + p.se[2 * k] * p.se[2 * k]);
      CHECK(diff > 1.645 * se);
    }
  }

  SUBCASE("preconditions") {
    const ArchModel m = ArchModel::power_law(0.5, 0.4, 4.0, 8);
    CHECK(code_of([&] { coupling_delta_arch(m, 1, 200, 1); }) == ErrorCode::InvalidInput);
    CHECK(code_of([&] { coupling_delta_arch(m, 4, 50, 1); }) == ErrorCode::InvalidInput);
    ArchModel broken = m;
    broken.coeffs.setConstant(0.5);
    CHECK(code_of([&] { coupling_delta_arch(broken, 4, 200, 1); }) ==
          ErrorCode::NonStationaryModel);
  }

  SUBCASE("independent of the worker count") {
    const ArchModel m = ArchModel::power_law(0.6, 0.4, 4.0, 16);
    const CouplingProfile a = coupling_delta_profile(m, 20, 500, 3, 1);
    const CouplingProfile b = coupling_delta_profile(m, 20, 500, 3, 4);
    CHECK(a.delta == b.delta);
    CHECK(a.se == b.se);
  }
}

TEST_CASE("Monte Carlo coefficient majorants") {
  SUBCASE("vanishing coefficients") {
    const ArchModel m = ArchModel::power_law(1.0, 0.0, 2.0, 4);
    const GammaProfile g = gamma_mc_arch(m, 5, 3, 500, 1);
    for (Index v = 0; v < 5; ++v) CHECK(g.gamma[v] <= 3.0 * g.se13[v] + 1e-15);
  }

  SUBCASE("standard errors scale with R") {
    const ArchModel m = ArchModel::power_law(0.6, 0.4, 4.0, 8);
    const GammaProfile small = gamma_mc_arch(m, 4, 2, 2000, 7);
    const GammaProfile large = gamma_mc_arch(m, 4, 2, 8000, 7);
    for (Index v = 0; v < 4; ++v) {
      const double ratio = large.se02[v] / small.se02[v];
      CHECK(ratio == doctest::Approx(0.5).epsilon(0.3));
    }
  }

  SUBCASE("nonnegative and reproducible") {
    const ArchModel m = ArchModel::power_law(0.6, 0.4, 4.0, 8);
    const GammaProfile a = gamma_mc_arch(m, 6, 3, 300, 5, 1);
    const GammaProfile b = gamma_mc_arch(m, 6, 3, 300, 5, 3);
    CHECK(a.gamma == b.gamma);
    CHECK(a.se13 == b.se13);
    CHECK(a.gamma.minCoeff() >= 0.0);
    for (Index v = 0; v < 6; ++v) {
      CHECK(a.gamma[v] == std::max({a.g02[v], a.g12[v], a.g22[v], a.g13[v]}));
    }
  }

  SUBCASE("summability of the moment-weighted coefficients with a fast decay") {
    // The moment-weighted summability condition sum k gamma(k)^{(p-4)/(p-2)} with p = 6 needs
    // b > 5; b = 7 puts the decay comfortably inside.
    const ArchModel m = ArchModel::power_law(0.7, 0.3, 7.0, 64);
    CHECK(m.meets_decay_condition(6.0));
    const GammaProfile g = gamma_mc_arch(m, 24, 4, 4000, 9);
    const ConditionReport r = condition_report(Vector(g.gamma.array().sqrt()));
    CHECK(r.satisfied_estimate);
  }
}

TEST_CASE("beta-mixing surrogate") {
  SUBCASE("rows equal to pi mix in one step") {
    Matrix k(3, 3);
    k.rowwise() = RowVector::Map(std::vector<double>{0.2, 0.5, 0.3}.data(), 3);
    Vector f(3);
    f << 1.0, 0.0, -1.0;
    CHECK(beta_mixing(FiniteChain(k, f), 5).cwiseAbs().maxCoeff() <= 1e-15);
  }

  SUBCASE("fair two-state flip") {
    Matrix k(2, 2);
    k << 0.5, 0.5, 0.5, 0.5;
    Vector f(2);
    f << 1.0, -1.0;
    CHECK(beta_mixing(FiniteChain(k, f), 1)[0] <= 1e-15);
  }

  SUBCASE("default chain") {
    const TruncatedChain chain = make_truncated_chain(TruncatedChainConfig{});
    const Vector beta = beta_mixing(chain.chain, 400);
    for (Index n = 1; n < beta.size(); ++n) CHECK(beta[n] <= beta[n - 1] + 1e-15);
    const ConditionReport r = mixing_condition_report(chain.chain, 400);
    CHECK(r.satisfied_estimate);
    CHECK(r.notes.find("upper-bound") != std::string::npos);
    for (Index i = 1; i < r.partial_sums.size(); ++i) {
      CHECK(r.partial_sums[i] >= r.partial_sums[i - 1]);
    }
  }
}

TEST_CASE("summability reports") {
  const Index kmax = 200;
  SUBCASE("all zero") {
    const ConditionReport r = condition_report(Vector::Zero(kmax));
    CHECK(r.satisfied_estimate);
    CHECK(r.partial_sums.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("k^-3 converges; partial sums are sums of 1/k^2") {
    Vector c(kmax);
    for (Index k = 1; k <= kmax; ++k) c[k - 1] = std::pow(double(k), -3.0);
    const ConditionReport r = condition_report(c);
    double h = 0.0;
    for (Index k = 1; k <= kmax; ++k) {
      h += 1.0 / double(k * k);
      CHECK(r.partial_sums[k - 1] == doctest::Approx(h).epsilon(1e-14));
    }
    CHECK(r.tail_exponent == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.satisfied_estimate);
  }

  SUBCASE("k^-2 gives the harmonic series and is not flagged") {
    Vector c(kmax);
    for (Index k = 1; k <= kmax; ++k) c[k - 1] = 1.0 / double(k * k);
    const ConditionReport r = condition_report(c);
    double h = 0.0;
    for (Index k = 1; k <= kmax; ++k) h += 1.0 / double(k);
    CHECK(r.partial_sums[kmax - 1] == doctest::Approx(h).epsilon(1e-14));
    CHECK(r.tail_exponent == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(r.satisfied_estimate);
  }

  SUBCASE("k^-1 diverges linearly") {
    Vector c(kmax);
    for (Index k = 1; k <= kmax; ++k) c[k - 1] = 1.0 / double(k);
    const ConditionReport r = condition_report(c);
    CHECK(r.partial_sums[kmax - 1] == doctest::Approx(double(kmax)));
    CHECK_FALSE(r.satisfied_estimate);
  }
}
