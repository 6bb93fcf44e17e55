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

// Brute-force reference implementations. They share no code paths with the
// library routines they check and are only meant for small inputs.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mdproj/dependence.hpp"
#include "mdproj/moment_match.hpp"
#include "mdproj/processes.hpp"

namespace mdproj::oracle {

/// Calls fn(path, weight) for every path start = y_0, y_1, ..., y_steps with
/// weight prod K(y_{i-1}, y_i). Cost S^steps.
void for_each_path(const Matrix& kernel, Index start, Index steps,
                   const std::function<void(const std::vector<Index>&, double)>& fn);

/// The four coefficients by summing over all trajectories of the chain.
GammaProfile gamma_by_paths(const FiniteChain& chain, Index vmax, Index ell_max);

/// Direct O(n^2) double loop for beta3 / beta4.
BetaMoments beta_moments_direct(const Vector& weights, const MomentTable& table);

/// Stationary law of the return-to-zero chain from its product form:
/// pi(+-y) proportional to (1/2) prod_{k<y} a_k and pi(0) proportional to 1.
RowVector return_to_zero_pi(int half_width, const Vector& a);

/// Raw moment k of a two-atom law by direct expectation.
double two_atom_moment(double m, double m_prime, double t, int k);

/// The (sigma2, beta3) grid of moment-matching checks: 10 x 20 points on
/// [0.1, 10] x [-5, 5].
std::vector<std::pair<double, double>> moment_grid();

/// Deterministic family of small chains (2 to 4 states) with observables.
std::vector<FiniteChain> toy_chains();

struct SuiteResult {
  std::string name;
  Index checks = 0;
  Index failures = 0;
  double max_error = 0.0;
  double tolerance = 0.0;

  bool passed() const { return failures == 0; }
};

/// Four moments of two_point_from_moments on moment_grid(), relative error
/// against the targets, tolerance 1e-10.
SuiteResult moment_match_suite();

/// gamma_exact_markov against gamma_by_paths on toy_chains(), vmax = 4,
/// ell_max = 3, tolerance 1e-10.
SuiteResult gamma_toy_suite();

/// Orthonormality of the dense basis for every n in `sizes` (tolerance 1e-12).
SuiteResult helmert_orthonormality_suite(const std::vector<Index>& sizes);

/// Projection identities on `instances` random (theta, X) pairs: the inner
/// product of the centered vectors against Helmert coordinates, and the
/// theta_hat / X* duality. Tolerance 1e-10.
SuiteResult helmert_identity_suite(Index instances, std::uint64_t seed);

/// beta_moments against beta_moments_direct on `instances` random weight
/// vectors with n <= 8 and random tables. Tolerance 1e-12.
SuiteResult beta_moments_suite(Index instances, std::uint64_t seed);

/// Stationary law of return-to-zero chains against the product form.
/// Tolerance 1e-12.
SuiteResult stationary_suite();

}  // namespace mdproj::oracle
