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

#include <array>

#include "mdproj/processes.hpp"
#include "mdproj/sphere_geometry.hpp"
#include "mdproj/two_point.hpp"

namespace mdproj {

/// Conditional third and fourth moments prescribed for the surrogate
/// variables Y_k(theta):
///   beta3_k = theta_k^3 E X^3 + 3 theta_k^2 sum_{l<k} theta_l a(k-l)
///   beta4_k = theta_k^4 + beta3_k^2 / theta_k^2   (0 when theta_k = 0)
struct BetaMoments {
  Vector beta3;
  Vector beta4;
};

/// Works for any weight vector (theta or the centered theta*). The table must
/// reach lag n-1; a shorter horizon throws InsufficientTable.
BetaMoments beta_moments(const Vector& weights, const MomentTable& table);
BetaMoments beta_moments(const SphereVector& theta, const MomentTable& table);

/// One draw of (Y_1(theta), ..., Y_n(theta)): independent two-point
/// variables with variance theta_k^2 and third moment beta3_k.
Vector sample_surrogates(const Vector& weights, const BetaMoments& betas, Stream& rng);

struct GammaEvent {
  bool holds = false;
  /// max_k |beta3_k| T0, T0^3 |sum beta3|, T0^4 sum beta4
  std::array<double, 3> margins{};
};

/// Evaluates the three conditions of the moment event at threshold T0.
GammaEvent gamma_event(const BetaMoments& betas, double t0);

}  // namespace mdproj
