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

#include "mdproj/random.hpp"

namespace mdproj {

/// Two-atom law: m with probability t, m_prime with probability 1 - t.
/// Mean 0, variance sigma2, third moment beta3 and fourth moment
/// sigma2^2 + beta3^2 / sigma2.
struct TwoPointLaw {
  double m = 1.0;
  double m_prime = -1.0;
  double t = 0.5;
  double t_prime = 0.5;  ///< 1 - t, stored separately so tiny masses stay exact
  double sigma2 = 1.0;
  double beta3 = 0.0;

  double moment(int k) const;
  double sample(Stream& rng) const { return rng.uniform() < t ? m : m_prime; }
};

/// Builds the two-point law matching (0, sigma2, beta3). Throws
/// InvalidVariance for sigma2 <= 0 and InvalidInput for non-finite input.
TwoPointLaw two_point_from_moments(double sigma2, double beta3);

}  // namespace mdproj
