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

#include "mdproj/moment_match.hpp"

#include <cmath>
#include <string>

namespace mdproj {

BetaMoments beta_moments(const Vector& weights, const MomentTable& table) {
  const Index n = weights.size();
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "beta_moments: empty weights");
  if (table.horizon() < n - 1) {
    throw Error(ErrorCode::InsufficientTable,
                "beta_moments: table horizon " + std::to_string(table.horizon()) +
                    " is shorter than n - 1 = " + std::to_string(n - 1));
  }

  BetaMoments out;
  out.beta3.resize(n);
  out.beta4.resize(n);
  const double third = table.third();
  // a(1), ..., a(n-1) reversed so that the lag k - l lines up with theta_l.
  const Vector lags_reversed = table.a.segment(1, std::max<Index>(n - 1, 0)).reverse();
  for (Index k = 0; k < n; ++k) {
    const double tk = weights[k];
    const double cross = k > 0 ? weights.head(k).dot(lags_reversed.tail(k)) : 0.0;
    out.beta3[k] = tk * tk * tk * third + 3.0 * tk * tk * cross;
    out.beta4[k] = tk == 0.0 ? 0.0 : tk * tk * tk * tk + out.beta3[k] * out.beta3[k] / (tk * tk);
  }
  return out;
}

BetaMoments beta_moments(const SphereVector& theta, const MomentTable& table) {
  return beta_moments(theta.coords(), table);
}

Vector sample_surrogates(const Vector& weights, const BetaMoments& betas, Stream& rng) {
  const Index n = weights.size();
  if (betas.beta3.size() != n || betas.beta4.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "sample_surrogates: inconsistent lengths");
  }
  Vector y(n);
  for (Index k = 0; k < n; ++k) {
    const double tk = weights[k];
    if (tk == 0.0) {
      y[k] = 0.0;
      continue;
    }
    y[k] = two_point_from_moments(tk * tk, betas.beta3[k]).sample(rng);
  }
  return y;
}

GammaEvent gamma_event(const BetaMoments& betas, double t0) {
  GammaEvent event;
  const double max_beta3 = betas.beta3.size() > 0 ? betas.beta3.cwiseAbs().maxCoeff() : 0.0;
  event.margins[0] = max_beta3 * t0;
  event.margins[1] = t0 * t0 * t0 * std::abs(betas.beta3.sum());
  event.margins[2] = t0 * t0 * t0 * t0 * betas.beta4.sum();
  event.holds = event.margins[0] <= 1.0 && event.margins[1] <= 1.0 && event.margins[2] <= 1.0;
  return event;
}

}  // namespace mdproj
