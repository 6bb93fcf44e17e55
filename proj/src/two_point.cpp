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

#include "mdproj/two_point.hpp"

#include <cmath>

#include "mdproj/errors.hpp"

namespace mdproj {

double TwoPointLaw::moment(int k) const {
  return t * std::pow(m, k) + t_prime * std::pow(m_prime, k);
}

TwoPointLaw two_point_from_moments(double sigma2, double beta3) {
  if (!std::isfinite(sigma2) || !std::isfinite(beta3)) {
    throw Error(ErrorCode::InvalidInput, "two_point_from_moments: non-finite input");
  }
  if (!(sigma2 > 0.0)) {
    throw Error(ErrorCode::InvalidVariance, "two_point_from_moments: sigma2 must be > 0");
  }
  const double sigma6 = sigma2 * sigma2 * sigma2;
  const double s = std::hypot(beta3, 2.0 * std::sqrt(sigma6));  // sqrt(beta3^2 + 4 sigma^6)

  TwoPointLaw law;
  law.sigma2 = sigma2;
  law.beta3 = beta3;
  if (beta3 >= 0.0) {
    law.m = (beta3 + s) / (2.0 * sigma2);
    law.t = 2.0 * sigma6 / (s * (s + beta3));
    law.t_prime = (s + beta3) / (2.0 * s);
  } else {
    // beta3 + s = 4 sigma^6 / (s - beta3); avoids the cancellation.
    law.m = 2.0 * sigma2 * sigma2 / (s - beta3);
    law.t = (s - beta3) / (2.0 * s);
    law.t_prime = 2.0 * sigma6 / (s * (s - beta3));
  }
  law.m_prime = -sigma2 / law.m;
  return law;
}

}  // namespace mdproj
