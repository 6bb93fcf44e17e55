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

#include <algorithm>
#include <cmath>
#include <vector>

namespace testing {

// Two-sided DKW band at level alpha for m samples.
inline double dkw_threshold(double m, double alpha = 0.01) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * m));
}

// Asymptotic 1% critical value of the two-sample KS statistic.
inline double two_sample_ks_threshold(double m, double n) {
  return 1.628 * std::sqrt((m + n) / (m * n));
}

inline double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double sup = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    sup = std::max(sup, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return sup;
}

}  // namespace testing
