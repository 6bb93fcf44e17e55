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

#include "mdproj/sphere_geometry.hpp"

#include <limits>
#include <string>

namespace mdproj {

SphereVector::SphereVector(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) {
    throw Error(ErrorCode::InvalidDimension, "SphereVector: dimension must be >= 1");
  }
  if (std::abs(coords_.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidInput, "SphereVector: coordinates must have unit norm");
  }
}

SphereVector SphereVector::normalized(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::DegenerateDirection, "SphereVector: cannot normalize a zero vector");
  }
  return SphereVector(v / norm);
}

SphereVector sample_uniform_sphere(Index n, Stream& rng) {
  if (n < 1) {
    throw Error(ErrorCode::InvalidDimension, "sample_uniform_sphere: n must be >= 1");
  }
  Vector g(n);
  for (;;) {
    for (Index i = 0; i < n; ++i) g[i] = rng.normal();
    const double norm = g.norm();
    if (norm > 0.0) return SphereVector(g / norm);
  }
}

CenteredWeights centered_weights(const Vector& theta) {
  const Index n = theta.size();
  if (n < 2) {
    throw Error(ErrorCode::InvalidDimension, "centered_weights: n must be >= 2");
  }
  const Vector b = helmert_transform(theta);
  const double centered_norm = b.head(n - 1).norm();
  const double tol = 64.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                     std::max(1.0, theta.norm());
  if (!(centered_norm > tol)) {
    throw Error(ErrorCode::DegenerateDirection,
                "centered_weights: direction is proportional to the all-ones vector");
  }

  CenteredWeights w;
  w.theta_hat = b.head(n - 1) / centered_norm;
  w.theta_partial.resize(n - 1);
  double acc = 0.0;
  for (Index v = n - 1; v >= 1; --v) {
    const double vv = static_cast<double>(v);
    acc += w.theta_hat[v - 1] / std::sqrt(vv * (vv + 1.0));
    w.theta_partial[v - 1] = acc;
  }

  w.theta_star.resize(n);
  for (Index l = 1; l <= n - 1; ++l) {
    const double ll = static_cast<double>(l);
    const double prev = l >= 2 ? w.theta_hat[l - 2] : 0.0;
    w.theta_star[l - 1] = w.theta_partial[l - 1] - std::sqrt((ll - 1.0) / ll) * prev;
  }
  const double nn = static_cast<double>(n);
  w.theta_star[n - 1] = -std::sqrt((nn - 1.0) / nn) * w.theta_hat[n - 2];
  return w;
}

CenteredWeights centered_weights(const SphereVector& theta) {
  return centered_weights(theta.coords());
}

double project(const Vector& x, const SphereVector& theta) {
  if (x.size() != theta.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "project: vector of length " + std::to_string(x.size()) +
                    " against direction of length " + std::to_string(theta.size()));
  }
  return x.dot(theta.coords());
}

double project_centered(const Vector& x, const SphereVector& theta) {
  if (x.size() != theta.size()) {
    throw Error(ErrorCode::LengthMismatch, "project_centered: length mismatch");
  }
  return x.dot(centered_weights(theta).theta_star);
}

}  // namespace mdproj
