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

#include <cmath>

#include <Eigen/Dense>

#include "mdproj/errors.hpp"
#include "mdproj/random.hpp"

namespace mdproj {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// A point on the unit sphere S^{n-1}.
class SphereVector {
 public:
  /// Wraps `coords`, which must already have unit norm (within 1e-12).
  explicit SphereVector(Vector coords);

  /// Normalizes `v`; throws DegenerateDirection for the zero vector.
  static SphereVector normalized(const Vector& v);

  const Vector& coords() const noexcept { return coords_; }
  Index size() const noexcept { return coords_.size(); }
  double operator[](Index i) const { return coords_[i]; }

 private:
  Vector coords_;
};

/// Uniform draw on S^{n-1}: normalized iid standard Gaussians (a zero
/// vector, possible only through underflow, is redrawn).
SphereVector sample_uniform_sphere(Index n, Stream& rng);

/// The orthonormal basis whose k-th row (1-based) is
/// u_k = (1,...,1, -k, 0,...,0) / sqrt(k(k+1)) for k < n and
/// u_n = 1_n / sqrt(n). Dense; meant for tests and small n.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> helmert_basis(Index n) {
  using std::sqrt;
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "helmert_basis: n must be >= 2");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> basis =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (Index k = 1; k < n; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    const Scalar denom = sqrt(kk * (kk + Scalar(1)));
    basis.row(k - 1).head(k).setConstant(Scalar(1) / denom);
    basis(k - 1, k) = -kk / denom;
  }
  basis.row(n - 1).setConstant(Scalar(1) / sqrt(static_cast<Scalar>(n)));
  return basis;
}

/// B*x in O(n) without materializing the basis.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> helmert_transform(
    const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  const Index n = x.size();
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "helmert_transform: n must be >= 2");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(n);
  Scalar prefix(0);
  for (Index k = 1; k < n; ++k) {
    prefix += x[k - 1];
    const Scalar kk = static_cast<Scalar>(k);
    out[k - 1] = (prefix - kk * x[k]) / sqrt(kk * (kk + Scalar(1)));
  }
  out[n - 1] = (prefix + x[n - 1]) / sqrt(static_cast<Scalar>(n));
  return out;
}

/// X*_k = sqrt(k/(k+1)) (mean(X_1..X_k) - X_{k+1}), k = 1..n-1.
/// Equal to the first n-1 coordinates of B*X.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> x_star(
    const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  const Index n = x.size();
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "x_star: n must be >= 2");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(n - 1);
  Scalar prefix(0);
  for (Index k = 1; k < n; ++k) {
    prefix += x[k - 1];
    const Scalar kk = static_cast<Scalar>(k);
    out[k - 1] = sqrt(kk / (kk + Scalar(1))) * (prefix / kk - x[k]);
  }
  return out;
}

/// Weights of the centered projection X -> <X, A theta / |A theta|>,
/// A = I - J/n, written in the Helmert coordinates.
struct CenteredWeights {
  Vector theta_hat;      ///< (B theta)_{1..n-1} / |A theta|, unit norm
  Vector theta_partial;  ///< sum_{v >= l} theta_hat_v / sqrt(v(v+1)), l = 1..n-1
  Vector theta_star;     ///< the n weights; equals A theta / |A theta|
};

/// O(n) evaluation via right-to-left partial sums. Throws
/// DegenerateDirection when theta is (numerically) proportional to 1_n.
CenteredWeights centered_weights(const SphereVector& theta);
CenteredWeights centered_weights(const Vector& theta);

/// S_n(theta) = <X, theta>.
double project(const Vector& x, const SphereVector& theta);

/// Centered projection <X, A theta / |A theta|>.
double project_centered(const Vector& x, const SphereVector& theta);

}  // namespace mdproj
