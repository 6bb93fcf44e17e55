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

#include "mdproj/oracles.hpp"
#include "mdproj/sphere_geometry.hpp"
#include "support.hpp"

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

Vector random_vector(Index n, Stream& rng) {
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = rng.normal();
  return x;
}

}  // namespace

TEST_CASE("SphereVector enforces unit norm") {
  Vector v(2);
  v << 1.0, 1.0;
  CHECK(code_of([&] { SphereVector s(v); }) == ErrorCode::InvalidInput);
  CHECK(SphereVector::normalized(v).coords().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(code_of([] { SphereVector::normalized(Vector::Zero(3)); }) ==
        ErrorCode::DegenerateDirection);
  CHECK(code_of([] { SphereVector s(Vector(0)); }) == ErrorCode::InvalidDimension);
}

TEST_CASE("uniform sphere sampling") {
  Stream rng(1);
  CHECK(code_of([&] { sample_uniform_sphere(0, rng); }) == ErrorCode::InvalidDimension);

  SUBCASE("dimension one gives +-1 evenly") {
    int plus = 0;
    for (int i = 0; i < 10000; ++i) {
      const SphereVector t = sample_uniform_sphere(1, rng);
      CHECK(std::abs(t[0]) == 1.0);
      plus += t[0] > 0;
    }
    CHECK(plus / 10000.0 == doctest::Approx(0.5).epsilon(0.04));
  }

  SUBCASE("second and fourth moments in dimension four") {
    double m2 = 0.0, m4 = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
      const double t = sample_uniform_sphere(4, rng)[0];
      m2 += t * t;
      m4 += t * t * t * t;
    }
    CHECK(std::abs(m2 / draws - 0.25) < 0.01);
    CHECK(std::abs(m4 / draws - 0.125) < 0.01);  // 3 / (n (n + 2))
  }

  SUBCASE("rotation invariance of the first coordinate") {
    const Index n = 5;
    // Fixed orthogonal map: Householder reflection through a fixed unit vector.
    Vector u(n);
    u << 0.3, -0.5, 0.1, 0.7, 0.2;
    u.normalize();
    const Matrix q = Matrix::Identity(n, n) - 2.0 * u * u.transpose();
    std::vector<double> first, rotated;
    Stream a(11), b(12);
    for (int i = 0; i < 10000; ++i) {
      first.push_back(sample_uniform_sphere(n, a)[0]);
      rotated.push_back((q * sample_uniform_sphere(n, b).coords())[0]);
    }
    CHECK(testing::two_sample_ks(first, rotated) < testing::two_sample_ks_threshold(1e4, 1e4));
  }
}

TEST_CASE("Helmert basis rows") {
  CHECK(code_of([] { helmert_basis(1); }) == ErrorCode::InvalidDimension);

  const Matrix b2 = helmert_basis(2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(b2(0, 0) == doctest::Approx(r));
  CHECK(b2(0, 1) == doctest::Approx(-r));
  CHECK(b2(1, 0) == doctest::Approx(r));
  CHECK(b2(1, 1) == doctest::Approx(r));

  const Matrix b3 = helmert_basis(3);
  const double s6 = 1.0 / std::sqrt(6.0);
  CHECK(b3(1, 0) == doctest::Approx(s6));
  CHECK(b3(1, 1) == doctest::Approx(s6));
  CHECK(b3(1, 2) == doctest::Approx(-2.0 * s6));

  for (Index n : {2, 7, 64, 333}) {
    const Vector ones_image = helmert_basis(n) * Vector::Ones(n);
    CHECK(ones_image.head(n - 1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(ones_image[n - 1] == doctest::Approx(std::sqrt(double(n))));
  }
}

TEST_CASE("Helmert orthonormality up to n = 1024") {
  std::vector<Index> sizes;
  for (Index n = 2; n <= 96; ++n) sizes.push_back(n);
  for (Index n : {127, 128, 129, 255, 256, 500, 511, 512, 777, 1000, 1023, 1024}) {
    sizes.push_back(n);
  }
  const auto result = oracle::helmert_orthonormality_suite(sizes);
  CHECK(result.passed());
  CHECK(result.max_error <= 1e-12);
}

TEST_CASE("Helmert transform matches the dense basis") {
  Stream rng(3);
  for (Index n : {2, 3, 10, 257}) {
    const Vector x = random_vector(n, rng);
    CHECK((helmert_transform(x) - helmert_basis(n) * x).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((x_star(x) - (helmert_basis(n) * x).head(n - 1)).cwiseAbs().maxCoeff() < 1e-12);
  }
  // Scalar-generic: long double instantiation.
  Eigen::Matrix<long double, Eigen::Dynamic, 1> xl(4);
  xl << 1.0L, 2.0L, 3.0L, 4.0L;
  const auto bl = helmert_basis<long double>(4);
  CHECK(std::abs(double((helmert_transform(xl) - bl * xl).cwiseAbs().maxCoeff())) < 1e-15);
}

TEST_CASE("x_star examples") {
  Vector x(2);
  x << 1.0, 1.0;
  CHECK(x_star(x)[0] == doctest::Approx(0.0));
  x << 1.0, 0.0;
  CHECK(x_star(x)[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(code_of([] { x_star(Vector::Ones(1)); }) == ErrorCode::InvalidDimension);
}

TEST_CASE("centered weights") {
  SUBCASE("n = 2 hand computation") {
    Vector t(2);
    t << 0.8, 0.6;
    const CenteredWeights w = centered_weights(SphereVector(t));
    CHECK(w.theta_star[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(w.theta_star[1] == doctest::Approx(-1.0 / std::sqrt(2.0)));
    Vector x(2);
    x << 3.0, -1.5;
    CHECK(project_centered(x, SphereVector(t)) == doctest::Approx(4.5 / std::sqrt(2.0)));
  }

  SUBCASE("degenerate direction") {
    const SphereVector flat(Vector::Constant(9, 1.0 / 3.0));
    CHECK(code_of([&] { centered_weights(flat); }) == ErrorCode::DegenerateDirection);
    CHECK(code_of([] { centered_weights(Vector::Ones(1)); }) == ErrorCode::InvalidDimension);
  }

  SUBCASE("invariants on random directions") {
    Stream rng(5);
    for (int rep = 0; rep < 100; ++rep) {
      const Index n = 2 + rep * 7;
      const SphereVector theta = sample_uniform_sphere(n, rng);
      const CenteredWeights w = centered_weights(theta);
      CHECK(std::abs(w.theta_hat.squaredNorm() - 1.0) < 1e-10);

      // theta_partial by its defining sum
      const Index l = 1 + rep % (n - 1);
      double partial = 0.0;
      for (Index v = l; v <= n - 1; ++v) {
        partial += w.theta_hat[v - 1] / std::sqrt(double(v) * double(v + 1));
      }
      CHECK(std::abs(w.theta_partial[l - 1] - partial) < 1e-12);

      const Vector centered = theta.coords().array() - theta.coords().mean();
      const Vector direct = centered / centered.norm();
      CHECK((w.theta_star - direct).cwiseAbs().maxCoeff() < 1e-12);
      // theta* is a unit vector: the squared norm is 1 up to rounding.
      CHECK(std::abs(w.theta_star.squaredNorm() - 1.0) < 1e-12);

      const Vector x = random_vector(n, rng);
      CHECK(std::abs(project_centered(x, theta) - x.dot(direct)) < 1e-10);
      CHECK(std::abs(w.theta_hat.dot(x_star(x)) - x.dot(direct)) < 1e-10);
    }
  }

  SUBCASE("constant X projects to zero") {
    Stream rng(6);
    const SphereVector theta = sample_uniform_sphere(50, rng);
    CHECK(std::abs(project_centered(Vector::Constant(50, 2.5), theta)) < 1e-12);
  }
}

TEST_CASE("projection identities on 100 random instances") {
  const auto result = oracle::helmert_identity_suite(100, 99);
  CHECK(result.passed());
  CHECK(result.checks == 300);
}

TEST_CASE("project") {
  Stream rng(7);
  const SphereVector theta = sample_uniform_sphere(6, rng);
  CHECK(project(theta.coords(), theta) == doctest::Approx(1.0));
  CHECK(project(Vector::Zero(6), theta) == 0.0);
  Vector x(2);
  x << 1.0, -1.0;
  CHECK(project(x, SphereVector::normalized(Vector::Ones(2))) == doctest::Approx(0.0));
  CHECK(code_of([&] { project(Vector::Zero(5), theta); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([&] { project_centered(Vector::Zero(5), theta); }) == ErrorCode::LengthMismatch);
}
