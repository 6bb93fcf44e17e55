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

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mdproj/errors.hpp"
#include "mdproj/random.hpp"
#include "mdproj/two_point.hpp"

namespace mdproj {

using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Innovations
// ---------------------------------------------------------------------------

/// Centered innovation law with closed-form moments and characteristic
/// function. Values are "raw": a two-point law keeps its own variance.
class InnovationLaw {
 public:
  enum class Kind { Rademacher, Gaussian, TwoPoint };

  static InnovationLaw rademacher() { return InnovationLaw(Kind::Rademacher, {}); }
  static InnovationLaw gaussian() { return InnovationLaw(Kind::Gaussian, {}); }
  static InnovationLaw two_point(const TwoPointLaw& law) {
    return InnovationLaw(Kind::TwoPoint, law);
  }

  Kind kind() const noexcept { return kind_; }
  const TwoPointLaw& two_point_law() const noexcept { return law_; }
  bool is_discrete() const noexcept { return kind_ != Kind::Gaussian; }

  double variance() const noexcept;
  double third_moment() const noexcept;
  double fourth_moment() const noexcept;

  double sample(Stream& rng) const;
  std::complex<double> cf(double t) const;
  std::string name() const;

 private:
  InnovationLaw(Kind kind, TwoPointLaw law) : kind_(kind), law_(law) {}

  Kind kind_;
  TwoPointLaw law_;
};

// ---------------------------------------------------------------------------
// ARCH(infinity), truncated at J lags
// ---------------------------------------------------------------------------

/// X_t = sigma_t eta_t, sigma_t^2 = c + sum_{j<=J} c_j X_{t-j}^2 with
/// c_j = kappa j^{-b}. Innovations are rescaled to unit variance.
struct ArchModel {
  double c = 0.0;
  double kappa = 0.0;
  double b = 2.0;
  int lags = 1;
  InnovationLaw innovation = InnovationLaw::gaussian();
  int burn_in = 10;
  Vector coeffs;  ///< c_1..c_J

  /// Validates and fills `coeffs`. burn_in <= 0 selects the default 10 J.
  /// Throws NonStationaryModel when sum c_j >= 1.
  static ArchModel power_law(double c, double kappa, double b, int lags,
                             InnovationLaw innovation = InnovationLaw::gaussian(),
                             int burn_in = 0);

  double coeff_sum() const { return coeffs.sum(); }
  /// Stationary E X_0^2 = c / (1 - sum c_j).
  double variance() const { return c / (1.0 - coeff_sum()); }
  /// Summability condition on b for a given innovation moment order p in (4, 6].
  bool meets_decay_condition(double p) const { return b > 1.0 + 2.0 * (p - 2.0) / (p - 4.0); }
};

/// Running state of the ARCH recursion on the raw (unnormalized) scale.
class ArchState {
 public:
  /// History initialized at the stationary level X^2 = v^2.
  explicit ArchState(const ArchModel& model);

  /// sigma^2 for the next step.
  double sigma2() const;
  /// Advances one step with unit-variance innovation `eta`; returns X.
  double step(double eta);

 private:
  const ArchModel* model_;
  Index lags_;
  Index head_ = 0;
  std::vector<double> squares_;  // doubled ring buffer of past X^2
};

// ---------------------------------------------------------------------------
// Finite Markov chains and the truncated return-to-zero chain
// ---------------------------------------------------------------------------

/// Stationary row vector of a row-stochastic matrix: solves
/// (K^T - I) pi = 0 with sum(pi) = 1 replacing one equation, then applies one
/// power-iteration step. Throws NumericFailure when the system is singular or
/// the solution is not strictly positive.
RowVector stationary_distribution(const Matrix& kernel);

/// Finite-state chain with an observable f; X_i = scale * f(Y_i) with scale
/// chosen so that E X_0^2 = 1 under the stationary law.
class FiniteChain {
 public:
  FiniteChain(Matrix kernel, Vector f);

  Index states() const noexcept { return kernel_.rows(); }
  const Matrix& kernel() const noexcept { return kernel_; }
  const Vector& f() const noexcept { return f_; }
  const RowVector& pi() const noexcept { return pi_; }
  double scale() const noexcept { return scale_; }
  /// scale * f
  Vector observable() const { return scale_ * f_; }

  Index sample_stationary(Stream& rng) const;
  Index step(Index state, Stream& rng) const;

 private:
  Matrix kernel_;
  Vector f_;
  RowVector pi_;
  double scale_ = 1.0;
  std::vector<double> pi_cumulative_;
  std::vector<Index> row_offsets_;
  std::vector<Index> row_targets_;
  std::vector<double> row_cumulative_;
};

/// (K g)(y) = sum_z K(y, z) g(z).
Vector kernel_apply(const FiniteChain& chain, const Vector& g);

struct TruncatedChainConfig {
  int half_width = 200;  ///< states -N..N
  double epsilon = 0.1;
  /// First index using a_i = 1 - (3 + (1+eps)/log i)/i; 0 selects every i
  /// where the formula lies in [1/2, 1).
  int formula_start = 0;
  double alpha = 1.0;  ///< weight of f1
  double beta = 0.0;   ///< weight of f2
};

/// a_0..a_{N-1} for the return-to-zero chain.
Vector transition_schedule(int half_width, double epsilon, int formula_start = 0);

/// Return-to-zero chain on -N..N: from 0 move to +1 or -1 with probability
/// 1/2; from +-y (0 < |y| < N) move outward with probability a_|y| or back to
/// 0; the boundary states +-N return to 0.
struct TruncatedChain {
  int half_width = 0;
  Vector a;
  double alpha = 1.0;
  double beta = 0.0;
  Vector f1;
  Vector f2;
  FiniteChain chain;

  Index index_of(int state) const { return state + half_width; }
};

TruncatedChain make_truncated_chain(const TruncatedChainConfig& config);
TruncatedChain make_truncated_chain(int half_width, const Vector& a, double alpha = 1.0,
                                    double beta = 0.0);

/// Transition matrix of the return-to-zero chain (no observable attached).
Matrix truncated_chain_kernel(int half_width, const Vector& a);

// ---------------------------------------------------------------------------
// Unified model
// ---------------------------------------------------------------------------

/// Strictly stationary, unit-variance martingale difference generator.
class MartingaleModel {
 public:
  enum class Kind { Iid, Arch, MarkovFunctional };

  static MartingaleModel iid(const InnovationLaw& law);
  static MartingaleModel arch(const ArchModel& model);
  /// Throws InvalidInput when the observable is not centered under pi.
  static MartingaleModel markov(const FiniteChain& chain);

  Kind kind() const noexcept { return static_cast<Kind>(variant_.index()); }
  double scale() const noexcept { return scale_; }
  std::string name() const;

  const InnovationLaw& innovation() const { return std::get<InnovationLaw>(variant_); }
  const ArchModel& arch_model() const { return std::get<ArchModel>(variant_); }
  const FiniteChain& chain() const { return std::get<FiniteChain>(variant_); }

  /// Fills `out` with a stationary path X_1..X_n.
  void simulate_into(Eigen::Ref<Vector> out, Stream& rng) const;

 private:
  using Variant = std::variant<InnovationLaw, ArchModel, FiniteChain>;
  MartingaleModel(Variant v, double scale) : variant_(std::move(v)), scale_(scale) {}

  Variant variant_;
  double scale_;
};

/// Stationary unit-variance path of length n (n >= 1).
Vector simulate_path(const MartingaleModel& model, Index n, Stream& rng);

// ---------------------------------------------------------------------------
// Moment tables
// ---------------------------------------------------------------------------

enum class MomentMethod { Exact, MonteCarlo };

/// a(u) = E(X_0 X_u^2) and Cov(X_0^2, X_u^2) for u = 0..horizon.
struct MomentTable {
  Vector a;       ///< a(0) = E X_0^3
  Vector cov_sq;  ///< cov_sq(0) = Var X_0^2
  double second = 1.0;

  Index horizon() const { return a.size() - 1; }
  double third() const { return a[0]; }
};

/// Exact tables are available for Iid and MarkovFunctional models (computed
/// from pi and kernel powers); requesting one for Arch throws
/// UnsupportedMethod. Monte Carlo uses one stationary path of `mc_length`.
MomentTable moment_table(const MartingaleModel& model, Index umax, MomentMethod method,
                         Stream& rng, Index mc_length = 1'000'000);

}  // namespace mdproj
