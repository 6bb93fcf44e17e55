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

#include <cstdint>
#include <string>
#include <vector>

#include "mdproj/processes.hpp"

namespace mdproj {

/// Weak-dependence coefficients for lags v = 1..vmax (entry v - 1):
///   g02(v) = || E_0(X_v^2) - E X_v^2 ||_1
///   g12(v) = || X_0 (E_0(X_v^2) - E X_v^2) ||_1
///   g22(v) = sup_l || X_0 X_l (E_l(X_{v+l}^2) - E X_{v+l}^2) ||_1
///   g13(v) = sup_l || X_0 (E_0(X_v X_{v+l}^2) - E(X_v X_{v+l}^2)) ||_1
/// and gamma(v) = max of the four. The suprema run over l = 0..ell_max; the
/// attained l is kept in ell_arg22 / ell_arg13.
struct GammaProfile {
  Vector g02, g12, g22, g13, gamma;
  std::vector<Index> ell_arg22, ell_arg13;
  Index ell_max = 0;
  /// Standard errors of Monte Carlo estimates; empty for exact profiles.
  Vector se02, se12, se22, se13;
  std::string notes;

  Index vmax() const { return gamma.size(); }
};

/// Partial sums sum_{k <= K} k * coefficient(k) for K = 1..grid end.
struct ConditionReport {
  std::vector<Index> grid;
  Vector partial_sums;
  /// Fitted decay exponent p of k * coefficient(k) ~ k^{-p} over the second
  /// half of the window (infinity when the terms vanish).
  double tail_exponent = 0.0;
  bool satisfied_estimate = false;
  std::string notes;
};

/// Exact coefficients of X = scale * f(Y) from pi and kernel powers, using the
/// chain's natural filtration. Throws Resource when the working set exceeds
/// `memory_budget` bytes.
GammaProfile gamma_exact_markov(const FiniteChain& chain, Index vmax, Index ell_max,
                                std::size_t memory_budget = std::size_t(1) << 30);

struct CouplingDelta {
  double delta_hat = 0.0;
  double se = 0.0;
};

/// delta_k = E|sigma_k^2 - sigma*_k^2| / v^2 for k = 0..kmax (entries 0 and 1
/// are unused and set to 0): sigma* is driven by an independent stationary
/// past up to time 0 and shares the innovations at times 1..k-1.
struct CouplingProfile {
  Vector delta;
  Vector se;
};

CouplingProfile coupling_delta_profile(const ArchModel& model, Index kmax, Index replicates,
                                       std::uint64_t seed, int threads = 1);

/// Single-lag form; requires k >= 2 and at least 100 replicates.
CouplingDelta coupling_delta_arch(const ArchModel& model, Index k, Index replicates,
                                  std::uint64_t seed, int threads = 1);

/// Monte Carlo majorants of the four coefficients from the same coupling,
/// e.g. g02(v) <= E|X_v^2 - X*_v^2| = delta_v. Estimates are upper bounds,
/// not the coefficients themselves.
GammaProfile gamma_mc_arch(const ArchModel& model, Index vmax, Index ell_max, Index replicates,
                           std::uint64_t seed, int threads = 1);

/// beta(n) = sum_y pi(y) TV(K^n(y, .), pi) for n = 1..nmax (entry n - 1).
Vector beta_mixing(const FiniteChain& chain, Index nmax);

/// Partial sums of k beta(k) |f|_inf^4 (normalized observable). beta(k)
/// bounds the strong-mixing coefficient from above and int_0^beta Q^4 <=
/// beta |f|_inf^4 for bounded f; the report says so in its notes.
ConditionReport mixing_condition_report(const FiniteChain& chain, Index nmax);

/// Partial sums of k gamma(k) with a tail-decay heuristic.
ConditionReport condition_report(const GammaProfile& profile);
ConditionReport condition_report(const Vector& coefficients);

}  // namespace mdproj
