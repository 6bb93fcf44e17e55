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
#include <span>
#include <string>

#include "mdproj/processes.hpp"
#include "mdproj/sphere_geometry.hpp"

namespace mdproj {

enum class KappaMethod { Empirical, CfInversion };

std::string to_string(KappaMethod method);

/// Kolmogorov distance to N(0, 1).
///
/// Monte Carlo estimators report the DKW-scale proxy 1 / (2 sqrt(m)) as `se`;
/// it bounds the resolution of the estimate and is not an asymptotic
/// variance. The plain statistic and deterministic methods report se = 0.
struct KappaEstimate {
  double value = 0.0;
  double se = 0.0;
  KappaMethod method = KappaMethod::Empirical;
  Index sample_size = 0;
};

/// Exact one-sample Kolmogorov-Smirnov statistic against the standard normal.
/// Throws EmptySample / InvalidSample (NaN).
KappaEstimate kolmogorov_vs_normal(std::span<const double> samples);
inline KappaEstimate kolmogorov_vs_normal(const Vector& samples) {
  return kolmogorov_vs_normal(std::span<const double>(samples.data(), samples.size()));
}

/// Settings for characteristic-function inversion.
struct CfGrid {
  double t_max = 0.0;         ///< 0: adaptive stopping (see CfInversion)
  Index n_t = 0;              ///< with t_max > 0 fixes the step t_max / n_t
  double decay_tol = 1e-12;
  Index decay_window = 32;    ///< consecutive nodes below decay_tol required
  /// Discrete laws never decay: the march also stops at core_multiple times
  /// the Gaussian reach sqrt(2 log(1 / decay_tol)) / |w|.
  double core_multiple = 4.0;
  /// Max |phi| over the second half of the march above this means a lattice.
  double residual_tol = 0.5;
  double t_cap = 1e4;
  double x_min = -8.0;
  double x_max = 8.0;
  Index x_points = 4096;
  Index enumeration_limit = 20;  ///< discrete laws up to this n are enumerated
  std::string rule = "gil-pelaez-trapezoid";
};

/// CDF of S = sum_j w_j eta_j (eta_j iid, normalized to unit variance)
/// recovered from the product characteristic function by the trapezoidal
/// Gil-Pelaez rule
///   F(x) = 1/2 + h x / (2 pi) - (1/pi) sum_k Im(phi(k h) e^{-i k h x}) / k.
/// The step h is set from a sub-Gaussian tail bound so that aliasing stays
/// below 1e-14 on the x window. For a discrete law the truncated series is a
/// smoothed CDF; its error is governed by the atom masses, not by how far the
/// march runs (about 1e-5 at n = 24 and below 1e-6 from n = 32 for
/// Rademacher sums on generic directions).
class CfInversion {
 public:
  CfInversion(const Vector& weights, const InnovationLaw& law, const CfGrid& grid = {});

  double cdf(double x) const;
  std::complex<double> cf(double t) const;

  double step() const noexcept { return step_; }
  double t_max() const noexcept { return step_ * static_cast<double>(phi_.size()); }
  Index nodes() const noexcept { return static_cast<Index>(phi_.size()); }

 private:
  Vector weights_;
  InnovationLaw law_;
  double scale_;
  double step_ = 0.0;
  std::vector<std::complex<double>> phi_;  // phi(k h), k = 1..K
};

/// Exact distribution of sum_j w_j eta_j for a discrete innovation by
/// enumeration of all 2^n outcomes (n <= 24). Returns sup |F - Phi|.
double enumerated_kolmogorov(const Vector& weights, const InnovationLaw& law);

/// kappa_theta for conditionally iid projections, deterministic.
/// Discrete laws with n <= grid.enumeration_limit are enumerated exactly;
/// otherwise the CDF is inverted and the sup is taken over the x grid,
/// refined by golden-section search. Throws AccuracyError when |phi| keeps
/// returning above grid.residual_tol (lattice-like sums).
KappaEstimate cf_product_kolmogorov(const Vector& weights, const InnovationLaw& law,
                                    const CfGrid& grid = {});
inline KappaEstimate cf_product_kolmogorov(const SphereVector& theta, const InnovationLaw& law,
                                           const CfGrid& grid = {}) {
  return cf_product_kolmogorov(theta.coords(), law, grid);
}

/// Monte Carlo kappa_theta at a fixed direction: `paths` independent paths
/// projected on theta (or on A theta / |A theta| when centered). Path r uses
/// the stream derive_seed(seed, n, r, Paths).
KappaEstimate conditional_kappa_mc(const MartingaleModel& model, const SphereVector& theta,
                                   Index paths, std::uint64_t seed, bool centered,
                                   int threads = 1);

struct KappaOptions {
  KappaMethod method = KappaMethod::CfInversion;
  Index paths = 10000;  ///< R_X for the empirical method
  CfGrid grid{};
  bool centered = false;
  int threads = 1;
};

struct ExpectedKappa {
  double mean = 0.0;
  double se = 0.0;
  Index replicates = 0;
};

/// Average of kappa_theta over fresh uniform directions (R_theta >= 10).
/// Direction r is drawn from derive_seed(master_seed, n, r, Theta); the
/// cf method requires an iid model.
ExpectedKappa expected_kappa(const MartingaleModel& model, Index n, Index r_theta,
                             const KappaOptions& options, std::uint64_t master_seed);

/// int_0^T0 |phi_S(t) - exp(-t^2/2)| dt / t with the exact product
/// characteristic function (composite Simpson, `intervals` even).
double cf_distance_integral(const Vector& weights, const InnovationLaw& law, double t0,
                            Index intervals = 2048);

/// Same integral with the empirical characteristic function of `paths`
/// projected model paths.
double cf_distance_integral(const MartingaleModel& model, const Vector& weights, double t0,
                            Index paths, std::uint64_t seed, int threads = 1,
                            Index intervals = 2048);

}  // namespace mdproj
