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

#include "mdproj/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "mdproj/normal.hpp"
#include "mdproj/parallel.hpp"

namespace mdproj {

std::string to_string(KappaMethod method) {
  return method == KappaMethod::Empirical ? "empirical" : "cf";
}

KappaEstimate kolmogorov_vs_normal(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::EmptySample, "kolmogorov_vs_normal: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  for (double v : sorted) {
    if (std::isnan(v)) throw Error(ErrorCode::InvalidSample, "kolmogorov_vs_normal: NaN sample");
  }
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = normal_cdf(sorted[i]);
    sup = std::max({sup, std::abs(double(i + 1) / m - phi), std::abs(double(i) / m - phi)});
  }
  KappaEstimate est;
  est.value = std::min(sup, 1.0);
  est.se = 0.0;
  est.method = KappaMethod::Empirical;
  est.sample_size = static_cast<Index>(sorted.size());
  return est;
}

namespace {

// Variance proxy v with P(|S| > u) <= 2 exp(-u^2 / (2 v)).
double subgaussian_proxy(const Vector& weights, const InnovationLaw& law, double scale) {
  const double w2 = weights.squaredNorm() * scale * scale;
  switch (law.kind()) {
    case InnovationLaw::Kind::Gaussian: return w2;
    case InnovationLaw::Kind::Rademacher: return w2;  // Hoeffding, range 2
    case InnovationLaw::Kind::TwoPoint: {
      const double range = law.two_point_law().m - law.two_point_law().m_prime;
      return w2 * range * range / 4.0;
    }
  }
  return w2;
}

}  // namespace

CfInversion::CfInversion(const Vector& weights, const InnovationLaw& law, const CfGrid& grid)
    : weights_(weights), law_(law), scale_(1.0 / std::sqrt(law.variance())) {
  if (weights_.size() < 1) throw Error(ErrorCode::InvalidDimension, "cf inversion: empty weights");
  if (grid.t_max > 0.0 && grid.n_t > 0) {
    if (grid.n_t < 64) throw Error(ErrorCode::InvalidInput, "cf inversion: n_t must be >= 64");
    step_ = grid.t_max / static_cast<double>(grid.n_t);
    phi_.reserve(grid.n_t);
    for (Index k = 1; k <= grid.n_t; ++k) phi_.push_back(cf(step_ * double(k)));
    return;
  }

  const double proxy = subgaussian_proxy(weights_, law_, scale_);
  const double tail = std::sqrt(2.0 * proxy * std::log(2.0 / 1e-14));
  const double window = std::max(std::abs(grid.x_min), std::abs(grid.x_max));
  step_ = 2.0 * std::numbers::pi / (tail + window + 1.0);

  const double spread = weights_.norm() * scale_;
  const double reach = std::sqrt(2.0 * std::log(1.0 / grid.decay_tol)) / spread;
  const double core = std::min(grid.core_multiple * reach, grid.t_cap);
  const double limit = grid.t_max > 0.0 ? grid.t_max : core;
  Index below = 0;
  for (Index k = 1;; ++k) {
    const double t = step_ * double(k);
    if (t > limit) break;
    const std::complex<double> value = cf(t);
    phi_.push_back(value);
    below = std::abs(value) < grid.decay_tol ? below + 1 : 0;
    if (grid.t_max <= 0.0 && below >= grid.decay_window) return;
  }
  if (grid.t_max > 0.0) return;
  double residual = 0.0;
  for (std::size_t i = phi_.size() / 2; i < phi_.size(); ++i) {
    residual = std::max(residual, std::abs(phi_[i]));
  }
  if (residual > grid.residual_tol) {
    throw AccuracyError("cf inversion: |phi| returns to " + std::to_string(residual) +
                            " near t = " + std::to_string(limit) + " (lattice-like sum)",
                        residual);
  }
}

std::complex<double> CfInversion::cf(double t) const {
  std::complex<double> prod(1.0, 0.0);
  switch (law_.kind()) {
    case InnovationLaw::Kind::Gaussian: {
      const double s2 = weights_.squaredNorm() * scale_ * scale_;
      return {std::exp(-0.5 * s2 * t * t), 0.0};
    }
    case InnovationLaw::Kind::Rademacher: {
      double p = 1.0;
      for (Index j = 0; j < weights_.size(); ++j) p *= std::cos(weights_[j] * scale_ * t);
      return {p, 0.0};
    }
    case InnovationLaw::Kind::TwoPoint:
      for (Index j = 0; j < weights_.size(); ++j) prod *= law_.cf(weights_[j] * scale_ * t);
      return prod;
  }
  return prod;
}

double CfInversion::cdf(double x) const {
  const std::complex<double> rot = std::polar(1.0, -step_ * x);
  std::complex<double> z(1.0, 0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < phi_.size(); ++k) {
    z *= rot;
    acc += (phi_[k] * z).imag() / static_cast<double>(k + 1);
  }
  return 0.5 + step_ * x / (2.0 * std::numbers::pi) - acc / std::numbers::pi;
}

double enumerated_kolmogorov(const Vector& weights, const InnovationLaw& law) {
  if (!law.is_discrete()) {
    throw Error(ErrorCode::UnsupportedCf, "enumeration requires a discrete innovation law");
  }
  const Index n = weights.size();
  if (n < 1 || n > 24) throw Error(ErrorCode::InvalidDimension, "enumeration: need 1 <= n <= 24");
  const double scale = 1.0 / std::sqrt(law.variance());
  double hi = 1.0, lo = -1.0, p_hi = 0.5, p_lo = 0.5;
  if (law.kind() == InnovationLaw::Kind::TwoPoint) {
    hi = law.two_point_law().m;
    lo = law.two_point_law().m_prime;
    p_hi = law.two_point_law().t;
    p_lo = law.two_point_law().t_prime;
  }

  std::vector<std::pair<double, double>> atoms{{0.0, 1.0}};
  atoms.reserve(std::size_t(1) << n);
  for (Index j = 0; j < n; ++j) {
    const double w = weights[j] * scale;
    const std::size_t size = atoms.size();
    for (std::size_t i = 0; i < size; ++i) {
      const auto [value, prob] = atoms[i];
      atoms[i] = {value + w * hi, prob * p_hi};
      atoms.emplace_back(value + w * lo, prob * p_lo);
    }
  }
  std::sort(atoms.begin(), atoms.end());

  double cumulative = 0.0;
  double sup = 0.0;
  for (const auto& [value, prob] : atoms) {
    const double phi = normal_cdf(value);
    const double before = cumulative;
    cumulative += prob;
    sup = std::max({sup, std::abs(before - phi), std::abs(cumulative - phi)});
  }
  return std::min(sup, 1.0);
}

KappaEstimate cf_product_kolmogorov(const Vector& weights, const InnovationLaw& law,
                                    const CfGrid& grid) {
  KappaEstimate est;
  est.method = KappaMethod::CfInversion;
  est.se = 0.0;
  est.sample_size = 0;
  if (law.is_discrete() && weights.size() <= grid.enumeration_limit) {
    est.value = enumerated_kolmogorov(weights, law);
    return est;
  }
  if (grid.x_points < 3 || !(grid.x_max > grid.x_min)) {
    throw Error(ErrorCode::InvalidInput, "cf_product_kolmogorov: bad x grid");
  }

  const CfInversion inversion(weights, law, grid);
  auto gap = [&](double x) { return std::abs(inversion.cdf(x) - normal_cdf(x)); };

  const double dx = (grid.x_max - grid.x_min) / double(grid.x_points - 1);
  Index best = 0;
  double best_gap = -1.0;
  for (Index i = 0; i < grid.x_points; ++i) {
    const double g = gap(grid.x_min + dx * double(i));
    if (g > best_gap) {
      best_gap = g;
      best = i;
    }
  }

  // Golden-section refinement around the coarse maximizer.
  double a = grid.x_min + dx * double(std::max<Index>(best - 1, 0));
  double b = grid.x_min + dx * double(std::min<Index>(best + 1, grid.x_points - 1));
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double gc = gap(c), gd = gap(d);
  for (int iter = 0; iter < 40; ++iter) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - ratio * (b - a);
      gc = gap(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + ratio * (b - a);
      gd = gap(d);
    }
  }
  est.value = std::clamp(std::max({best_gap, gc, gd}), 0.0, 1.0);
  return est;
}

namespace {

Vector projection_weights(const SphereVector& theta, bool centered) {
  return centered ? centered_weights(theta).theta_star : theta.coords();
}

std::vector<double> projected_paths(const MartingaleModel& model, const Vector& weights,
                                    Index paths, std::uint64_t seed, int threads) {
  const Index n = weights.size();
  std::vector<double> values(static_cast<std::size_t>(paths));
  const int workers = resolve_threads(threads);
  const std::size_t chunk = 256;
  const std::size_t chunks = (values.size() + chunk - 1) / chunk;
  parallel_for(chunks, workers, [&](std::size_t c) {
    Vector path(n);
    const std::size_t end = std::min(values.size(), (c + 1) * chunk);
    for (std::size_t r = c * chunk; r < end; ++r) {
      Stream rng(derive_seed(seed, static_cast<std::uint64_t>(n), r, StreamRole::Paths));
      model.simulate_into(path, rng);
      values[r] = path.dot(weights);
    }
  });
  return values;
}

}  // namespace

KappaEstimate conditional_kappa_mc(const MartingaleModel& model, const SphereVector& theta,
                                   Index paths, std::uint64_t seed, bool centered, int threads) {
  if (paths < 100) throw Error(ErrorCode::InvalidInput, "conditional_kappa_mc: need >= 100 paths");
  const Vector weights = projection_weights(theta, centered);
  const std::vector<double> values = projected_paths(model, weights, paths, seed, threads);
  KappaEstimate est = kolmogorov_vs_normal(std::span<const double>(values));
  est.se = 1.0 / (2.0 * std::sqrt(double(paths)));
  return est;
}

ExpectedKappa expected_kappa(const MartingaleModel& model, Index n, Index r_theta,
                             const KappaOptions& options, std::uint64_t master_seed) {
  if (r_theta < 10) throw Error(ErrorCode::InvalidInput, "expected_kappa: need R_theta >= 10");
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "expected_kappa: n must be >= 1");
  if (options.centered && n < 2) {
    throw Error(ErrorCode::InvalidDimension, "expected_kappa: centered projection needs n >= 2");
  }
  if (options.method == KappaMethod::CfInversion &&
      model.kind() != MartingaleModel::Kind::Iid) {
    throw Error(ErrorCode::UnsupportedCf,
                "expected_kappa: the cf method needs an iid model, got " + model.name());
  }

  std::vector<double> kappas(static_cast<std::size_t>(r_theta));
  const auto un = static_cast<std::uint64_t>(n);
  parallel_for(kappas.size(), resolve_threads(options.threads), [&](std::size_t r) {
    Stream rng(derive_seed(master_seed, un, r, StreamRole::Theta));
    SphereVector theta = sample_uniform_sphere(n, rng);
    Vector weights;
    for (;;) {
      try {
        weights = projection_weights(theta, options.centered);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateDirection) throw;
        theta = sample_uniform_sphere(n, rng);
      }
    }
    if (options.method == KappaMethod::CfInversion) {
      kappas[r] = cf_product_kolmogorov(weights, model.innovation(), options.grid).value;
    } else {
      if (options.paths < 100) {
        throw Error(ErrorCode::InvalidInput, "expected_kappa: need R_X >= 100");
      }
      const std::uint64_t path_seed = derive_seed(master_seed, un, r, StreamRole::Paths);
      const std::vector<double> values = projected_paths(model, weights, options.paths, path_seed, 1);
      kappas[r] = kolmogorov_vs_normal(std::span<const double>(values)).value;
    }
  });

  ExpectedKappa out;
  out.replicates = r_theta;
  const double m = static_cast<double>(r_theta);
  out.mean = std::accumulate(kappas.begin(), kappas.end(), 0.0) / m;
  double ss = 0.0;
  for (double k : kappas) ss += (k - out.mean) * (k - out.mean);
  out.se = std::sqrt(ss / (m - 1.0) / m);
  return out;
}

namespace {

template <typename Integrand>
double simpson(Integrand&& g, double t0, Index intervals) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw Error(ErrorCode::InvalidInput, "cf_distance_integral: intervals must be even and >= 2");
  }
  const double h = t0 / double(intervals);
  double acc = g(0.0) + g(t0);
  for (Index i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(h * double(i));
  const double value = acc * h / 3.0;
  if (!std::isfinite(value)) {
    throw AccuracyError("cf_distance_integral: quadrature produced a non-finite value", value);
  }
  return value;
}

}  // namespace

double cf_distance_integral(const Vector& weights, const InnovationLaw& law, double t0,
                            Index intervals) {
  if (!(t0 >= 1.0)) throw Error(ErrorCode::InvalidInput, "cf_distance_integral: T0 must be >= 1");
  CfGrid grid;
  grid.t_max = t0;
  grid.n_t = 64;
  const CfInversion product(weights, law, grid);
  return simpson(
      [&](double t) {
        // Both characteristic functions are 1 - t^2/2 + O(t^3) near 0.
        if (t == 0.0) return 0.0;
        return std::abs(product.cf(t) - std::exp(-0.5 * t * t)) / t;
      },
      t0, intervals);
}

double cf_distance_integral(const MartingaleModel& model, const Vector& weights, double t0,
                            Index paths, std::uint64_t seed, int threads, Index intervals) {
  if (!(t0 >= 1.0)) throw Error(ErrorCode::InvalidInput, "cf_distance_integral: T0 must be >= 1");
  if (paths < 1) throw Error(ErrorCode::InvalidInput, "cf_distance_integral: need paths >= 1");
  const std::vector<double> values = projected_paths(model, weights, paths, seed, threads);
  const double m = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / m;
  return simpson(
      [&](double t) {
        // Empirical cf = 1 + i t mean(S) + O(t^2): the integrand tends to |mean(S)|.
        if (t == 0.0) return std::abs(mean);
        std::complex<double> acc(0.0, 0.0);
        for (double s : values) acc += std::polar(1.0, t * s);
        return std::abs(acc / m - std::exp(-0.5 * t * t)) / t;
      },
      t0, intervals);
}

}  // namespace mdproj
