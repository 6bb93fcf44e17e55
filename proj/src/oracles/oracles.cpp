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

#include "mdproj/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "mdproj/sphere_geometry.hpp"
#include "mdproj/two_point.hpp"

namespace mdproj::oracle {

void for_each_path(const Matrix& kernel, Index start, Index steps,
                   const std::function<void(const std::vector<Index>&, double)>& fn) {
  std::vector<Index> path(static_cast<std::size_t>(steps + 1));
  path[0] = start;
  std::function<void(Index, double)> extend = [&](Index depth, double weight) {
    if (depth == steps) {
      fn(path, weight);
      return;
    }
    const Index from = path[depth];
    for (Index to = 0; to < kernel.cols(); ++to) {
      const double p = kernel(from, to);
      if (p == 0.0) continue;
      path[depth + 1] = to;
      extend(depth + 1, weight * p);
    }
  };
  extend(0, 1.0);
}

GammaProfile gamma_by_paths(const FiniteChain& chain, Index vmax, Index ell_max) {
  const Matrix& k = chain.kernel();
  const RowVector& pi = chain.pi();
  const Vector x = chain.observable();
  const Index s = chain.states();

  double mean_x2 = 0.0;
  for (Index y = 0; y < s; ++y) mean_x2 += pi[y] * x[y] * x[y];

  // E(X_v^2 | Y_0 = y) by summing over paths.
  auto cond_x2 = [&](Index y, Index v) {
    double total = 0.0;
    for_each_path(k, y, v, [&](const std::vector<Index>& p, double w) {
      total += w * x[p.back()] * x[p.back()];
    });
    return total;
  };

  GammaProfile out;
  out.ell_max = ell_max;
  for (auto* g : {&out.g02, &out.g12, &out.g22, &out.g13, &out.gamma}) g->setZero(vmax);
  out.ell_arg22.assign(vmax, 0);
  out.ell_arg13.assign(vmax, 0);

  for (Index v = 1; v <= vmax; ++v) {
    double g02 = 0.0, g12 = 0.0;
    for (Index y = 0; y < s; ++y) {
      const double dev = std::abs(cond_x2(y, v) - mean_x2);
      g02 += pi[y] * dev;
      g12 += pi[y] * std::abs(x[y]) * dev;
    }

    double g22 = -1.0;
    for (Index l = 0; l <= ell_max; ++l) {
      double total = 0.0;
      for (Index y = 0; y < s; ++y) {
        for_each_path(k, y, l, [&](const std::vector<Index>& p, double w) {
          const Index z = p.back();
          total += pi[y] * w *
                   std::abs(x[y] * x[z] * (cond_x2(z, v) - mean_x2));
        });
      }
      if (total > g22) {
        g22 = total;
        out.ell_arg22[v - 1] = l;
      }
    }

    double g13 = -1.0;
    for (Index l = 0; l <= ell_max; ++l) {
      std::vector<double> cond(static_cast<std::size_t>(s), 0.0);
      double mean = 0.0;
      for (Index y = 0; y < s; ++y) {
        for_each_path(k, y, v + l, [&](const std::vector<Index>& p, double w) {
          const double end = x[p.back()];
          cond[y] += w * x[p[v]] * end * end;
        });
        mean += pi[y] * cond[y];
      }
      double total = 0.0;
      for (Index y = 0; y < s; ++y) total += pi[y] * std::abs(x[y] * (cond[y] - mean));
      if (total > g13) {
        g13 = total;
        out.ell_arg13[v - 1] = l;
      }
    }

    out.g02[v - 1] = g02;
    out.g12[v - 1] = g12;
    out.g22[v - 1] = g22;
    out.g13[v - 1] = g13;
    out.gamma[v - 1] = std::max(std::max(g02, g12), std::max(g22, g13));
  }
  out.notes = "path enumeration";
  return out;
}

BetaMoments beta_moments_direct(const Vector& weights, const MomentTable& table) {
  const Index n = weights.size();
  BetaMoments out;
  out.beta3.setZero(n);
  out.beta4.setZero(n);
  for (Index k = 0; k < n; ++k) {
    const double tk = weights[k];
    double cross = 0.0;
    for (Index l = 0; l < k; ++l) cross += weights[l] * table.a[k - l];
    out.beta3[k] = tk * tk * tk * table.a[0] + 3.0 * tk * tk * cross;
    if (tk != 0.0) {
      out.beta4[k] = tk * tk * tk * tk + out.beta3[k] * out.beta3[k] / (tk * tk);
    }
  }
  return out;
}

RowVector return_to_zero_pi(int half_width, const Vector& a) {
  const Index size = 2 * half_width + 1;
  RowVector pi = RowVector::Zero(size);
  pi[half_width] = 1.0;
  double mass = 0.5;
  for (int y = 1; y <= half_width; ++y) {
    if (y > 1) mass *= a[y - 1];
    pi[half_width + y] = mass;
    pi[half_width - y] = mass;
  }
  return pi / pi.sum();
}

double two_atom_moment(double m, double m_prime, double t, int k) {
  return t * std::pow(m, k) + (1.0 - t) * std::pow(m_prime, k);
}

std::vector<std::pair<double, double>> moment_grid() {
  std::vector<std::pair<double, double>> grid;
  for (int i = 0; i < 10; ++i) {
    const double sigma2 = 0.1 + (10.0 - 0.1) * i / 9.0;
    for (int j = 0; j < 20; ++j) grid.emplace_back(sigma2, -5.0 + 10.0 * j / 19.0);
  }
  return grid;
}

std::vector<FiniteChain> toy_chains() {
  std::vector<FiniteChain> chains;
  // Two-state flip chain with an odd observable.
  {
    Matrix k(2, 2);
    k << 0.3, 0.7, 0.6, 0.4;
    Vector f(2);
    f << 1.0, -2.0;
    chains.emplace_back(k, f);
  }
  // Rows equal to a common law: conditional moments never depend on the past.
  {
    Matrix k(3, 3);
    k.rowwise() = RowVector::Map(std::vector<double>{0.2, 0.5, 0.3}.data(), 3);
    Vector f(3);
    f << -1.0, 0.5, 2.0;
    chains.emplace_back(k, f);
  }
  // Small return-to-zero chain.
  {
    Vector a(2);
    a << 0.5, 0.7;
    chains.push_back(make_truncated_chain(2, a).chain);
  }
  // Pseudo-random dense chains of size 3 and 4.
  Stream rng(20240917);
  for (Index s : {3, 3, 4, 4}) {
    Matrix k(s, s);
    for (Index i = 0; i < s; ++i) {
      for (Index j = 0; j < s; ++j) k(i, j) = 0.05 + rng.uniform();
      k.row(i) /= k.row(i).sum();
    }
    Vector f(s);
    for (Index i = 0; i < s; ++i) f[i] = 2.0 * rng.uniform() - 1.0;
    chains.emplace_back(k, f);
  }
  return chains;
}

namespace {

void record(SuiteResult& r, double error) {
  ++r.checks;
  if (!(error <= r.tolerance)) ++r.failures;
  if (std::isnan(error) || error > r.max_error) r.max_error = error;
}

}  // namespace

SuiteResult moment_match_suite() {
  SuiteResult r{"moment-match grid", 0, 0, 0.0, 1e-10};
  for (const auto& [sigma2, beta3] : moment_grid()) {
    const TwoPointLaw law = two_point_from_moments(sigma2, beta3);
    const double sd = std::sqrt(sigma2);
    const double targets[4] = {0.0, sigma2, beta3, sigma2 * sigma2 + beta3 * beta3 / sigma2};
    for (int k = 1; k <= 4; ++k) {
      const double got = two_atom_moment(law.m, law.m_prime, law.t, k);
      const double scale = std::max(std::abs(targets[k - 1]), std::pow(sd, k));
      record(r, std::abs(got - targets[k - 1]) / scale);
    }
    if (!(law.t > 0.0 && law.t < 1.0 && law.m > 0.0 && law.m_prime < 0.0)) {
      ++r.checks;
      ++r.failures;
    }
  }
  return r;
}

SuiteResult gamma_toy_suite() {
  SuiteResult r{"gamma on toy chains", 0, 0, 0.0, 1e-10};
  for (const FiniteChain& chain : toy_chains()) {
    const GammaProfile fast = gamma_exact_markov(chain, 4, 3);
    const GammaProfile slow = gamma_by_paths(chain, 4, 3);
    for (Index v = 0; v < 4; ++v) {
      record(r, std::abs(fast.g02[v] - slow.g02[v]));
      record(r, std::abs(fast.g12[v] - slow.g12[v]));
      record(r, std::abs(fast.g22[v] - slow.g22[v]));
      record(r, std::abs(fast.g13[v] - slow.g13[v]));
      record(r, std::abs(fast.gamma[v] - slow.gamma[v]));
    }
  }
  return r;
}

SuiteResult helmert_orthonormality_suite(const std::vector<Index>& sizes) {
  SuiteResult r{"Helmert orthonormality", 0, 0, 0.0, 1e-12};
  for (Index n : sizes) {
    const Matrix b = helmert_basis(n);
    const Matrix gram = b * b.transpose();
    record(r, (gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
  }
  return r;
}

SuiteResult helmert_identity_suite(Index instances, std::uint64_t seed) {
  SuiteResult r{"Helmert projection identities", 0, 0, 0.0, 1e-10};
  Stream rng(seed);
  for (Index i = 0; i < instances; ++i) {
    const Index n = 2 + static_cast<Index>(rng.uniform() * 200.0);
    const SphereVector theta = sample_uniform_sphere(n, rng);
    Vector x(n);
    for (Index j = 0; j < n; ++j) x[j] = rng.normal();

    // <A theta, A X> against the first n-1 Helmert coordinates.
    const Matrix b = helmert_basis(n);
    const Vector bt = b * theta.coords();
    const Vector bx = b * x;
    const Vector at = theta.coords().array() - theta.coords().mean();
    const Vector ax = x.array() - x.mean();
    record(r, std::abs(at.dot(ax) - bt.head(n - 1).dot(bx.head(n - 1))));

    // sum theta_hat_k X*_k = sum theta*_l X_l = <X, A theta / |A theta|>.
    const CenteredWeights w = centered_weights(theta);
    const Vector xs = x_star(x);
    const double direct = x.dot(at) / at.norm();
    record(r, std::abs(w.theta_hat.dot(xs) - direct));
    record(r, std::abs(w.theta_star.dot(x) - direct));
  }
  return r;
}

SuiteResult beta_moments_suite(Index instances, std::uint64_t seed) {
  SuiteResult r{"beta moments vs double loop", 0, 0, 0.0, 1e-12};
  Stream rng(seed);
  for (Index i = 0; i < instances; ++i) {
    const Index n = 1 + static_cast<Index>(rng.uniform() * 8.0);
    Vector w(n);
    for (Index j = 0; j < n; ++j) w[j] = rng.normal();
    if (i % 5 == 0) w[n / 2] = 0.0;
    MomentTable table;
    table.a.resize(n);
    table.cov_sq.setZero(n);
    for (Index u = 0; u < n; ++u) table.a[u] = rng.normal();
    const BetaMoments fast = beta_moments(w, table);
    const BetaMoments slow = beta_moments_direct(w, table);
    for (Index k = 0; k < n; ++k) {
      record(r, std::abs(fast.beta3[k] - slow.beta3[k]) / std::max(1.0, std::abs(slow.beta3[k])));
      record(r, std::abs(fast.beta4[k] - slow.beta4[k]) / std::max(1.0, std::abs(slow.beta4[k])));
    }
  }
  return r;
}

SuiteResult stationary_suite() {
  SuiteResult r{"stationary law vs product form", 0, 0, 0.0, 1e-12};
  for (int half_width : {2, 5, 20, 200}) {
    for (double epsilon : {0.1, 0.5}) {
      const Vector a = transition_schedule(half_width, epsilon);
      const TruncatedChain chain = make_truncated_chain(half_width, a);
      const RowVector expected = return_to_zero_pi(half_width, a);
      record(r, (chain.chain.pi() - expected).cwiseAbs().maxCoeff());
    }
  }
  return r;
}

}  // namespace mdproj::oracle
