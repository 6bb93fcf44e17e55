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

#include "mdproj/dependence.hpp"

#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mdproj/parallel.hpp"

namespace mdproj {

namespace {

using SparseKernel = Eigen::SparseMatrix<double, Eigen::RowMajor>;

void require(bool ok, ErrorCode code, const char* what) {
  if (!ok) throw Error(code, what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Exact coefficients for finite chains

GammaProfile gamma_exact_markov(const FiniteChain& chain, Index vmax, Index ell_max,
                                std::size_t memory_budget) {
  require(vmax >= 1 && ell_max >= 0, ErrorCode::InvalidInput,
          "gamma_exact_markov: need vmax >= 1 and ell_max >= 0");
  const Index s = chain.states();
  const double working = 8.0 * (double(s) * double(s) + double(ell_max + 1) * double(s) * 3.0 +
                                double(vmax) * 8.0);
  if (working > double(memory_budget)) {
    throw Error(ErrorCode::Resource, "gamma_exact_markov: working set of " +
                                         std::to_string(working) + " bytes exceeds the budget");
  }

  const SparseKernel kernel = chain.kernel().sparseView();
  const Vector pi = chain.pi().transpose();
  const Vector x = chain.observable();
  const Vector ax = x.cwiseAbs();
  const Vector x2 = x.cwiseAbs2();
  const double mean_x2 = pi.dot(x2);

  // Row vectors (pi |x|) K^l for the outer expectation of g22.
  std::vector<Vector> outer(static_cast<std::size_t>(ell_max + 1));
  outer[0] = pi.cwiseProduct(ax);
  for (Index l = 1; l <= ell_max; ++l) {
    outer[l] = (outer[l - 1].transpose() * kernel).transpose();
  }
  // h_l = x * K^l x^2 and their K^v images for g13.
  std::vector<Vector> h(static_cast<std::size_t>(ell_max + 1));
  std::vector<double> h_mean(h.size());
  Vector k_l_x2 = x2;
  for (Index l = 0; l <= ell_max; ++l) {
    if (l > 0) k_l_x2 = kernel * k_l_x2;
    h[l] = x.cwiseProduct(k_l_x2);
    h_mean[l] = pi.dot(h[l]);
  }
  const Vector weight_outer = pi.cwiseProduct(ax);

  GammaProfile profile;
  profile.ell_max = ell_max;
  profile.g02.resize(vmax);
  profile.g12.resize(vmax);
  profile.g22.resize(vmax);
  profile.g13.resize(vmax);
  profile.gamma.resize(vmax);
  profile.ell_arg22.assign(vmax, 0);
  profile.ell_arg13.assign(vmax, 0);

  Vector kv_x2 = x2;
  for (Index v = 1; v <= vmax; ++v) {
    kv_x2 = kernel * kv_x2;
    const Vector centered = (kv_x2.array() - mean_x2).abs().matrix();
    profile.g02[v - 1] = pi.dot(centered);
    profile.g12[v - 1] = weight_outer.dot(centered);

    const Vector inner = ax.cwiseProduct(centered);
    double best22 = -1.0;
    for (Index l = 0; l <= ell_max; ++l) {
      const double value = outer[l].dot(inner);
      if (value > best22) {
        best22 = value;
        profile.ell_arg22[v - 1] = l;
      }
    }
    profile.g22[v - 1] = best22;

    double best13 = -1.0;
    for (Index l = 0; l <= ell_max; ++l) {
      h[l] = kernel * h[l];  // now K^v h_l
      const double value = weight_outer.dot((h[l].array() - h_mean[l]).abs().matrix());
      if (value > best13) {
        best13 = value;
        profile.ell_arg13[v - 1] = l;
      }
    }
    profile.g13[v - 1] = best13;
    profile.gamma[v - 1] = std::max({profile.g02[v - 1], profile.g12[v - 1],
                                     profile.g22[v - 1], profile.g13[v - 1]});
  }
  profile.notes = "exact (kernel powers); suprema over l truncated at ell_max = " +
                  std::to_string(ell_max) + ", values are lower bounds of the full suprema";
  return profile;
}

// ---------------------------------------------------------------------------
// ARCH coupling

namespace {

constexpr std::size_t kBlock = 64;

struct CoupledRun {
  std::vector<double> past;    // past[l] = X_{-l} / v
  std::vector<double> x;       // x[t] = X_t / v, t = 1..horizon
  std::vector<double> x_star;  // coupled copy
  std::vector<double> diff;    // |sigma_t^2 - sigma*_t^2| / v^2
};

void coupled_run(const ArchModel& model, Index past_len, Index horizon, std::uint64_t seed,
                 std::uint64_t replicate, CoupledRun& out) {
  const double eta_scale = 1.0 / std::sqrt(model.innovation.variance());
  const double v2 = model.variance();
  const double v = std::sqrt(v2);
  Stream own(derive_seed(seed, 0, replicate, StreamRole::History));
  Stream other(derive_seed(seed, 1, replicate, StreamRole::History));
  Stream shared(derive_seed(seed, 0, replicate, StreamRole::Coupling));

  ArchState a(model);
  ArchState b(model);
  for (int i = 0; i < model.burn_in; ++i) a.step(eta_scale * model.innovation.sample(own));
  out.past.assign(static_cast<std::size_t>(past_len), 0.0);
  for (Index i = past_len - 1; i >= 0; --i) {
    out.past[i] = a.step(eta_scale * model.innovation.sample(own)) / v;
  }
  for (Index i = 0; i < model.burn_in + past_len; ++i) {
    b.step(eta_scale * model.innovation.sample(other));
  }

  out.x.assign(static_cast<std::size_t>(horizon + 1), 0.0);
  out.x_star.assign(out.x.size(), 0.0);
  out.diff.assign(out.x.size(), 0.0);
  for (Index t = 1; t <= horizon; ++t) {
    out.diff[t] = std::abs(a.sigma2() - b.sigma2()) / v2;
    const double eta = eta_scale * model.innovation.sample(shared);
    out.x[t] = a.step(eta) / v;
    out.x_star[t] = b.step(eta) / v;
  }
}

struct Moments {
  Vector sum;
  Vector sum_sq;

  explicit Moments(Index size) : sum(Vector::Zero(size)), sum_sq(Vector::Zero(size)) {}
  void add(Index i, double value) {
    sum[i] += value;
    sum_sq[i] += value * value;
  }
  void merge(const Moments& other) {
    sum += other.sum;
    sum_sq += other.sum_sq;
  }
};

// Replicates are split into fixed blocks; per-block sums are reduced in block
// order so the result does not depend on the worker count.
template <typename Accumulate>
Moments blocked_moments(Index replicates, Index size, int threads, Accumulate&& accumulate) {
  const std::size_t blocks = (static_cast<std::size_t>(replicates) + kBlock - 1) / kBlock;
  std::vector<Moments> partial(blocks, Moments(size));
  parallel_for(blocks, resolve_threads(threads), [&](std::size_t blk) {
    CoupledRun run;
    const std::size_t end = std::min<std::size_t>(replicates, (blk + 1) * kBlock);
    for (std::size_t r = blk * kBlock; r < end; ++r) accumulate(r, run, partial[blk]);
  });
  Moments total(size);
  for (const auto& p : partial) total.merge(p);
  return total;
}

double mean_of(const Moments& m, Index i, Index count) { return m.sum[i] / double(count); }

double se_of(const Moments& m, Index i, Index count) {
  const double n = double(count);
  const double mean = m.sum[i] / n;
  const double var = std::max(0.0, (m.sum_sq[i] - n * mean * mean) / (n - 1.0));
  return std::sqrt(var / n);
}

}  // namespace

CouplingProfile coupling_delta_profile(const ArchModel& model, Index kmax, Index replicates,
                                       std::uint64_t seed, int threads) {
  require(kmax >= 2, ErrorCode::InvalidInput, "coupling_delta: k must be >= 2");
  require(replicates >= 2, ErrorCode::InvalidInput, "coupling_delta: need >= 2 replicates");
  if (!(model.coeff_sum() < 1.0)) {
    throw Error(ErrorCode::NonStationaryModel, "coupling_delta: model is not stationary");
  }
  const Moments m = blocked_moments(replicates, kmax + 1, threads,
                                    [&](std::size_t r, CoupledRun& run, Moments& acc) {
                                      coupled_run(model, 0, kmax, seed, r, run);
                                      for (Index k = 2; k <= kmax; ++k) acc.add(k, run.diff[k]);
                                    });
  CouplingProfile out;
  out.delta = Vector::Zero(kmax + 1);
  out.se = Vector::Zero(kmax + 1);
  for (Index k = 2; k <= kmax; ++k) {
    out.delta[k] = mean_of(m, k, replicates);
    out.se[k] = se_of(m, k, replicates);
  }
  return out;
}

CouplingDelta coupling_delta_arch(const ArchModel& model, Index k, Index replicates,
                                  std::uint64_t seed, int threads) {
  require(replicates >= 100, ErrorCode::InvalidInput, "coupling_delta: need >= 100 replicates");
  const CouplingProfile profile = coupling_delta_profile(model, k, replicates, seed, threads);
  return {profile.delta[k], profile.se[k]};
}

GammaProfile gamma_mc_arch(const ArchModel& model, Index vmax, Index ell_max, Index replicates,
                           std::uint64_t seed, int threads) {
  require(vmax >= 1 && ell_max >= 0, ErrorCode::InvalidInput,
          "gamma_mc_arch: need vmax >= 1 and ell_max >= 0");
  require(replicates >= 2, ErrorCode::InvalidInput, "gamma_mc_arch: need >= 2 replicates");
  if (!(model.coeff_sum() < 1.0)) {
    throw Error(ErrorCode::NonStationaryModel, "gamma_mc_arch: model is not stationary");
  }
  const Index width = 2 + 2 * (ell_max + 1);  // g02, g12, g22_l..., g13_l...
  const Moments m = blocked_moments(
      replicates, vmax * width, threads, [&](std::size_t r, CoupledRun& run, Moments& acc) {
        coupled_run(model, ell_max + 1, vmax + ell_max, seed, r, run);
        const double x0 = std::abs(run.past[0]);
        for (Index v = 1; v <= vmax; ++v) {
          const Index base = (v - 1) * width;
          const double d = run.diff[v];
          acc.add(base, d);
          acc.add(base + 1, x0 * d);
          for (Index l = 0; l <= ell_max; ++l) {
            acc.add(base + 2 + l, std::abs(run.past[l]) * x0 * d);
            const double lhs = run.x[v] * run.x[v + l] * run.x[v + l];
            const double rhs = run.x_star[v] * run.x_star[v + l] * run.x_star[v + l];
            acc.add(base + 3 + ell_max + l, x0 * std::abs(lhs - rhs));
          }
        }
      });

  GammaProfile profile;
  profile.ell_max = ell_max;
  for (Vector* vec : {&profile.g02, &profile.g12, &profile.g22, &profile.g13, &profile.gamma,
                      &profile.se02, &profile.se12, &profile.se22, &profile.se13}) {
    vec->resize(vmax);
  }
  profile.ell_arg22.assign(vmax, 0);
  profile.ell_arg13.assign(vmax, 0);
  for (Index v = 1; v <= vmax; ++v) {
    const Index base = (v - 1) * width;
    profile.g02[v - 1] = mean_of(m, base, replicates);
    profile.se02[v - 1] = se_of(m, base, replicates);
    profile.g12[v - 1] = mean_of(m, base + 1, replicates);
    profile.se12[v - 1] = se_of(m, base + 1, replicates);
    double best22 = -1.0, best13 = -1.0;
    for (Index l = 0; l <= ell_max; ++l) {
      const double v22 = mean_of(m, base + 2 + l, replicates);
      if (v22 > best22) {
        best22 = v22;
        profile.ell_arg22[v - 1] = l;
        profile.se22[v - 1] = se_of(m, base + 2 + l, replicates);
      }
      const double v13 = mean_of(m, base + 3 + ell_max + l, replicates);
      if (v13 > best13) {
        best13 = v13;
        profile.ell_arg13[v - 1] = l;
        profile.se13[v - 1] = se_of(m, base + 3 + ell_max + l, replicates);
      }
    }
    profile.g22[v - 1] = best22;
    profile.g13[v - 1] = best13;
    profile.gamma[v - 1] = std::max({profile.g02[v - 1], profile.g12[v - 1], best22, best13});
  }

  std::ostringstream notes;
  notes.precision(6);
  notes << "monte carlo coupling majorants (upper-bound estimates), R = " << replicates
        << ", ell_max = " << ell_max << "; max standard errors: g02 " << profile.se02.maxCoeff()
        << ", g12 " << profile.se12.maxCoeff() << ", g22 " << profile.se22.maxCoeff() << ", g13 "
        << profile.se13.maxCoeff();
  profile.notes = notes.str();
  return profile;
}

// ---------------------------------------------------------------------------
// Mixing surrogate and summability reports

Vector beta_mixing(const FiniteChain& chain, Index nmax) {
  require(nmax >= 1, ErrorCode::InvalidInput, "beta_mixing: nmax must be >= 1");
  const SparseKernel kernel = chain.kernel().sparseView();
  const RowVector& pi = chain.pi();
  Matrix power = chain.kernel();
  Vector beta(nmax);
  for (Index n = 1; n <= nmax; ++n) {
    if (n > 1) power = power * kernel;
    const Vector tv = 0.5 * (power.rowwise() - pi).cwiseAbs().rowwise().sum();
    beta[n - 1] = pi.dot(tv);
  }
  return beta;
}

namespace {

ConditionReport summability(const Vector& terms_in, const std::string& notes) {
  ConditionReport report;
  const Index k = terms_in.size();
  report.partial_sums.resize(k);
  double acc = 0.0;
  for (Index i = 0; i < k; ++i) {
    acc += terms_in[i];
    report.partial_sums[i] = acc;
    report.grid.push_back(i + 1);
  }

  // Fit log(term) against log(lag) over the second half of the window.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  Index used = 0;
  bool any_positive = false;
  for (Index i = k / 2; i < k; ++i) {
    if (terms_in[i] > 0.0) {
      any_positive = true;
      const double lx = std::log(double(i + 1));
      const double ly = std::log(terms_in[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++used;
    }
  }
  if (!any_positive) {
    report.tail_exponent = std::numeric_limits<double>::infinity();
    report.satisfied_estimate = true;
  } else if (used < 3) {
    report.tail_exponent = std::numeric_limits<double>::quiet_NaN();
    report.satisfied_estimate = false;
  } else {
    const double slope = (double(used) * sxy - sx * sy) / (double(used) * sxx - sx * sx);
    report.tail_exponent = -slope;
    report.satisfied_estimate = report.tail_exponent > 1.1;
  }
  report.notes = notes +
                 "; heuristic: convergent when k*coef(k) decays faster than k^-1.1 over the second "
                 "half of the window (finite windows cannot certify summability)";
  return report;
}

}  // namespace

ConditionReport mixing_condition_report(const FiniteChain& chain, Index nmax) {
  const Vector beta = beta_mixing(chain, nmax);
  const double sup_f = chain.observable().cwiseAbs().maxCoeff();
  const double sup4 = std::pow(sup_f, 4);
  Vector terms(nmax);
  for (Index k = 1; k <= nmax; ++k) terms[k - 1] = double(k) * beta[k - 1] * sup4;
  return summability(terms,
                     "beta-mixing total-variation surrogate: beta(k) upper-bounds the strong "
                     "mixing coefficient, int_0^beta Q^4 <= beta |f|_inf^4 for bounded f");
}

ConditionReport condition_report(const Vector& coefficients) {
  Vector terms(coefficients.size());
  for (Index k = 1; k <= coefficients.size(); ++k) terms[k - 1] = double(k) * coefficients[k - 1];
  return summability(terms, "partial sums of k * gamma(k)");
}

ConditionReport condition_report(const GammaProfile& profile) {
  ConditionReport report = condition_report(profile.gamma);
  if (!profile.notes.empty()) report.notes += "; profile: " + profile.notes;
  return report;
}

}  // namespace mdproj
