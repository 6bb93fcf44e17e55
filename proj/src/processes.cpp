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

#include "mdproj/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mdproj {

// ---------------------------------------------------------------------------
// InnovationLaw

double InnovationLaw::variance() const noexcept {
  return kind_ == Kind::TwoPoint ? law_.sigma2 : 1.0;
}

double InnovationLaw::third_moment() const noexcept {
  return kind_ == Kind::TwoPoint ? law_.beta3 : 0.0;
}

double InnovationLaw::fourth_moment() const noexcept {
  switch (kind_) {
    case Kind::Rademacher: return 1.0;
    case Kind::Gaussian: return 3.0;
    case Kind::TwoPoint: return law_.sigma2 * law_.sigma2 + law_.beta3 * law_.beta3 / law_.sigma2;
  }
  return 0.0;
}

double InnovationLaw::sample(Stream& rng) const {
  switch (kind_) {
    case Kind::Rademacher: return rng.rademacher();
    case Kind::Gaussian: return rng.normal();
    case Kind::TwoPoint: return law_.sample(rng);
  }
  return 0.0;
}

std::complex<double> InnovationLaw::cf(double t) const {
  switch (kind_) {
    case Kind::Rademacher: return {std::cos(t), 0.0};
    case Kind::Gaussian: return {std::exp(-0.5 * t * t), 0.0};
    case Kind::TwoPoint:
      return law_.t * std::polar(1.0, t * law_.m) + law_.t_prime * std::polar(1.0, t * law_.m_prime);
  }
  return {0.0, 0.0};
}

std::string InnovationLaw::name() const {
  switch (kind_) {
    case Kind::Rademacher: return "rademacher";
    case Kind::Gaussian: return "gaussian";
    case Kind::TwoPoint: return "two-point";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// ARCH

ArchModel ArchModel::power_law(double c, double kappa, double b, int lags,
                               InnovationLaw innovation, int burn_in) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidInput, "arch: c must be positive");
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::InvalidInput, "arch: kappa must be nonnegative");
  }
  if (!(b > 1.0)) throw Error(ErrorCode::InvalidInput, "arch: b must be > 1");
  if (lags < 1) throw Error(ErrorCode::InvalidInput, "arch: J must be >= 1");

  ArchModel model;
  model.c = c;
  model.kappa = kappa;
  model.b = b;
  model.lags = lags;
  model.innovation = innovation;
  model.burn_in = burn_in > 0 ? burn_in : 10 * lags;
  model.coeffs.resize(lags);
  for (int j = 1; j <= lags; ++j) model.coeffs[j - 1] = kappa * std::pow(double(j), -b);
  if (!(model.coeff_sum() < 1.0)) {
    throw Error(ErrorCode::NonStationaryModel,
                "arch: sum of coefficients is " + std::to_string(model.coeff_sum()) +
                    ", must be < 1");
  }
  return model;
}

ArchState::ArchState(const ArchModel& model)
    : model_(&model), lags_(model.coeffs.size()), squares_(2 * model.coeffs.size(), model.variance()) {}

double ArchState::sigma2() const {
  const Eigen::Map<const Vector> window(squares_.data() + head_, lags_);
  return model_->c + model_->coeffs.dot(window);
}

double ArchState::step(double eta) {
  const double x = std::sqrt(sigma2()) * eta;
  head_ = head_ == 0 ? lags_ - 1 : head_ - 1;
  squares_[head_] = x * x;
  squares_[head_ + lags_] = x * x;
  return x;
}

// ---------------------------------------------------------------------------
// Chains

RowVector stationary_distribution(const Matrix& kernel) {
  const Index s = kernel.rows();
  if (s == 0 || kernel.cols() != s) {
    throw Error(ErrorCode::InvalidInput, "stationary_distribution: kernel must be square");
  }
  Matrix system = kernel.transpose() - Matrix::Identity(s, s);
  system.row(s - 1).setOnes();
  Vector rhs = Vector::Zero(s);
  rhs[s - 1] = 1.0;

  Eigen::FullPivLU<Matrix> lu(system);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::NumericFailure,
                "stationary_distribution: singular system (chain not irreducible?)");
  }
  RowVector pi = lu.solve(rhs).transpose();
  pi = pi * kernel;  // one power-iteration refinement
  pi /= pi.sum();
  if (!pi.allFinite() || (pi.array() <= 0.0).any()) {
    throw Error(ErrorCode::NumericFailure,
                "stationary_distribution: solution is not strictly positive");
  }
  return pi;
}

FiniteChain::FiniteChain(Matrix kernel, Vector f) : kernel_(std::move(kernel)), f_(std::move(f)) {
  const Index s = kernel_.rows();
  if (s < 1 || kernel_.cols() != s) {
    throw Error(ErrorCode::InvalidInput, "FiniteChain: kernel must be square and nonempty");
  }
  if (f_.size() != s) throw Error(ErrorCode::LengthMismatch, "FiniteChain: f has wrong length");
  if ((kernel_.array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidInput, "FiniteChain: negative transition probability");
  }
  if (((kernel_.rowwise().sum().array() - 1.0).abs() > 1e-12).any()) {
    throw Error(ErrorCode::InvalidInput, "FiniteChain: rows must sum to 1");
  }
  pi_ = stationary_distribution(kernel_);
  const double second = pi_.dot(f_.cwiseAbs2());
  if (!(second > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "FiniteChain: observable vanishes under pi");
  }
  scale_ = 1.0 / std::sqrt(second);

  pi_cumulative_.resize(s);
  double acc = 0.0;
  for (Index y = 0; y < s; ++y) pi_cumulative_[y] = (acc += pi_[y]);

  row_offsets_.assign(1, 0);
  for (Index y = 0; y < s; ++y) {
    double row_acc = 0.0;
    for (Index z = 0; z < s; ++z) {
      if (kernel_(y, z) > 0.0) {
        row_acc += kernel_(y, z);
        row_targets_.push_back(z);
        row_cumulative_.push_back(row_acc);
      }
    }
    row_offsets_.push_back(static_cast<Index>(row_targets_.size()));
  }
}

Index FiniteChain::sample_stationary(Stream& rng) const {
  const double u = rng.uniform() * pi_cumulative_.back();
  const auto it = std::upper_bound(pi_cumulative_.begin(), pi_cumulative_.end(), u);
  if (it == pi_cumulative_.end()) return states() - 1;
  return static_cast<Index>(it - pi_cumulative_.begin());
}

Index FiniteChain::step(Index state, Stream& rng) const {
  const Index begin = row_offsets_[state];
  const Index end = row_offsets_[state + 1];
  const double u = rng.uniform() * row_cumulative_[end - 1];
  for (Index k = begin; k < end - 1; ++k) {
    if (u < row_cumulative_[k]) return row_targets_[k];
  }
  return row_targets_[end - 1];
}

Vector kernel_apply(const FiniteChain& chain, const Vector& g) {
  if (g.size() != chain.states()) {
    throw Error(ErrorCode::LengthMismatch, "kernel_apply: function has wrong length");
  }
  return chain.kernel() * g;
}

Vector transition_schedule(int half_width, double epsilon, int formula_start) {
  if (half_width < 1) throw Error(ErrorCode::InvalidInput, "chain: N must be >= 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidInput, "chain: epsilon must be > 0");
  Vector a = Vector::Constant(half_width, 0.5);
  for (int i = 2; i < half_width; ++i) {
    if (formula_start > 0 && i < formula_start) continue;
    const double value = 1.0 - (3.0 + (1.0 + epsilon) / std::log(double(i))) / double(i);
    if (formula_start > 0) {
      a[i] = std::clamp(value, 0.5, std::nextafter(1.0, 0.0));
    } else if (value >= 0.5 && value < 1.0) {
      a[i] = value;
    }
  }
  return a;
}

Matrix truncated_chain_kernel(int half_width, const Vector& a) {
  if (half_width < 1) throw Error(ErrorCode::InvalidInput, "chain: N must be >= 1");
  if (a.size() != half_width) {
    throw Error(ErrorCode::LengthMismatch, "chain: expected a_0..a_{N-1}");
  }
  if (std::abs(a[0] - 0.5) > 0.0) throw Error(ErrorCode::InvalidInput, "chain: a_0 must be 1/2");
  for (Index i = 1; i < a.size(); ++i) {
    if (!(a[i] >= 0.5 && a[i] < 1.0)) {
      throw Error(ErrorCode::InvalidInput, "chain: a_i must lie in [1/2, 1)");
    }
  }
  const Index s = 2 * half_width + 1;
  const Index zero = half_width;
  Matrix k = Matrix::Zero(s, s);
  k(zero, zero + 1) = 0.5;
  k(zero, zero - 1) = 0.5;
  for (int y = 1; y <= half_width; ++y) {
    if (y == half_width) {
      k(zero + y, zero) = 1.0;
      k(zero - y, zero) = 1.0;
    } else {
      k(zero + y, zero + y + 1) = a[y];
      k(zero + y, zero) = 1.0 - a[y];
      k(zero - y, zero - y - 1) = a[y];
      k(zero - y, zero) = 1.0 - a[y];
    }
  }
  return k;
}

TruncatedChain make_truncated_chain(int half_width, const Vector& a, double alpha, double beta) {
  Matrix kernel = truncated_chain_kernel(half_width, a);
  const Index zero = half_width;
  const Index s = 2 * half_width + 1;

  Vector f1 = Vector::Zero(s);
  f1[zero + 1] = 1.0;
  f1[zero - 1] = -1.0;

  Vector f2 = Vector::Zero(s);
  f2[zero] = 1.0;
  for (int y = 2; y <= half_width; ++y) {
    f2[zero + y] = 1.0 - 1.0 / a[y - 1];
    f2[zero - y] = 1.0 - 1.0 / a[y - 1];
  }

  Vector f = alpha * f1 + beta * f2;
  return TruncatedChain{half_width, a, alpha, beta, std::move(f1), std::move(f2),
                        FiniteChain(std::move(kernel), std::move(f))};
}

TruncatedChain make_truncated_chain(const TruncatedChainConfig& config) {
  return make_truncated_chain(config.half_width,
                              transition_schedule(config.half_width, config.epsilon,
                                                  config.formula_start),
                              config.alpha, config.beta);
}

// ---------------------------------------------------------------------------
// MartingaleModel

MartingaleModel MartingaleModel::iid(const InnovationLaw& law) {
  return MartingaleModel(law, 1.0 / std::sqrt(law.variance()));
}

MartingaleModel MartingaleModel::arch(const ArchModel& model) {
  if (model.coeffs.size() != model.lags || !(model.coeff_sum() < 1.0)) {
    throw Error(ErrorCode::NonStationaryModel, "arch: model is not stationary");
  }
  return MartingaleModel(model, 1.0 / std::sqrt(model.variance()));
}

MartingaleModel MartingaleModel::markov(const FiniteChain& chain) {
  const double mean = chain.pi().dot(chain.observable());
  if (std::abs(mean) > 1e-10) {
    throw Error(ErrorCode::InvalidInput,
                "markov: observable has stationary mean " + std::to_string(mean) +
                    "; a martingale difference must be centered");
  }
  return MartingaleModel(chain, chain.scale());
}

std::string MartingaleModel::name() const {
  switch (kind()) {
    case Kind::Iid: return "iid-" + innovation().name();
    case Kind::Arch: return "arch";
    case Kind::MarkovFunctional: return "markov";
  }
  return "unknown";
}

void MartingaleModel::simulate_into(Eigen::Ref<Vector> out, Stream& rng) const {
  const Index n = out.size();
  switch (kind()) {
    case Kind::Iid: {
      const InnovationLaw& law = innovation();
      for (Index i = 0; i < n; ++i) out[i] = scale_ * law.sample(rng);
      break;
    }
    case Kind::Arch: {
      const ArchModel& model = arch_model();
      const double eta_scale = 1.0 / std::sqrt(model.innovation.variance());
      ArchState state(model);
      for (int i = 0; i < model.burn_in; ++i) state.step(eta_scale * model.innovation.sample(rng));
      for (Index i = 0; i < n; ++i) {
        out[i] = scale_ * state.step(eta_scale * model.innovation.sample(rng));
      }
      break;
    }
    case Kind::MarkovFunctional: {
      const FiniteChain& c = chain();
      const Vector& f = c.f();
      Index y = c.sample_stationary(rng);
      for (Index i = 0; i < n; ++i) {
        if (i > 0) y = c.step(y, rng);
        out[i] = scale_ * f[y];
      }
      break;
    }
  }
}

Vector simulate_path(const MartingaleModel& model, Index n, Stream& rng) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "simulate_path: n must be >= 1");
  Vector out(n);
  model.simulate_into(out, rng);
  return out;
}

// ---------------------------------------------------------------------------
// Moment tables

MomentTable moment_table(const MartingaleModel& model, Index umax, MomentMethod method,
                         Stream& rng, Index mc_length) {
  if (umax < 0) throw Error(ErrorCode::InvalidInput, "moment_table: umax must be >= 0");
  MomentTable table;
  table.a = Vector::Zero(umax + 1);
  table.cov_sq = Vector::Zero(umax + 1);

  if (method == MomentMethod::Exact) {
    switch (model.kind()) {
      case MartingaleModel::Kind::Iid: {
        const InnovationLaw& law = model.innovation();
        const double s = model.scale();
        table.a[0] = law.third_moment() * s * s * s;
        table.cov_sq[0] = law.fourth_moment() * std::pow(s, 4) - 1.0;
        return table;
      }
      case MartingaleModel::Kind::MarkovFunctional: {
        const FiniteChain& chain = model.chain();
        const Vector x = chain.observable();
        const Vector x2 = x.cwiseAbs2();
        const Vector weighted_x = chain.pi().transpose().cwiseProduct(x);
        const Vector weighted_x2 = chain.pi().transpose().cwiseProduct(x2);
        const double mean_sq = chain.pi().dot(x2);
        table.second = mean_sq;
        Vector power = x2;  // K^u x^2
        for (Index u = 0; u <= umax; ++u) {
          if (u > 0) power = chain.kernel() * power;
          table.a[u] = weighted_x.dot(power);
          table.cov_sq[u] = weighted_x2.dot(power) - mean_sq * mean_sq;
        }
        return table;
      }
      case MartingaleModel::Kind::Arch:
        throw Error(ErrorCode::UnsupportedMethod,
                    "moment_table: exact tables are not available for ARCH models");
    }
  }

  if (mc_length < 1) throw Error(ErrorCode::InvalidInput, "moment_table: mc_length must be >= 1");
  const Vector path = simulate_path(model, mc_length + umax, rng);
  const Vector sq = path.cwiseAbs2();
  const double mean_sq = sq.head(mc_length).mean();
  table.second = mean_sq;
  for (Index u = 0; u <= umax; ++u) {
    table.a[u] = path.head(mc_length).dot(sq.segment(u, mc_length)) / double(mc_length);
    table.cov_sq[u] =
        sq.head(mc_length).dot(sq.segment(u, mc_length)) / double(mc_length) - mean_sq * mean_sq;
  }
  return table;
}

}  // namespace mdproj
