// Copyright 2026 The fpa-regret Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fpa/bandits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace fpa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kBlock = 64;
// Rebase the weights once the largest log-weight drifts this far from ref.
constexpr double kRebaseSpan = 200.0;

}  // namespace

// -- MOSS -----------------------------------------------------------------------

Moss::Moss(std::size_t arm_count, std::int64_t horizon)
    : horizon_(horizon), pulls_(arm_count, 0), sums_(arm_count, 0.0) {
  if (arm_count == 0) throw std::invalid_argument("Moss: no arms");
  if (horizon < 1) throw std::invalid_argument("Moss: horizon < 1");
  while (leaves_ < arm_count) leaves_ *= 2;
  tree_value_.assign(2 * leaves_, -kInf);
  tree_arm_.assign(2 * leaves_, 0);
  for (std::size_t i = 0; i < leaves_; ++i) {
    tree_arm_[leaves_ + i] = i;
    if (i < arm_count) tree_value_[leaves_ + i] = kInf;
  }
  for (std::size_t n = leaves_ - 1; n >= 1; --n) {
    const bool left = tree_value_[2 * n] >= tree_value_[2 * n + 1];
    tree_value_[n] = tree_value_[left ? 2 * n : 2 * n + 1];
    tree_arm_[n] = tree_arm_[left ? 2 * n : 2 * n + 1];
  }
}

Moss Moss::restore(std::int64_t horizon, std::vector<std::int64_t> pulls,
                   std::vector<double> reward_sums) {
  if (pulls.size() != reward_sums.size()) {
    throw std::invalid_argument("Moss::restore: size mismatch");
  }
  Moss moss(pulls.size(), horizon);
  for (std::size_t i = 0; i < pulls.size(); ++i) {
    if (pulls[i] < 0 || reward_sums[i] < 0.0 ||
        reward_sums[i] > static_cast<double>(pulls[i])) {
      throw std::invalid_argument("Moss::restore: need 0 <= s_i <= n_i");
    }
    moss.pulls_[i] = pulls[i];
    moss.sums_[i] = reward_sums[i];
    moss.rounds_ += pulls[i];
    moss.refresh(i);
  }
  return moss;
}

double Moss::index(std::size_t arm) const {
  const std::int64_t n = pulls_[arm];
  if (n == 0) return kInf;
  const double pulls = static_cast<double>(n);
  const double ratio =
      static_cast<double>(horizon_) / (static_cast<double>(pulls_.size()) * pulls);
  return sums_[arm] / pulls + std::sqrt(std::max(0.0, std::log(ratio)) / pulls);
}

std::size_t Moss::select() const { return tree_arm_[1]; }

void Moss::update(std::size_t arm, double raw_reward) {
  if (!(raw_reward >= -1.0 && raw_reward <= 1.0)) {
    throw std::domain_error("Moss: reward outside [-1, 1]");
  }
  if (arm >= pulls_.size()) throw std::out_of_range("Moss: arm index");
  ++pulls_[arm];
  sums_[arm] += 0.5 * (raw_reward + 1.0);
  ++rounds_;
  refresh(arm);
}

void Moss::refresh(std::size_t arm) {
  std::size_t n = leaves_ + arm;
  tree_value_[n] = index(arm);
  for (n /= 2; n >= 1; n /= 2) {
    const bool left = tree_value_[2 * n] >= tree_value_[2 * n + 1];
    tree_value_[n] = tree_value_[left ? 2 * n : 2 * n + 1];
    tree_arm_[n] = tree_arm_[left ? 2 * n : 2 * n + 1];
  }
}

// -- Exp3.FPA -------------------------------------------------------------------

double exp3fpa_gamma(std::size_t grid_size, std::int64_t horizon) {
  if (grid_size < 1 || horizon < 1) {
    throw std::invalid_argument("exp3fpa_gamma: need grid_size, horizon >= 1");
  }
  const double k = static_cast<double>(std::max<std::size_t>(grid_size, 2));
  const double rate =
      std::sqrt(std::log(k) / ((std::numbers::e - 1.0) * static_cast<double>(horizon)));
  return std::min(rate, 0.5);
}

Exp3Fpa::Exp3Fpa(BidGrid grid, double gamma, bool strict_suffix)
    : grid_(std::move(grid)),
      gamma_(gamma),
      strict_suffix_(strict_suffix),
      log_w_(grid_.size(), 0.0),
      w_(grid_.size(), 1.0),
      block_sum_((grid_.size() + kBlock - 1) / kBlock, 0.0),
      block_max_(block_sum_.size(), 0.0) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("Exp3Fpa: gamma must lie in (0, 1)");
  }
  rebase();
}

std::vector<double> Exp3Fpa::distribution() const {
  const double top = *std::max_element(log_w_.begin(), log_w_.end());
  std::vector<double> p(log_w_.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = std::exp(log_w_[k] - top);
    sum += p[k];
  }
  for (double& x : p) x *= (1.0 - gamma_) / sum;
  p.back() += gamma_;
  return p;
}

std::size_t Exp3Fpa::sample(Rng& rng) const {
  const std::size_t last = w_.size() - 1;
  const double u = rng.uniform();
  if (u < gamma_) return last;
  const double target = (u - gamma_) / (1.0 - gamma_) * total_;
  double acc = 0.0;
  for (std::size_t b = 0; b < block_sum_.size(); ++b) {
    if (acc + block_sum_[b] <= target) {
      acc += block_sum_[b];
      continue;
    }
    const std::size_t end = std::min(w_.size(), (b + 1) * kBlock);
    for (std::size_t k = b * kBlock; k < end; ++k) {
      acc += w_[k];
      if (acc > target) return k;
    }
    break;
  }
  // Rounding left the target past the total: take the last positive weight.
  for (std::size_t k = last + 1; k-- > 0;) {
    if (w_[k] > 0.0) return k;
  }
  return last;
}

double Exp3Fpa::softmax_suffix(std::size_t first) const {
  if (first >= w_.size()) return 0.0;
  const std::size_t block = first / kBlock;
  const std::size_t end = std::min(w_.size(), (block + 1) * kBlock);
  double sum = 0.0;
  for (std::size_t k = first; k < end; ++k) sum += w_[k];
  for (std::size_t b = block + 1; b < block_sum_.size(); ++b) {
    sum += block_sum_[b];
  }
  return sum;
}

double Exp3Fpa::suffix_mass(std::size_t first) const {
  if (first >= w_.size()) return 0.0;
  return (1.0 - gamma_) * softmax_suffix(first) / total_ + gamma_;
}

Exp3Fpa::Estimate Exp3Fpa::estimate(std::size_t bid_index, const Observation& obs) const {
  if (!obs.competing_bid) {
    throw std::logic_error(
        "Exp3Fpa: competing bid hidden; transparent feedback is required");
  }
  if (bid_index >= grid_.size()) throw std::out_of_range("Exp3Fpa: bid index");
  Estimate est;
  est.first = grid_.size();
  if (!obs.won) return est;
  if (!obs.valuation) {
    throw std::logic_error("Exp3Fpa: valuation hidden on a won round");
  }
  const double m = *obs.competing_bid;
  // A win certifies x_{bid} >= M even if the revealed M was rounded up.
  est.first = std::min(grid_.first_at_least(m), bid_index);
  est.valuation = *obs.valuation;
  if (strict_suffix_) {
    const auto pts = grid_.points();
    const auto above = static_cast<std::size_t>(
        std::upper_bound(pts.begin(), pts.end(), m) - pts.begin());
    est.denominator = suffix_mass(above);
  } else {
    est.denominator = suffix_mass(est.first);
  }
  return est;
}

std::vector<double> Exp3Fpa::reward_estimates(std::size_t bid_index,
                                              const Observation& obs) const {
  const Estimate est = estimate(bid_index, obs);
  std::vector<double> g(grid_.size(), 0.0);
  for (std::size_t k = est.first; k < g.size(); ++k) {
    g[k] = (est.valuation - grid_[k]) / est.denominator;
  }
  return g;
}

void Exp3Fpa::update(std::size_t bid_index, const Observation& obs) {
  const Estimate est = estimate(bid_index, obs);
  if (est.first >= grid_.size()) return;
  const double scale = gamma_ / est.denominator;
  const double lift = scale * est.valuation;
  const auto pts = grid_.points();
  for (std::size_t b = est.first / kBlock; b < block_sum_.size(); ++b) {
    const std::size_t begin = std::max(est.first, b * kBlock);
    const std::size_t end = std::min(w_.size(), (b + 1) * kBlock);
    for (std::size_t k = begin; k < end; ++k) {
      log_w_[k] += lift - scale * pts[k];
      w_[k] = std::exp(log_w_[k] - ref_);
    }
    refresh_block(b);
  }
  const double top = *std::max_element(block_max_.begin(), block_max_.end());
  if (std::abs(top - ref_) > kRebaseSpan) {
    rebase();
    return;
  }
  total_ = std::accumulate(block_sum_.begin(), block_sum_.end(), 0.0);
}

std::vector<double> Exp3Fpa::log_weights() const { return log_w_; }

void Exp3Fpa::set_log_weights(std::vector<double> log_weights) {
  if (log_weights.size() != grid_.size()) {
    throw std::invalid_argument("Exp3Fpa: log-weight count != grid size");
  }
  for (double x : log_weights) {
    if (!std::isfinite(x)) throw std::invalid_argument("Exp3Fpa: non-finite");
  }
  log_w_ = std::move(log_weights);
  rebase();
}

void Exp3Fpa::refresh_block(std::size_t block) {
  const std::size_t begin = block * kBlock;
  const std::size_t end = std::min(w_.size(), begin + kBlock);
  double sum = 0.0;
  double top = -kInf;
  for (std::size_t k = begin; k < end; ++k) {
    sum += w_[k];
    top = std::max(top, log_w_[k]);
  }
  block_sum_[block] = sum;
  block_max_[block] = top;
}

void Exp3Fpa::rebase() {
  ref_ = *std::max_element(log_w_.begin(), log_w_.end());
  for (std::size_t k = 0; k < w_.size(); ++k) {
    w_[k] = std::exp(log_w_[k] - ref_);
  }
  for (std::size_t b = 0; b < block_sum_.size(); ++b) refresh_block(b);
  total_ = std::accumulate(block_sum_.begin(), block_sum_.end(), 0.0);
}

}  // namespace fpa
