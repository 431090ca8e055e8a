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

#ifndef FPA_BANDITS_HPP_
#define FPA_BANDITS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fpa/auction.hpp"
#include "fpa/rng.hpp"

namespace fpa {

// MOSS over K arms with rewards in [-1, 1], rescaled to [0, 1] by
// x -> (x + 1) / 2. Index: s_i / n_i + sqrt(max(0, ln(T / (K n_i))) / n_i);
// unplayed arms come first, ties go to the lowest index.
class Moss {
 public:
  Moss(std::size_t arm_count, std::int64_t horizon);

  // State with given per-arm pull counts and rescaled reward sums.
  static Moss restore(std::int64_t horizon, std::vector<std::int64_t> pulls,
                      std::vector<double> reward_sums);

  // O(log K).
  std::size_t select() const;
  // Throws std::domain_error unless raw_reward is in [-1, 1].
  void update(std::size_t arm, double raw_reward);

  double index(std::size_t arm) const;

  std::size_t arm_count() const { return pulls_.size(); }
  std::int64_t horizon() const { return horizon_; }
  std::int64_t rounds() const { return rounds_; }
  std::int64_t pulls(std::size_t arm) const { return pulls_[arm]; }
  double reward_sum(std::size_t arm) const { return sums_[arm]; }

 private:
  void refresh(std::size_t arm);

  std::int64_t horizon_;
  std::int64_t rounds_ = 0;
  std::vector<std::int64_t> pulls_;
  std::vector<double> sums_;
  // Max-index segment tree over arms; leaves start at `leaves_`.
  std::size_t leaves_ = 1;
  std::vector<double> tree_value_;
  std::vector<std::size_t> tree_arm_;
};

// min(sqrt(ln(max(K, 2)) / ((e - 1) T)), 1/2).
double exp3fpa_gamma(std::size_t grid_size, std::int64_t horizon);

// Exponential weights over a bid grid with transparent-feedback reward
// estimates (V - x) 1{x >= M} 1{M <= B} / sum_{y >= M} p(y).
//
// Sampling probabilities p = (1 - gamma) softmax(l) + gamma delta_{max grid}.
// Weights exp(l - ref) live in fixed-size blocks with cached sums and maxima,
// so a round costs the length of the updated suffix plus K / block.
class Exp3Fpa {
 public:
  // `strict_suffix` replaces y >= M by y > M in the denominator. It exists
  // only as a negative control for the unbiasedness checks.
  Exp3Fpa(BidGrid grid, double gamma, bool strict_suffix = false);

  const BidGrid& grid() const { return grid_; }
  double gamma() const { return gamma_; }

  // Full probability vector, computed from the log-weights.
  std::vector<double> distribution() const;

  // Grid index drawn from p.
  std::size_t sample(Rng& rng) const;

  // sum_{k >= first} p_k.
  double suffix_mass(std::size_t first) const;

  // Estimates g(x_k) for the round, all zero when lost. Throws
  // std::logic_error if the observation hides the competing bid, or hides
  // the valuation of a won round.
  std::vector<double> reward_estimates(std::size_t bid_index,
                                       const Observation& obs) const;

  // l <- l + gamma g.
  void update(std::size_t bid_index, const Observation& obs);

  std::vector<double> log_weights() const;
  void set_log_weights(std::vector<double> log_weights);

 private:
  struct Estimate {
    std::size_t first = 0;  // g vanishes below this index
    double valuation = 0.0;
    double denominator = 1.0;
  };

  // first == grid size when the round carries no update.
  Estimate estimate(std::size_t bid_index, const Observation& obs) const;
  double softmax_suffix(std::size_t first) const;
  void refresh_block(std::size_t block);
  void rebase();

  BidGrid grid_;
  double gamma_;
  bool strict_suffix_;
  double ref_ = 0.0;
  double total_ = 0.0;
  std::vector<double> log_w_;
  std::vector<double> w_;
  std::vector<double> block_sum_;
  std::vector<double> block_max_;
};

}  // namespace fpa

#endif  // FPA_BANDITS_HPP_
