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

#ifndef FPA_EVALUATION_HPP_
#define FPA_EVALUATION_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fpa/auction.hpp"
#include "fpa/environments.hpp"
#include "fpa/policies.hpp"

namespace fpa {

// Realized run of one policy against one environment. `rounds` is recorded
// by the harness and never shown to the policy.
struct RegretTrace {
  std::vector<AuctionRound> rounds;
  std::vector<double> bids;
  std::vector<double> utilities;
  std::vector<double> cumulative;  // prefix sums of `utilities`

  std::int64_t horizon() const { return static_cast<std::int64_t>(bids.size()); }
  double utility_sum() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

// Plays `horizon` rounds; the policy only sees observe(round, bid, feedback).
RegretTrace simulate(Environment& env, BidderPolicy& policy, FeedbackModel feedback,
                     std::int64_t horizon);

struct HindsightOptimum {
  double bid = 0.0;
  double value = 0.0;
};

// sum_t u_t(b).
double cumulative_utility(std::span<const AuctionRound> rounds, double bid);

// Best fixed bid for a realized sequence. Between consecutive distinct
// competing bids the cumulative utility is linear with non-positive slope,
// so the optimum is at 0 or at some M_t. Throws std::domain_error if empty.
HindsightOptimum hindsight_best(std::span<const AuctionRound> rounds);

enum class RegretMode { kHindsight, kPseudo };

// max_b sum_{t < horizon} E_t[u(b)]. Throws NoClosedForm when unavailable.
double pseudo_benchmark(const EnvironmentKind& kind, std::int64_t horizon);

// sum_t E_t[u(bids[t])].
double expected_utility_sum(const EnvironmentKind& kind, std::span<const double> bids);

// Hindsight: best realized fixed-bid utility minus realized utility.
// Pseudo: pseudo_benchmark minus expected_utility_sum of the posted bids.
double regret(const RegretTrace& trace, RegretMode mode, const EnvironmentKind& kind);

// sup over intervals I of |empirical frequency of I - P(I)|, for a
// continuous law with the given CDF. O(n log n).
double eps_sample_deviation(std::span<const double> samples,
                            const std::function<double(double)>& cdf);
// Same, with the competing-bid CDF of `kind`.
double eps_sample_deviation(std::span<const double> samples, const EnvironmentKind& kind);

struct SlopeFit {
  std::vector<double> log_horizons;  // log2 T
  std::vector<double> log_regrets;   // log2 mean regret
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

// OLS fit of log2 regret on log2 T. Needs at least 4 points and positive
// regrets; throws std::invalid_argument otherwise.
SlopeFit slope_estimate(std::span<const double> horizons,
                        std::span<const double> regrets);

// max_b E[u(b)] - max_{x in grid} E[u(x)], from closed forms.
double discretization_gap(const EnvironmentKind& kind, const BidGrid& grid);

// sum_t u_t(x_k) + #{t : x_k < M_t < x_{k+1}} - sum_t u_t(b) with k = k(b).
// Non-negative for every grid and bid.
double discretization_slack(std::span<const AuctionRound> rounds, const BidGrid& grid,
                            double bid);

}  // namespace fpa

#endif  // FPA_EVALUATION_HPP_
