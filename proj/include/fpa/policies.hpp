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

#ifndef FPA_POLICIES_HPP_
#define FPA_POLICIES_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fpa/auction.hpp"
#include "fpa/bandits.hpp"
#include "fpa/rng.hpp"

namespace fpa {

// Smallest n with n^den >= value^num, i.e. ceil(value^(num/den)) computed
// exactly. value >= 0, num >= 0, den >= 1.
std::int64_t ceil_rational_power(std::int64_t value, int num, int den);

// Candidate bids from T0 = |samples| observed competing bids: strictly
// increasing, starting at 0, at most ceil(sqrt(T0)) + 1 points, and at most
// ceil(sqrt(T0)) - 1 samples strictly between consecutive points. Throws
// std::domain_error on empty input.
std::vector<double> collect_bids(std::span<const double> samples);

// Online bidder. Observations must come from observe() under the feedback
// model the policy was built for.
class BidderPolicy {
 public:
  virtual ~BidderPolicy() = default;
  // Next bid, in [0, 1].
  virtual double next_bid() = 0;
  // Feedback for the bid returned by the last next_bid().
  virtual void observe(const Observation& obs) = 0;
};

// Phase 1 bids 0 for ceil(T^(2/3)) rounds and records M (a win at bid 0
// means M = 0). Phase 2 runs MOSS on the collected candidate bids.
class CollectingBandit final : public BidderPolicy {
 public:
  explicit CollectingBandit(std::int64_t horizon);

  double next_bid() override;
  void observe(const Observation& obs) override;

  std::int64_t exploration_rounds() const { return exploration_rounds_; }
  // Empty until phase 1 ends.
  const std::vector<double>& candidates() const { return candidates_; }

 private:
  std::int64_t horizon_;
  std::int64_t exploration_rounds_;
  std::vector<double> samples_;
  std::vector<double> candidates_;
  std::optional<Moss> learner_;
  std::size_t pending_arm_ = 0;
};

// Doubling epochs: epoch tau has nominal length 2^(tau - 1) and runs a fresh
// Exp3.FPA on {0} and every competing bid seen before the epoch.
class WindowedTransparent final : public BidderPolicy {
 public:
  WindowedTransparent(std::int64_t horizon, Rng rng);

  double next_bid() override;
  void observe(const Observation& obs) override;

  int epoch() const { return epoch_; }
  // Grid of the current epoch (empty before the first bid).
  std::span<const double> grid() const;

 private:
  void start_epoch();

  std::int64_t horizon_;
  Rng rng_;
  std::int64_t played_ = 0;
  std::int64_t epoch_left_ = 0;
  int epoch_ = 0;
  std::vector<double> seen_;
  std::optional<Exp3Fpa> learner_;
  std::size_t pending_index_ = 0;
};

// MOSS on a uniform grid of ceil(T^(num/den)) + 1 bids.
class DiscretizedBandit final : public BidderPolicy {
 public:
  DiscretizedBandit(std::int64_t horizon, int exponent_num = 2, int exponent_den = 3);

  double next_bid() override;
  void observe(const Observation& obs) override;

  const BidGrid& grid() const { return grid_; }

 private:
  BidGrid grid_;
  Moss learner_;
  std::size_t pending_arm_ = 0;
};

// Exp3.FPA on a uniform grid of ceil(sqrt(T)) + 1 bids.
class DiscretizedTransparent final : public BidderPolicy {
 public:
  DiscretizedTransparent(std::int64_t horizon, Rng rng);

  double next_bid() override;
  void observe(const Observation& obs) override;

  const BidGrid& grid() const { return learner_.grid(); }

 private:
  Rng rng_;
  Exp3Fpa learner_;
  std::size_t pending_index_ = 0;
};

// Exp3.FPA on a caller-supplied grid with a caller-supplied gamma.
class FixedGridExp3 final : public BidderPolicy {
 public:
  FixedGridExp3(BidGrid grid, double gamma, Rng rng);

  double next_bid() override;
  void observe(const Observation& obs) override;

  const Exp3Fpa& learner() const { return learner_; }

 private:
  Rng rng_;
  Exp3Fpa learner_;
  std::size_t pending_index_ = 0;
};

class FixedBid final : public BidderPolicy {
 public:
  explicit FixedBid(double bid);

  double next_bid() override { return bid_; }
  void observe(const Observation&) override {}

 private:
  double bid_;
};

// -- Named policy specs ---------------------------------------------------------

struct CoBaSpec {};
struct WtfpaSpec {};
struct DiscretizedBanditSpec {
  int exponent_num = 2;
  int exponent_den = 3;
};
struct DiscretizedTransparentSpec {};
struct FixedBidSpec {
  double bid = 0.0;
};

using PolicySpec = std::variant<CoBaSpec, WtfpaSpec, DiscretizedBanditSpec,
                                DiscretizedTransparentSpec, FixedBidSpec>;

std::string policy_name(const PolicySpec& spec);

// Least informative feedback model the policy can run under.
FeedbackModel required_feedback(const PolicySpec& spec);

// Throws std::invalid_argument when `feedback` is less informative than
// required_feedback(spec).
void check_compatible(const PolicySpec& spec, FeedbackModel feedback);

std::unique_ptr<BidderPolicy> make_policy(const PolicySpec& spec, std::int64_t horizon,
                                          Rng rng);

}  // namespace fpa

#endif  // FPA_POLICIES_HPP_
