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

#ifndef FPA_AUCTION_HPP_
#define FPA_AUCTION_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fpa {

class NestedPath;

// A competing bid that is known beyond double precision: the lower (or upper)
// end of the interval after `step` updates of a shrinking-interval path.
// Rounds carrying one are compared exactly; `AuctionRound::competing_bid`
// holds the nearest double.
struct NestedPoint {
  std::shared_ptr<const NestedPath> path;
  std::int64_t step = 0;
  bool upper = false;
};

// One (valuation, highest competing bid) pair drawn by the environment.
struct AuctionRound {
  double valuation = 0.0;
  double competing_bid = 0.0;
  std::optional<NestedPoint> exact;

  AuctionRound() = default;
  AuctionRound(double v, double m);
  AuctionRound(double v, double m, NestedPoint point);
};

// Informativeness order: Full >= Transparent >= SemiTransparent >= Bandit.
enum class FeedbackModel { kFull, kTransparent, kSemiTransparent, kBandit };

std::string_view to_string(FeedbackModel model);
FeedbackModel parse_feedback_model(std::string_view name);

// True when `model` always reveals the highest competing bid.
bool reveals_competing_bid_always(FeedbackModel model);
// True when `model` reveals the highest competing bid on every lost round.
bool reveals_competing_bid_on_loss(FeedbackModel model);

// What the learner sees after bidding. Hidden fields are empty.
struct Observation {
  std::optional<double> valuation;
  std::optional<double> competing_bid;
  bool won = false;
};

// Exact comparison of a bid against the round's competing bid: returns a
// negative value if bid < M, zero if equal and positive if bid > M.
int compare_bid(double bid, const AuctionRound& round);

// Exact comparison of the competing bids of two rounds.
int compare_competing(const AuctionRound& a, const AuctionRound& b);

// True when `bid` wins the round (ties win).
bool wins(const AuctionRound& round, double bid);

// (V - b) * 1{b >= M}. Throws std::domain_error unless bid is in [0, 1].
double utility(const AuctionRound& round, double bid);

// Feedback revealed to a learner that posted `bid`.
Observation observe(const AuctionRound& round, double bid, FeedbackModel model);

// Realized utility recovered from the learner's own feedback.
double reconstruct_utility(const Observation& obs, double bid);

// Finite ordered bid set 0 = x_0 < x_1 < ... < x_K <= 1.
class BidGrid {
 public:
  // Sorts, removes exact duplicates and inserts 0 if missing. Throws
  // std::invalid_argument for points outside [0, 1].
  explicit BidGrid(std::vector<double> points);

  // K + 1 equally spaced points i / K, i = 0..K. `point_count` >= 1.
  static BidGrid uniform(std::size_t point_count);

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t k) const { return points_[k]; }
  double max() const { return points_.back(); }
  std::span<const double> points() const { return points_; }

  // The unique k with x_k <= b < x_{k+1}, using x_{K+1} = 2.
  std::size_t lookup(double b) const;

  // Upper end of cell k (x_{k+1}, or the sentinel 2 for the last cell).
  double cell_upper(std::size_t k) const;

  // Largest distance from a point of [0, 1] to the grid.
  double mesh() const;

  // First index k with x_k >= m, or size() if there is none.
  std::size_t first_at_least(double m) const;

 private:
  std::vector<double> points_;
};

}  // namespace fpa

#endif  // FPA_AUCTION_HPP_
