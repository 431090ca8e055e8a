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

#include "fpa/auction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fpa/nested_path.hpp"

namespace fpa {

AuctionRound::AuctionRound(double v, double m) : valuation(v), competing_bid(m) {}

AuctionRound::AuctionRound(double v, double m, NestedPoint point)
    : valuation(v), competing_bid(m), exact(std::move(point)) {}

std::string_view to_string(FeedbackModel model) {
  switch (model) {
    case FeedbackModel::kFull:
      return "full";
    case FeedbackModel::kTransparent:
      return "transparent";
    case FeedbackModel::kSemiTransparent:
      return "semi_transparent";
    case FeedbackModel::kBandit:
      return "bandit";
  }
  return "unknown";
}

FeedbackModel parse_feedback_model(std::string_view name) {
  if (name == "full") return FeedbackModel::kFull;
  if (name == "transparent") return FeedbackModel::kTransparent;
  if (name == "semi_transparent" || name == "semi-transparent") {
    return FeedbackModel::kSemiTransparent;
  }
  if (name == "bandit") return FeedbackModel::kBandit;
  throw std::invalid_argument("unknown feedback model: " + std::string(name));
}

bool reveals_competing_bid_always(FeedbackModel model) {
  return model == FeedbackModel::kFull || model == FeedbackModel::kTransparent;
}

bool reveals_competing_bid_on_loss(FeedbackModel model) {
  return model != FeedbackModel::kBandit;
}

int compare_bid(double bid, const AuctionRound& round) {
  if (round.exact) {
    const NestedPoint& p = *round.exact;
    return p.path->compare_value(bid, p.step, p.upper);
  }
  if (bid < round.competing_bid) return -1;
  return bid > round.competing_bid ? 1 : 0;
}

int compare_competing(const AuctionRound& a, const AuctionRound& b) {
  if (a.exact && b.exact && a.exact->path == b.exact->path) {
    return a.exact->path->compare_points(a.exact->step, a.exact->upper, b.exact->step,
                                         b.exact->upper);
  }
  if (b.exact) return compare_bid(a.competing_bid, b);
  if (a.exact) return -compare_bid(b.competing_bid, a);
  if (a.competing_bid < b.competing_bid) return -1;
  return a.competing_bid > b.competing_bid ? 1 : 0;
}

bool wins(const AuctionRound& round, double bid) { return compare_bid(bid, round) >= 0; }

namespace {

void check_bid(double bid) {
  if (!(bid >= 0.0 && bid <= 1.0)) {
    throw std::domain_error("bid must lie in [0, 1]");
  }
}

}  // namespace

double utility(const AuctionRound& round, double bid) {
  check_bid(bid);
  return wins(round, bid) ? round.valuation - bid : 0.0;
}

Observation observe(const AuctionRound& round, double bid, FeedbackModel model) {
  check_bid(bid);
  Observation obs;
  obs.won = wins(round, bid);
  switch (model) {
    case FeedbackModel::kFull:
      obs.valuation = round.valuation;
      obs.competing_bid = round.competing_bid;
      break;
    case FeedbackModel::kTransparent:
      obs.competing_bid = round.competing_bid;
      if (obs.won) obs.valuation = round.valuation;
      break;
    case FeedbackModel::kSemiTransparent:
      if (obs.won) {
        obs.valuation = round.valuation;
      } else {
        obs.competing_bid = round.competing_bid;
      }
      break;
    case FeedbackModel::kBandit:
      if (obs.won) obs.valuation = round.valuation;
      break;
  }
  return obs;
}

double reconstruct_utility(const Observation& obs, double bid) {
  if (!obs.won) return 0.0;
  if (!obs.valuation) {
    throw std::logic_error("won round without a revealed valuation");
  }
  return *obs.valuation - bid;
}

// -- BidGrid ------------------------------------------------------------------

BidGrid::BidGrid(std::vector<double> points) : points_(std::move(points)) {
  for (double p : points_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("grid points must lie in [0, 1]");
    }
  }
  points_.push_back(0.0);
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

BidGrid BidGrid::uniform(std::size_t point_count) {
  if (point_count == 0) {
    throw std::invalid_argument("uniform grid needs at least one point");
  }
  std::vector<double> pts(point_count);
  const std::size_t k = point_count - 1;
  for (std::size_t i = 0; i < point_count; ++i) {
    pts[i] = k == 0 ? 0.0 : static_cast<double>(i) / static_cast<double>(k);
  }
  return BidGrid(std::move(pts));
}

std::size_t BidGrid::lookup(double b) const {
  // upper_bound gives the first point > b; the cell is the one before it.
  auto it = std::upper_bound(points_.begin(), points_.end(), b);
  if (it == points_.begin()) return 0;
  return static_cast<std::size_t>(it - points_.begin()) - 1;
}

double BidGrid::cell_upper(std::size_t k) const {
  return k + 1 < points_.size() ? points_[k + 1] : 2.0;
}

double BidGrid::mesh() const {
  double worst = 1.0 - points_.back();
  for (std::size_t i = 1; i < points_.size(); ++i) {
    worst = std::max(worst, 0.5 * (points_[i] - points_[i - 1]));
  }
  return worst;
}

std::size_t BidGrid::first_at_least(double m) const {
  return static_cast<std::size_t>(std::lower_bound(points_.begin(), points_.end(), m) -
                                  points_.begin());
}

}  // namespace fpa
