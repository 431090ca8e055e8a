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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fpa/auction.hpp"
#include "fpa/nested_path.hpp"
#include "fpa/rng.hpp"

using namespace fpa;

TEST_CASE("utility: winning, tie and losing bids") {
  CHECK(utility({0.9, 0.5}, 0.6) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(utility({1.0, 0.4}, 0.4) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(utility({0.9, 0.5}, 0.3) == 0.0);
}

TEST_CASE("utility rejects bids outside [0, 1]") {
  CHECK_THROWS_AS(utility({0.5, 0.5}, -0.1), std::domain_error);
  CHECK_THROWS_AS(utility({0.5, 0.5}, 1.1), std::domain_error);
  CHECK_THROWS_AS(observe({0.5, 0.5}, 1.5, FeedbackModel::kFull), std::domain_error);
}

TEST_CASE("observe: feedback table") {
  const AuctionRound r{0.9, 0.5};
  const Observation semi = observe(r, 0.6, FeedbackModel::kSemiTransparent);
  CHECK(semi.valuation == 0.9);
  CHECK_FALSE(semi.competing_bid);
  CHECK(semi.won);

  const Observation bandit = observe(r, 0.3, FeedbackModel::kBandit);
  CHECK_FALSE(bandit.valuation);
  CHECK_FALSE(bandit.competing_bid);
  CHECK_FALSE(bandit.won);

  const Observation transparent = observe(r, 0.3, FeedbackModel::kTransparent);
  CHECK_FALSE(transparent.valuation);
  CHECK(transparent.competing_bid == 0.5);
  CHECK_FALSE(transparent.won);

  const Observation semi_lost = observe(r, 0.3, FeedbackModel::kSemiTransparent);
  CHECK_FALSE(semi_lost.valuation);
  CHECK(semi_lost.competing_bid == 0.5);

  const Observation full = observe(r, 0.3, FeedbackModel::kFull);
  CHECK(full.valuation == 0.9);
  CHECK(full.competing_bid == 0.5);
}

TEST_CASE("observe: revelation is monotone and utility is reconstructible") {
  Rng rng(11);
  const FeedbackModel order[] = {FeedbackModel::kFull, FeedbackModel::kTransparent,
                                 FeedbackModel::kSemiTransparent, FeedbackModel::kBandit};
  for (int i = 0; i < 20000; ++i) {
    const AuctionRound r{rng.uniform(), rng.uniform()};
    const double b = rng.bernoulli(0.1) ? r.competing_bid : rng.uniform();
    int previous = 3;
    for (FeedbackModel model : order) {
      const Observation obs = observe(r, b, model);
      const int revealed = (obs.valuation ? 1 : 0) + (obs.competing_bid ? 1 : 0);
      CHECK(revealed <= previous);
      previous = revealed;
      CHECK(obs.won == (b >= r.competing_bid));
      CHECK(reconstruct_utility(obs, b) == utility(r, b));
      if (model == FeedbackModel::kSemiTransparent) {
        CHECK_FALSE((obs.valuation && obs.competing_bid));
      }
    }
  }
}

TEST_CASE("utility is non-increasing on the winning region") {
  const AuctionRound r{0.7, 0.3};
  double last = utility(r, 0.3);
  for (int i = 1; i <= 70; ++i) {
    const double b = 0.3 + i * 0.01;
    if (b > 1.0) break;
    CHECK(utility(r, b) <= last);
    last = utility(r, b);
  }
  for (int i = 0; i < 30; ++i) CHECK(utility(r, i * 0.01) == 0.0);
}

TEST_CASE("feedback names round-trip") {
  for (FeedbackModel m : {FeedbackModel::kFull, FeedbackModel::kTransparent,
                          FeedbackModel::kSemiTransparent, FeedbackModel::kBandit}) {
    CHECK(parse_feedback_model(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_feedback_model("oracle"), std::invalid_argument);
}

TEST_CASE("BidGrid: lookup with sentinel") {
  const BidGrid two({0.0, 0.5});
  CHECK(two.lookup(0.5) == 1);
  CHECK(two.lookup(1.0) == 1);
  CHECK(two.lookup(0.49) == 0);
  CHECK(two.cell_upper(1) == 2.0);
  const BidGrid one({0.0});
  CHECK(one.lookup(0.3) == 0);
}

TEST_CASE("BidGrid: sorts, deduplicates and validates") {
  const BidGrid g({0.5, 0.0, 0.5, 0.25});
  REQUIRE(g.size() == 3);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.25);
  CHECK(g[2] == 0.5);
  CHECK(BidGrid({0.1, 0.5})[0] == 0.0);
  CHECK(BidGrid(std::vector<double>{}).size() == 1);
  CHECK_THROWS_AS(BidGrid({0.0, 1.5}), std::invalid_argument);
}

TEST_CASE("BidGrid: uniform grids include both end points") {
  for (std::size_t n : {2u, 3u, 11u, 101u}) {
    const BidGrid g = BidGrid::uniform(n);
    CHECK(g.size() == n);
    CHECK(g[0] == 0.0);
    CHECK(g.max() == 1.0);
    CHECK(g.mesh() <= 1.0 / static_cast<double>(n - 1) + 1e-15);
  }
  const BidGrid g = BidGrid::uniform(5);
  CHECK(g.first_at_least(0.3) == 2);
  CHECK(g.first_at_least(0.25) == 1);
  CHECK(g.first_at_least(1.2) == 5);
}

TEST_CASE("exact comparisons against shrinking-path end points") {
  auto path = std::make_shared<NestedPath>();
  for (int t = 0; t < 50; ++t) path->advance(t % 3 == 0);
  const AuctionRound lo(1.0, path->lower(50), NestedPoint{path, 50, false});
  const AuctionRound hi(0.0, path->upper(50), NestedPoint{path, 50, true});
  // Both ends round to nearby doubles but are ordered exactly.
  CHECK(compare_competing(lo, hi) < 0);
  CHECK(compare_competing(hi, lo) > 0);
  CHECK(compare_competing(lo, lo) == 0);
  CHECK(compare_bid(0.5, lo) < 0);
  CHECK(compare_bid(2.0 / 3.0, hi) > 0);
  CHECK(compare_bid(1.0, hi) > 0);
}
