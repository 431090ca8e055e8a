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
#include <numbers>

#include "doctest.h"
#include "fpa/bandits.hpp"
#include "fpa/rng.hpp"

using namespace fpa;

TEST_CASE("MOSS: forced exploration in index order") {
  Moss moss(3, 100);
  for (std::size_t arm = 0; arm < 3; ++arm) {
    CHECK(moss.select() == arm);
    moss.update(arm, 0.0);
  }
  Moss single(1, 10);
  for (int t = 0; t < 10; ++t) {
    CHECK(single.select() == 0);
    single.update(0, 1.0);
  }
}

TEST_CASE("MOSS: higher mean wins at equal bonus") {
  const Moss moss = Moss::restore(100, {10, 10}, {9.0, 5.0});
  CHECK(moss.select() == 0);
  // s/n + sqrt(max(0, ln(T/(K n)))/n).
  CHECK(moss.index(0) == doctest::Approx(0.9 + std::sqrt(std::log(5.0) / 10)));
  CHECK(moss.index(1) == doctest::Approx(0.5 + std::sqrt(std::log(5.0) / 10)));
  CHECK(moss.rounds() == 20);
}

TEST_CASE("MOSS: bonus vanishes once n >= T/K") {
  const Moss moss = Moss::restore(100, {60, 40}, {30.0, 10.0});
  CHECK(moss.index(0) == doctest::Approx(0.5));
}

TEST_CASE("MOSS: reward rescaling") {
  Moss moss(3, 10);
  moss.update(0, -1.0);
  moss.update(1, 1.0);
  moss.update(2, 0.0);
  CHECK(moss.reward_sum(0) == 0.0);
  CHECK(moss.reward_sum(1) == 1.0);
  CHECK(moss.reward_sum(2) == 0.5);
  CHECK(moss.pulls(2) == 1);
  CHECK_THROWS_AS(moss.update(0, 1.5), std::domain_error);
  CHECK_THROWS_AS(moss.update(0, -1.01), std::domain_error);
}

TEST_CASE("MOSS: tree selection matches a linear argmax") {
  Rng rng(21);
  Moss moss(37, 5000);
  for (int t = 0; t < 5000; ++t) {
    const std::size_t arm = moss.select();
    std::size_t best = 0;
    for (std::size_t k = 1; k < moss.arm_count(); ++k) {
      if (moss.index(k) > moss.index(best)) best = k;
    }
    REQUIRE(arm == best);
    moss.update(arm, rng.uniform(-1, 1) * (arm % 5 == 0 ? 1.0 : 0.5));
  }
}

TEST_CASE("MOSS: regret on a two-armed Bernoulli instance") {
  const std::int64_t horizon = 10000;
  const double means[] = {0.6, 0.4};
  double total = 0.0;
  for (int seed = 0; seed < 50; ++seed) {
    Rng rng(1000 + seed);
    Moss moss(2, horizon);
    std::int64_t bad = 0;
    for (std::int64_t t = 0; t < horizon; ++t) {
      const std::size_t arm = moss.select();
      moss.update(arm, rng.bernoulli(means[arm]) ? 1.0 : -1.0);
      bad += arm == 1;
    }
    // Raw rewards in {-1, 1}: the gap of 0.2 in success rate is 0.4 in reward.
    total += 0.4 * static_cast<double>(bad);
  }
  const double mean = total / 50;
  CHECK(mean <= 98 * std::sqrt(2.0 * horizon));
  CHECK(mean <= 0.05 * 98 * std::sqrt(2.0 * horizon));
}

TEST_CASE("Exp3.FPA: tuning") {
  CHECK(exp3fpa_gamma(16, 10000) ==
        doctest::Approx(std::sqrt(std::log(16.0) / ((std::numbers::e - 1) * 1e4))));
  CHECK(exp3fpa_gamma(16, 10000) == doctest::Approx(0.0127).epsilon(5e-3));
  CHECK(exp3fpa_gamma(1, 1) == 0.5);
  CHECK(exp3fpa_gamma(1, 1000) > 0.0);
  CHECK(exp3fpa_gamma(1, 1000) == exp3fpa_gamma(2, 1000));
  CHECK(exp3fpa_gamma(16, 1000000000) < 1e-4);
}

TEST_CASE("Exp3.FPA: sampling distribution") {
  const Exp3Fpa single(BidGrid({0.0}), 0.3);
  CHECK(single.distribution() == std::vector<double>{1.0});

  const Exp3Fpa two(BidGrid({0.0, 0.2, 0.8}), 0.1);
  const std::vector<double> p = two.distribution();
  CHECK(p[0] == doctest::Approx(0.3));
  CHECK(p[2] == doctest::Approx(0.3 + 0.1));

  Exp3Fpa learner(BidGrid({0.0, 0.2, 0.8}), 1e-12);
  learner.set_log_weights({0.0, std::log(2.0), std::log(3.0)});
  const std::vector<double> q = learner.distribution();
  CHECK(q[0] == doctest::Approx(1.0 / 6));
  CHECK(q[1] == doctest::Approx(2.0 / 6));
  CHECK(q[2] == doctest::Approx(3.0 / 6));
}

TEST_CASE("Exp3.FPA: two-point grid example") {
  // Grid {0.2, 0.8} needs 0 as its first point; 0 carries weight 0 through
  // a very negative log weight, so the remaining two are (0.45, 0.55).
  Exp3Fpa learner(BidGrid({0.0, 0.2, 0.8}), 0.1);
  learner.set_log_weights({-1e4, 0.0, 0.0});
  const std::vector<double> p = learner.distribution();
  CHECK(p[0] == doctest::Approx(0.0));
  CHECK(p[1] == doctest::Approx(0.45));
  CHECK(p[2] == doctest::Approx(0.55));
}

TEST_CASE("Exp3.FPA: estimator on a won and a lost round") {
  Exp3Fpa learner(BidGrid({0.0, 0.2, 0.8}), 1e-9);
  learner.set_log_weights({-1e4, 0.0, 0.0});  // p ~ (0, 0.5, 0.5)
  const AuctionRound won(1.0, 0.5);
  const std::vector<double> g =
      learner.reward_estimates(2, observe(won, 0.8, FeedbackModel::kTransparent));
  CHECK(g[2] == doctest::Approx((1.0 - 0.8) / 0.5));
  CHECK(g[1] == 0.0);
  CHECK(g[0] == 0.0);

  const AuctionRound lost(1.0, 0.9);
  const std::vector<double> before = learner.log_weights();
  const Observation obs = observe(lost, 0.8, FeedbackModel::kTransparent);
  for (double x : learner.reward_estimates(2, obs)) CHECK(x == 0.0);
  learner.update(2, obs);
  CHECK(learner.log_weights() == before);
}

TEST_CASE("Exp3.FPA: unbiased and second moment below 1 on small grids") {
  Rng rng(77);
  for (int n = 0; n < 300; ++n) {
    std::vector<double> points{0.0};
    const std::size_t size = 1 + rng.below(6);
    while (points.size() < size) points.push_back(rng.uniform());
    Exp3Fpa learner(BidGrid(points), rng.uniform(0.01, 0.5));
    std::vector<double> logw(learner.grid().size());
    for (double& l : logw) l = rng.uniform(-4, 4);
    learner.set_log_weights(logw);
    const std::vector<double> p = learner.distribution();
    const AuctionRound r(rng.uniform(), rng.bernoulli(0.3)
                                            ? learner.grid()[rng.below(p.size())]
                                            : rng.uniform());
    std::vector<double> mean(p.size(), 0.0);
    double moment = 0.0;
    for (std::size_t b = 0; b < p.size(); ++b) {
      const std::vector<double> g = learner.reward_estimates(
          b, observe(r, learner.grid()[b], FeedbackModel::kTransparent));
      for (std::size_t x = 0; x < p.size(); ++x) {
        mean[x] += p[b] * g[x];
        moment += p[b] * p[x] * g[x] * g[x];
      }
    }
    for (std::size_t x = 0; x < p.size(); ++x) {
      CHECK(std::abs(mean[x] - utility(r, learner.grid()[x])) <= 1e-12);
    }
    CHECK(moment <= 1.0 + 1e-12);
  }
}

TEST_CASE("Exp3.FPA: injected estimator bug is biased") {
  // Differs from the correct estimator only when M sits on a grid point.
  Exp3Fpa learner(BidGrid({0.0, 0.5, 1.0}), 0.2, /*strict_suffix=*/true);
  const std::vector<double> p = learner.distribution();
  const AuctionRound r(0.9, 0.5);
  double mean = 0.0;
  for (std::size_t b = 0; b < 3; ++b) {
    mean += p[b] * learner.reward_estimates(
                       b, observe(r, learner.grid()[b], FeedbackModel::kTransparent))[1];
  }
  CHECK(std::abs(mean - utility(r, 0.5)) > 1e-3);
}

TEST_CASE("Exp3.FPA: hidden competing bid is a contract violation") {
  Exp3Fpa learner(BidGrid({0.0, 0.5}), 0.2);
  const Observation obs = observe({0.9, 0.25}, 0.5, FeedbackModel::kSemiTransparent);
  CHECK_THROWS_AS(learner.update(1, obs), std::logic_error);
}

TEST_CASE("Exp3.FPA: suffix masses and incremental update") {
  Rng rng(5);
  const BidGrid grid = BidGrid::uniform(300);
  Exp3Fpa learner(grid, 0.05);
  for (int t = 0; t < 2000; ++t) {
    const AuctionRound r(rng.uniform(), rng.uniform());
    const std::size_t b = learner.sample(rng);
    learner.update(b, observe(r, grid[b], FeedbackModel::kTransparent));
  }
  const std::vector<double> p = learner.distribution();
  double tail = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) {
    tail += p[k];
    CHECK(learner.suffix_mass(k) == doctest::Approx(tail).epsilon(1e-10));
    CHECK(learner.suffix_mass(k) >= learner.gamma());
  }
  CHECK(tail == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Exp3.FPA: sampling frequencies follow the distribution") {
  Rng rng(13);
  Exp3Fpa learner(BidGrid::uniform(5), 0.2);
  learner.set_log_weights({0.0, 1.0, -1.0, 0.5, 0.0});
  const std::vector<double> p = learner.distribution();
  std::vector<int> counts(5, 0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++counts[learner.sample(rng)];
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(std::abs(counts[k] / double(n) - p[k]) < 4 * std::sqrt(p[k] / n));
  }
}

TEST_CASE("Exp3.FPA: long runs stay finite and normalized") {
  Rng rng(8);
  const BidGrid grid = BidGrid::uniform(64);
  Exp3Fpa learner(grid, 0.01);
  for (int t = 0; t < 1000000; ++t) {
    // Always-winning top bid drives log weights up without bound.
    const AuctionRound r(1.0, rng.uniform(0.0, 0.1));
    const std::size_t b = learner.sample(rng);
    learner.update(b, observe(r, grid[b], FeedbackModel::kTransparent));
  }
  const std::vector<double> p = learner.distribution();
  double total = 0.0;
  for (double x : p) {
    CHECK(std::isfinite(x));
    total += x;
  }
  for (double l : learner.log_weights()) CHECK(std::isfinite(l));
  CHECK(std::abs(total - 1.0) <= 1e-12);
}
