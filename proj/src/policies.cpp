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

#include "fpa/policies.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fpa {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::int64_t ceil_sqrt(std::int64_t value) { return ceil_rational_power(value, 1, 2); }

}  // namespace

std::int64_t ceil_rational_power(std::int64_t value, int num, int den) {
  if (value < 0 || num < 0 || den < 1) {
    throw std::invalid_argument("ceil_rational_power: bad arguments");
  }
  using boost::multiprecision::cpp_int;
  const cpp_int target =
      boost::multiprecision::pow(cpp_int(value), static_cast<unsigned>(num));
  auto power = [den](std::int64_t n) -> cpp_int {
    return boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(den));
  };
  auto n = static_cast<std::int64_t>(
      std::ceil(std::pow(static_cast<double>(value), static_cast<double>(num) / den)));
  n = std::max<std::int64_t>(n, 0);
  while (power(n) < target) ++n;
  while (n > 0 && power(n - 1) >= target) --n;
  return n;
}

std::vector<double> collect_bids(std::span<const double> samples) {
  if (samples.empty()) throw std::domain_error("collect_bids: no samples");
  const auto t0 = static_cast<std::int64_t>(samples.size());
  // order[0] = 0 stands for M^(0); order[j] = M^(j).
  std::vector<double> order(samples.size() + 1, 0.0);
  std::copy(samples.begin(), samples.end(), order.begin() + 1);
  std::sort(order.begin() + 1, order.end());
  if (order.back() == 0.0) return {0.0};

  const std::int64_t step = ceil_sqrt(t0);
  std::vector<double> out{0.0};
  std::int64_t j = 0;
  for (;;) {
    // Last index holding the current point.
    const double current = out.back();
    j = static_cast<std::int64_t>(std::upper_bound(order.begin(), order.end(), current) -
                                  order.begin()) -
        1;
    const std::int64_t next = std::min(j + step, t0);
    out.push_back(order[static_cast<std::size_t>(next)]);
    if (next == t0) break;
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// -- CoBa -----------------------------------------------------------------------

CollectingBandit::CollectingBandit(std::int64_t horizon)
    : horizon_(horizon),
      exploration_rounds_(std::min(horizon, ceil_rational_power(horizon, 2, 3))) {
  if (horizon < 1) throw std::invalid_argument("CoBa: horizon < 1");
  samples_.reserve(static_cast<std::size_t>(exploration_rounds_));
}

double CollectingBandit::next_bid() {
  if (!learner_) return 0.0;
  pending_arm_ = learner_->select();
  return candidates_[pending_arm_];
}

void CollectingBandit::observe(const Observation& obs) {
  if (!learner_) {
    if (obs.won) {
      samples_.push_back(0.0);
    } else if (obs.competing_bid) {
      samples_.push_back(*obs.competing_bid);
    } else {
      throw std::logic_error(
          "CoBa: competing bid hidden on a lost round; needs semi-transparent "
          "or richer feedback");
    }
    if (static_cast<std::int64_t>(samples_.size()) == exploration_rounds_) {
      candidates_ = collect_bids(samples_);
      learner_.emplace(candidates_.size(),
                       std::max<std::int64_t>(1, horizon_ - exploration_rounds_));
    }
    return;
  }
  learner_->update(pending_arm_, reconstruct_utility(obs, candidates_[pending_arm_]));
}

// -- W.T.FPA --------------------------------------------------------------------

WindowedTransparent::WindowedTransparent(std::int64_t horizon, Rng rng)
    : horizon_(horizon), rng_(rng) {
  if (horizon < 1) throw std::invalid_argument("W.T.FPA: horizon < 1");
}

void WindowedTransparent::start_epoch() {
  ++epoch_;
  const std::int64_t nominal = std::int64_t{1} << (epoch_ - 1);
  epoch_left_ = std::min(nominal, horizon_ - played_);
  std::vector<double> points{0.0};
  points.insert(points.end(), seen_.begin(), seen_.end());
  BidGrid grid(std::move(points));
  const double gamma = exp3fpa_gamma(grid.size(), nominal);
  learner_.emplace(std::move(grid), gamma);
}

std::span<const double> WindowedTransparent::grid() const {
  if (!learner_) return {};
  return learner_->grid().points();
}

double WindowedTransparent::next_bid() {
  if (epoch_left_ == 0) start_epoch();
  pending_index_ = learner_->sample(rng_);
  return learner_->grid()[pending_index_];
}

void WindowedTransparent::observe(const Observation& obs) {
  if (!obs.competing_bid) {
    throw std::logic_error("W.T.FPA: competing bid hidden; needs transparent");
  }
  learner_->update(pending_index_, obs);
  seen_.push_back(*obs.competing_bid);
  ++played_;
  --epoch_left_;
}

// -- Discretized learners ---------------------------------------------------------

DiscretizedBandit::DiscretizedBandit(std::int64_t horizon, int exponent_num,
                                     int exponent_den)
    : grid_(BidGrid::uniform(static_cast<std::size_t>(
          ceil_rational_power(horizon, exponent_num, exponent_den) + 1))),
      learner_(grid_.size(), horizon) {}

double DiscretizedBandit::next_bid() {
  pending_arm_ = learner_.select();
  return grid_[pending_arm_];
}

void DiscretizedBandit::observe(const Observation& obs) {
  learner_.update(pending_arm_, reconstruct_utility(obs, grid_[pending_arm_]));
}

namespace {

BidGrid sqrt_grid(std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon < 1");
  return BidGrid::uniform(static_cast<std::size_t>(ceil_sqrt(horizon) + 1));
}

}  // namespace

DiscretizedTransparent::DiscretizedTransparent(std::int64_t horizon, Rng rng)
    : rng_(rng),
      learner_(sqrt_grid(horizon),
               exp3fpa_gamma(static_cast<std::size_t>(ceil_sqrt(horizon) + 1), horizon)) {
}

double DiscretizedTransparent::next_bid() {
  pending_index_ = learner_.sample(rng_);
  return learner_.grid()[pending_index_];
}

void DiscretizedTransparent::observe(const Observation& obs) {
  learner_.update(pending_index_, obs);
}

FixedGridExp3::FixedGridExp3(BidGrid grid, double gamma, Rng rng)
    : rng_(rng), learner_(std::move(grid), gamma) {}

double FixedGridExp3::next_bid() {
  pending_index_ = learner_.sample(rng_);
  return learner_.grid()[pending_index_];
}

void FixedGridExp3::observe(const Observation& obs) {
  learner_.update(pending_index_, obs);
}

FixedBid::FixedBid(double bid) : bid_(bid) {
  if (!(bid >= 0.0 && bid <= 1.0)) {
    throw std::invalid_argument("FixedBid: bid must lie in [0, 1]");
  }
}

// -- Named specs ----------------------------------------------------------------

std::string policy_name(const PolicySpec& spec) {
  std::ostringstream out;
  std::visit(
      Overloaded{
          [&](const CoBaSpec&) { out << "CoBa"; },
          [&](const WtfpaSpec&) { out << "WTFPA"; },
          [&](const DiscretizedBanditSpec& s) {
            out << "DiscretizedBandit";
            if (s.exponent_num != 2 || s.exponent_den != 3) {
              out << "(exp=" << s.exponent_num << "/" << s.exponent_den << ")";
            }
          },
          [&](const DiscretizedTransparentSpec&) { out << "DiscretizedTransparent"; },
          [&](const FixedBidSpec& s) { out << "FixedBid(" << s.bid << ")"; },
      },
      spec);
  return out.str();
}

FeedbackModel required_feedback(const PolicySpec& spec) {
  return std::visit(
      Overloaded{
          [](const CoBaSpec&) { return FeedbackModel::kSemiTransparent; },
          [](const WtfpaSpec&) { return FeedbackModel::kTransparent; },
          [](const DiscretizedBanditSpec&) { return FeedbackModel::kBandit; },
          [](const DiscretizedTransparentSpec&) { return FeedbackModel::kTransparent; },
          [](const FixedBidSpec&) { return FeedbackModel::kBandit; },
      },
      spec);
}

void check_compatible(const PolicySpec& spec, FeedbackModel feedback) {
  const FeedbackModel needed = required_feedback(spec);
  // Enumerators are declared from most to least informative.
  if (static_cast<int>(feedback) > static_cast<int>(needed)) {
    throw std::invalid_argument(
        policy_name(spec) + " needs " + std::string(to_string(needed)) +
        " or richer feedback, got " + std::string(to_string(feedback)));
  }
}

std::unique_ptr<BidderPolicy> make_policy(const PolicySpec& spec, std::int64_t horizon,
                                          Rng rng) {
  return std::visit(
      Overloaded{
          [&](const CoBaSpec&) -> std::unique_ptr<BidderPolicy> {
            return std::make_unique<CollectingBandit>(horizon);
          },
          [&](const WtfpaSpec&) -> std::unique_ptr<BidderPolicy> {
            return std::make_unique<WindowedTransparent>(horizon, rng);
          },
          [&](const DiscretizedBanditSpec& s) -> std::unique_ptr<BidderPolicy> {
            return std::make_unique<DiscretizedBandit>(horizon, s.exponent_num,
                                                       s.exponent_den);
          },
          [&](const DiscretizedTransparentSpec&) -> std::unique_ptr<BidderPolicy> {
            return std::make_unique<DiscretizedTransparent>(horizon, rng);
          },
          [&](const FixedBidSpec& s) -> std::unique_ptr<BidderPolicy> {
            return std::make_unique<FixedBid>(s.bid);
          },
      },
      spec);
}

}  // namespace fpa
