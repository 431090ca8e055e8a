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

#include "fpa/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fpa {

RegretTrace simulate(Environment& env, BidderPolicy& policy, FeedbackModel feedback,
                     std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("simulate: horizon < 1");
  RegretTrace trace;
  const auto n = static_cast<std::size_t>(horizon);
  trace.rounds.reserve(n);
  trace.bids.reserve(n);
  trace.utilities.reserve(n);
  trace.cumulative.reserve(n);
  double total = 0.0;
  for (std::int64_t t = 0; t < horizon; ++t) {
    const AuctionRound round = env.next_round();
    const double bid = policy.next_bid();
    const double u = utility(round, bid);
    policy.observe(observe(round, bid, feedback));
    total += u;
    trace.rounds.push_back(round);
    trace.bids.push_back(bid);
    trace.utilities.push_back(u);
    trace.cumulative.push_back(total);
  }
  return trace;
}

double cumulative_utility(std::span<const AuctionRound> rounds, double bid) {
  double total = 0.0;
  for (const AuctionRound& r : rounds) total += utility(r, bid);
  return total;
}

HindsightOptimum hindsight_best(std::span<const AuctionRound> rounds) {
  if (rounds.empty()) throw std::domain_error("hindsight_best: no rounds");
  std::vector<std::size_t> order(rounds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return compare_competing(rounds[a], rounds[b]) < 0;
  });

  // Sweep the distinct competing bids upwards; at candidate b every round
  // with M <= b is won.
  double won_valuations = 0.0;
  double won_count = 0.0;
  std::size_t i = 0;
  while (i < order.size() && compare_bid(0.0, rounds[order[i]]) >= 0) {
    won_valuations += rounds[order[i]].valuation;
    won_count += 1.0;
    ++i;
  }
  HindsightOptimum best{0.0, won_valuations};
  while (i < order.size()) {
    const AuctionRound& head = rounds[order[i]];
    std::size_t j = i;
    while (j < order.size() && compare_competing(rounds[order[j]], head) == 0) {
      won_valuations += rounds[order[j]].valuation;
      won_count += 1.0;
      ++j;
    }
    const double value = won_valuations - won_count * head.competing_bid;
    if (value > best.value) best = {head.competing_bid, value};
    i = j;
  }
  return best;
}

double pseudo_benchmark(const EnvironmentKind& kind, std::int64_t horizon) {
  return cumulative_expected_utility(kind, horizon).maximize().value;
}

double expected_utility_sum(const EnvironmentKind& kind, std::span<const double> bids) {
  double total = 0.0;
  if (const auto* s = std::get_if<SmoothSchedule>(&kind)) {
    std::vector<PiecewiseQuadratic> curves;
    for (const RectMixture& m : s->phases) {
      curves.push_back(expected_utility_curve(m));
    }
    const auto n = static_cast<std::int64_t>(curves.size());
    for (std::size_t t = 0; t < bids.size(); ++t) {
      const auto phase = (static_cast<std::int64_t>(t) / s->block_length) % n;
      total += curves[static_cast<std::size_t>(phase)](bids[t]);
    }
    return total;
  }
  const PiecewiseQuadratic curve = expected_utility_curve(kind);
  for (double b : bids) total += curve(b);
  return total;
}

double regret(const RegretTrace& trace, RegretMode mode, const EnvironmentKind& kind) {
  if (mode == RegretMode::kHindsight) {
    return hindsight_best(trace.rounds).value - trace.utility_sum();
  }
  return pseudo_benchmark(kind, trace.horizon()) - expected_utility_sum(kind, trace.bids);
}

double eps_sample_deviation(std::span<const double> samples,
                            const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::domain_error("eps_sample_deviation: empty");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  // D(x) = F_n(x) - F(x) decreases between samples, so its extremes are at
  // D(s-) and D(s) for samples s, or the limits 0 at +-infinity.
  double hi = 0.0;
  double lo = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double f = cdf(sorted[i]);
    const double before = static_cast<double>(i) / n - f;
    const double after = static_cast<double>(j) / n - f;
    hi = std::max({hi, before, after});
    lo = std::min({lo, before, after});
    i = j;
  }
  return hi - lo;
}

double eps_sample_deviation(std::span<const double> samples,
                            const EnvironmentKind& kind) {
  // Fail early for variants without a closed-form law.
  (void)competing_bid_cdf(kind, 0.0);
  return eps_sample_deviation(samples,
                              [&kind](double m) { return competing_bid_cdf(kind, m); });
}

SlopeFit slope_estimate(std::span<const double> horizons,
                        std::span<const double> regrets) {
  if (horizons.size() != regrets.size()) {
    throw std::invalid_argument("slope_estimate: size mismatch");
  }
  if (horizons.size() < 4) {
    throw std::invalid_argument("slope_estimate: need at least 4 horizons");
  }
  SlopeFit fit;
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (!(horizons[i] > 0.0) || !(regrets[i] > 0.0)) {
      throw std::invalid_argument("slope_estimate: values must be positive");
    }
    fit.log_horizons.push_back(std::log2(horizons[i]));
    fit.log_regrets.push_back(std::log2(regrets[i]));
  }
  const double n = static_cast<double>(horizons.size());
  const double mx =
      std::accumulate(fit.log_horizons.begin(), fit.log_horizons.end(), 0.0) / n;
  const double my =
      std::accumulate(fit.log_regrets.begin(), fit.log_regrets.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    sxx += (fit.log_horizons[i] - mx) * (fit.log_horizons[i] - mx);
    sxy += (fit.log_horizons[i] - mx) * (fit.log_regrets[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw std::invalid_argument("slope_estimate: horizons must differ");
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    const double r =
        fit.log_regrets[i] - (fit.intercept + fit.slope * fit.log_horizons[i]);
    sse += r * r;
  }
  fit.residual_rms = std::sqrt(sse / n);
  return fit;
}

double discretization_gap(const EnvironmentKind& kind, const BidGrid& grid) {
  const PiecewiseQuadratic curve = expected_utility_curve(kind);
  double on_grid = curve(grid[0]);
  for (double x : grid.points()) on_grid = std::max(on_grid, curve(x));
  return curve.maximize().value - on_grid;
}

double discretization_slack(std::span<const AuctionRound> rounds, const BidGrid& grid,
                            double bid) {
  const std::size_t k = grid.lookup(bid);
  const double x = grid[k];
  const double next = grid.cell_upper(k);
  // Termwise u_t(b) <= u_t(x_k) + 1{x_k < M_t < x_{k+1}}, and both sides are
  // summed in the same order, so the rounded totals keep the inequality.
  double bound = 0.0;
  double at_bid = 0.0;
  for (const AuctionRound& r : rounds) {
    const bool inside = compare_bid(x, r) < 0 && (next > 1.0 || compare_bid(next, r) > 0);
    bound += utility(r, x) + (inside ? 1.0 : 0.0);
    at_bid += utility(r, bid);
  }
  return bound - at_bid;
}

}  // namespace fpa
