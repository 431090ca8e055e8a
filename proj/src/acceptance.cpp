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

#include "fpa/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fpa/bench.hpp"

namespace fpa {

namespace {

std::string num(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Two alternating rectangle mixtures; sigma = 1/4.
SmoothSchedule smooth_mixtures() {
  RectMixture a{{{0.5, {0.6, 1.0}, {0.0, 0.5}}, {0.5, {0.3, 0.9}, {0.2, 0.7}}}};
  RectMixture b{{{1.0, {0.5, 1.0}, {0.1, 0.6}}}};
  return SmoothSchedule{{a, b}, 1};
}

std::vector<EnvironmentKind> closed_form_variants() {
  return {
      SlabBase{},
      SlabPerturbed{0.33, 0.03},
      SlabPerturbed{0.5, 0.25},
      TwoSquare{0.0, Tilt::kNone},
      TwoSquare{0.1, Tilt::kPlus},
      TwoSquare{0.45, Tilt::kMinus},
      RectMixture{{{1.0, {0.0, 1.0}, {0.0, 1.0}}}},
      smooth_mixtures().phases[0],
      smooth_mixtures().phases[1],
  };
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

// 1 ---------------------------------------------------------------------------

CriterionResult check_hindsight_oracle(const AcceptanceOptions&) {
  constexpr int kInstances = 500;
  constexpr int kGrid = 100000;
  Rng rng(0x5eed0001);
  double worst = 0.0;
  int failures = 0;
  std::vector<double> vs;
  std::vector<double> ms;
  for (int n = 0; n < kInstances; ++n) {
    const int horizon = 1 + static_cast<int>(rng.below(50));
    std::vector<AuctionRound> rounds;
    vs.clear();
    ms.clear();
    for (int t = 0; t < horizon; ++t) {
      vs.push_back(rng.uniform());
      ms.push_back(rng.uniform());
      rounds.emplace_back(vs.back(), ms.back());
    }
    const HindsightOptimum opt = hindsight_best(rounds);
    // Direct evaluation, independent of the candidate sweep.
    auto total = [&](double b) {
      double s = 0.0;
      for (int t = 0; t < horizon; ++t) s += b >= ms[t] ? vs[t] - b : 0.0;
      return s;
    };
    double dense = -1e300;
    for (int i = 0; i < kGrid; ++i) dense = std::max(dense, total(i / (kGrid - 1.0)));
    for (double m : ms) dense = std::max(dense, total(m));
    const double err = std::abs(dense - opt.value);
    const double at_bid = std::abs(total(opt.bid) - opt.value);
    worst = std::max({worst, err, at_bid});
    if (err > 1e-9 || at_bid > 1e-9) ++failures;
  }
  return {failures == 0, std::to_string(kInstances) +
                             " instances, max |candidate optimum - dense max| = " +
                             num(worst) + " (limit 1e-09)"};
}

// 2 ---------------------------------------------------------------------------

CriterionResult check_sampler_fidelity(const AcceptanceOptions&) {
  constexpr int kSamples = 1000000;
  constexpr int kBids = 50;
  struct Case {
    EnvironmentKind kind;
    double anchor;
    double anchor_value;
  };
  const double eps = 0.03;
  const std::vector<Case> cases = {
      {TwoSquare{0.0, Tilt::kNone}, 1.0 / 16.0, 1.0 / 128.0},
      {SlabBase{}, 0.5, 1.0 / 8.0},
      {SlabPerturbed{0.33, eps}, 0.33, 1.0 / 8.0 + eps / 144.0},
  };
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    Environment env({cases[c].kind, 0xf1de11 + c});
    std::vector<double> vs(kSamples);
    std::vector<double> ms(kSamples);
    for (int i = 0; i < kSamples; ++i) {
      const AuctionRound r = env.next_round();
      vs[i] = r.valuation;
      ms[i] = r.competing_bid;
    }
    const PiecewiseQuadratic curve = expected_utility_curve(cases[c].kind);
    double worst_z = 0.0;
    int misses = 0;
    for (int k = 0; k < kBids; ++k) {
      const double b = k / (kBids - 1.0);
      double s = 0.0;
      double ss = 0.0;
      for (int i = 0; i < kSamples; ++i) {
        const double u = b >= ms[i] ? vs[i] - b : 0.0;
        s += u;
        ss += u * u;
      }
      const double mean = s / kSamples;
      const double var = std::max(0.0, ss / kSamples - mean * mean);
      const double se = std::sqrt(var / kSamples);
      const double diff = std::abs(mean - curve(b));
      if (diff > 4.0 * se + 1e-12) ++misses;
      if (se > 0.0) worst_z = std::max(worst_z, diff / se);
    }
    const Maximum best = curve.maximize();
    const bool anchor_ok =
        std::abs(curve(cases[c].anchor) - cases[c].anchor_value) <= 1e-15 &&
        std::abs(best.value - cases[c].anchor_value) <= 1e-15;
    ok = ok && misses == 0 && anchor_ok;
    detail << environment_name(cases[c].kind) << ": " << misses
           << " of 50 bids outside 4 SE (max z " << num(worst_z, 3) << "), optimum "
           << num(best.value, 10) << " vs expected " << num(cases[c].anchor_value, 10)
           << (anchor_ok ? "" : " MISMATCH");
    if (c + 1 < cases.size()) detail << "\n";
  }
  return {ok, detail.str()};
}

// 3 ---------------------------------------------------------------------------

CriterionResult check_exp3fpa_bound(const AcceptanceOptions& options) {
  constexpr std::int64_t kHorizon = 10000;
  constexpr int kSeeds = 50;
  const BidGrid grid = BidGrid::uniform(16);
  const double gamma = exp3fpa_gamma(grid.size(), kHorizon);
  std::vector<double> regrets(kSeeds);
  parallel_for(kSeeds, options.threads, [&](std::size_t s) {
    Environment env({SlabBase{}, cell_seed(0xe3f0, kHorizon, static_cast<int>(s))});
    FixedGridExp3 policy(grid, gamma, Rng(0xe3f1).split(s));
    const RegretTrace trace =
        simulate(env, policy, FeedbackModel::kTransparent, kHorizon);
    double best = -1e300;
    for (double x : grid.points())
      best = std::max(best, cumulative_utility(trace.rounds, x));
    regrets[s] = best - trace.utility_sum();
  });
  const double bound =
      2.0 * std::sqrt((std::numbers::e - 1.0) * std::log(16.0) * kHorizon);
  const double mean = mean_of(regrets);
  return {mean <= bound,
          "SlabBase, transparent, 16-point grid, T=10000, 50 seeds: "
          "mean regret vs best grid bid " +
              num(mean) + " (limit " + num(bound) + ")"};
}

// 4 ---------------------------------------------------------------------------

CriterionResult check_rate_slopes(const AcceptanceOptions& options) {
  struct Case {
    std::string label;
    EnvironmentKind env;
    FeedbackModel feedback;
    PolicySpec policy;
    double lo;
    double hi;
    bool gating;
  };
  const std::vector<Case> cases = {
      {"CoBa", SlabBase{}, FeedbackModel::kSemiTransparent, CoBaSpec{}, 0.45, 0.80, true},
      {"WTFPA", SlabBase{}, FeedbackModel::kTransparent, WtfpaSpec{}, -1e9, 0.65, true},
      {"DiscretizedBandit (T^(1/3) grid)", smooth_mixtures(), FeedbackModel::kBandit,
       DiscretizedBanditSpec{1, 3}, -1e9, 0.80, true},
      {"DiscretizedBandit (T^(2/3) grid, informational)", smooth_mixtures(),
       FeedbackModel::kBandit, DiscretizedBanditSpec{2, 3}, -1e9, 0.80, false},
      {"DiscretizedTransparent", smooth_mixtures(), FeedbackModel::kTransparent,
       DiscretizedTransparentSpec{}, -1e9, 0.65, true},
  };
  std::vector<std::int64_t> horizons;
  for (int k = 12; k <= 17; ++k) horizons.push_back(std::int64_t{1} << k);

  bool ok = true;
  std::ostringstream detail;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    ExperimentConfig config;
    config.environment = cases[c].env;
    config.feedback = cases[c].feedback;
    config.policy = cases[c].policy;
    config.horizons = horizons;
    config.seed = 0x51095 + c;
    config.replicates = 30;
    config.regret_mode = RegretMode::kPseudo;
    config.threads = options.threads;
    const std::vector<ResultRow> rows = run_experiment(config);
    const std::vector<GroupReport> groups = summarize(rows);
    const SlopeFit& fit = *groups.front().fit;
    const bool pass = fit.slope >= cases[c].lo && fit.slope <= cases[c].hi;
    if (cases[c].gating) ok = ok && pass;
    detail << cases[c].label << ": slope " << num(fit.slope, 4) << " (";
    if (cases[c].lo > -1e8)
      detail << "range [" << cases[c].lo << ", " << cases[c].hi << "]";
    else
      detail << "limit " << cases[c].hi;
    detail << (cases[c].gating ? "" : ", not gating") << ") "
           << (pass ? "ok" : "out of range") << "; mean regret";
    for (const HorizonStats& s : groups.front().horizons) detail << " " << num(s.mean, 4);
    if (c + 1 < cases.size()) detail << "\n";
  }
  return {ok, detail.str()};
}

// 5 ---------------------------------------------------------------------------

CriterionResult check_linear_lower_bounds(const AcceptanceOptions& options) {
  bool ok = true;
  std::ostringstream detail;
  auto mean_ratio = [&](const EnvironmentKind& env, FeedbackModel feedback,
                        const PolicySpec& policy, std::int64_t horizon, int replicates,
                        std::uint64_t seed) {
    ExperimentConfig config;
    config.environment = env;
    config.feedback = feedback;
    config.policy = policy;
    config.horizons = {horizon};
    config.seed = seed;
    config.replicates = replicates;
    config.regret_mode = RegretMode::kHindsight;
    config.threads = options.threads;
    std::vector<double> ratios;
    for (const ResultRow& r : run_experiment(config)) {
      ratios.push_back(r.regret / static_cast<double>(horizon));
    }
    return mean_of(ratios);
  };

  for (std::int64_t horizon : {std::int64_t{1000}, std::int64_t{10000}}) {
    const double r = mean_ratio(NeedleBandit{}, FeedbackModel::kBandit,
                                DiscretizedBanditSpec{}, horizon, 30, 0x4eed);
    ok = ok && r >= 0.02;
    detail << "NeedleBandit, DiscretizedBandit, bandit, T=" << horizon << ": mean R_T/T "
           << num(r) << " (limit >= 0.02)\n";
  }
  const std::vector<PolicySpec> policies = {CoBaSpec{},
                                            WtfpaSpec{},
                                            DiscretizedBanditSpec{},
                                            DiscretizedBanditSpec{1, 3},
                                            DiscretizedTransparentSpec{},
                                            FixedBidSpec{0.5},
                                            FixedBidSpec{0.6},
                                            FixedBidSpec{2.0 / 3.0}};
  for (std::size_t p = 0; p < policies.size(); ++p) {
    const double r = mean_ratio(ShrinkingAdversary{}, FeedbackModel::kFull, policies[p],
                                10000, 10, 0x5a1 + p);
    ok = ok && r >= 0.02;
    detail << "ShrinkingAdversary, " << policy_name(policies[p])
           << ", full, T=10000: mean R_T/T " << num(r) << " (limit >= 0.02)";
    if (p + 1 < policies.size()) detail << "\n";
  }
  return {ok, detail.str()};
}

// 6 ---------------------------------------------------------------------------

CriterionResult check_smoothness_properties(const AcceptanceOptions&) {
  std::ostringstream detail;
  bool ok = true;

  // (a) interval deviation of competing-bid samples.
  {
    constexpr int kReplicates = 200;
    constexpr int kSamples = 10000;
    const double delta = 0.1;
    const double limit = 8.0 * std::sqrt(std::log(1.0 / delta) / kSamples);
    int within = 0;
    double worst = 0.0;
    std::vector<double> ms(kSamples);
    for (int r = 0; r < kReplicates; ++r) {
      Environment env({SlabBase{}, cell_seed(0x1e44a, kSamples, r)});
      for (double& m : ms) m = env.next_round().competing_bid;
      const double dev = eps_sample_deviation(ms, SlabBase{});
      worst = std::max(worst, dev);
      if (dev <= limit) ++within;
    }
    const bool pass = within >= 0.9 * kReplicates;
    ok = ok && pass;
    detail << "(a) interval deviation <= " << num(limit) << " in " << within
           << "/200 replicates (need >= 180), max " << num(worst) << "\n";
  }

  // (b) realized-sequence discretization inequality.
  {
    Rng rng(0x1e44b);
    int violations = 0;
    double least = 1e300;
    for (int n = 0; n < 1000; ++n) {
      std::vector<double> points;
      const int k = 1 + static_cast<int>(rng.below(8));
      for (int i = 0; i < k; ++i) points.push_back(rng.uniform());
      const BidGrid grid(points);
      const int horizon = 1 + static_cast<int>(rng.below(50));
      std::vector<AuctionRound> rounds;
      for (int t = 0; t < horizon; ++t) {
        double m = rng.uniform();
        if (rng.bernoulli(0.2)) m = grid[rng.below(grid.size())];
        rounds.emplace_back(rng.uniform(), m);
      }
      double b = rng.uniform();
      if (rng.bernoulli(0.2)) b = grid[rng.below(grid.size())];
      if (rng.bernoulli(0.2)) b = rounds[rng.below(rounds.size())].competing_bid;
      const double slack = discretization_slack(rounds, grid, b);
      least = std::min(least, slack);
      if (slack < 0.0) ++violations;
    }
    ok = ok && violations == 0;
    detail << "(b) discretization inequality: " << violations
           << " violations in 1000 instances, least slack " << num(least) << "\n";
  }

  // (c) Lipschitz constant of the expected utility curves.
  {
    constexpr int kPoints = 1001;
    int violations = 0;
    double worst_ratio = 0.0;
    for (const EnvironmentKind& kind : closed_form_variants()) {
      const PiecewiseQuadratic curve = expected_utility_curve(kind);
      const double constant = 2.0 / *smoothness_of(kind);
      std::vector<double> values(kPoints);
      for (int i = 0; i < kPoints; ++i) values[i] = curve(i / (kPoints - 1.0));
      for (int i = 0; i < kPoints; ++i) {
        for (int j = i + 1; j < kPoints; ++j) {
          const double dist = (j - i) / (kPoints - 1.0);
          const double change = std::abs(values[j] - values[i]);
          worst_ratio = std::max(worst_ratio, change / (constant * dist));
          if (change > constant * dist + 1e-12) ++violations;
        }
      }
    }
    ok = ok && violations == 0;
    detail << "(c) Lipschitz bound 2/sigma: " << violations
           << " violating pairs, max |dE|/((2/sigma)|db|) " << num(worst_ratio) << "\n";
  }

  // (d) discretization gap on uniform grids.
  {
    int violations = 0;
    double worst_ratio = 0.0;
    for (const EnvironmentKind& kind : closed_form_variants()) {
      const double sigma = *smoothness_of(kind);
      for (std::size_t n : {2, 3, 5, 11, 17, 33, 101, 1001}) {
        const BidGrid grid = BidGrid::uniform(n);
        const double gap = discretization_gap(kind, grid);
        const double limit = 3.0 * grid.mesh() / sigma;
        worst_ratio = std::max(worst_ratio, gap / limit);
        if (gap > limit + 1e-15 || gap < -1e-15) ++violations;
      }
    }
    ok = ok && violations == 0;
    detail << "(d) grid gap <= 3 mesh/sigma: " << violations
           << " violations, max gap/limit " << num(worst_ratio);
  }
  return {ok, detail.str()};
}

// 7 ---------------------------------------------------------------------------

CriterionResult check_estimator_bruteforce(const AcceptanceOptions& options) {
  Rng rng(0xb407e);
  double worst_bias = 0.0;
  double worst_moment = 0.0;
  double worst_sum = 0.0;
  int cases = 0;
  for (std::size_t size = 1; size <= 6; ++size) {
    for (int draw = 0; draw < 40; ++draw) {
      std::vector<double> points{0.0};
      while (points.size() < size) {
        const double x = rng.uniform();
        if (std::find(points.begin(), points.end(), x) == points.end()) {
          points.push_back(x);
        }
      }
      const BidGrid grid(points);
      const double gamma = 0.01 + 0.49 * rng.uniform();
      Exp3Fpa learner(grid, gamma, options.inject_estimator_bug);
      std::vector<double> logw(size);
      for (double& l : logw) l = rng.uniform(-3.0, 3.0);
      learner.set_log_weights(logw);
      const std::vector<double> p = learner.distribution();
      double total = 0.0;
      for (double x : p) total += x;
      worst_sum = std::max(worst_sum, std::abs(total - 1.0));

      for (int pair = 0; pair < 100; ++pair) {
        const double v = rng.uniform();
        const double m = rng.bernoulli(0.4) ? grid[rng.below(size)] : rng.uniform();
        const AuctionRound round(v, m);
        std::vector<double> mean(size, 0.0);
        double moment = 0.0;
        for (std::size_t b = 0; b < size; ++b) {
          const Observation obs = observe(round, grid[b], FeedbackModel::kTransparent);
          const std::vector<double> g = learner.reward_estimates(b, obs);
          for (std::size_t x = 0; x < size; ++x) {
            mean[x] += p[b] * g[x];
            moment += p[b] * p[x] * g[x] * g[x];
          }
        }
        for (std::size_t x = 0; x < size; ++x) {
          const double bias = std::abs(mean[x] - utility(round, grid[x]));
          worst_bias = std::isnan(bias) ? INFINITY : std::max(worst_bias, bias);
        }
        worst_moment = std::isnan(moment) ? INFINITY : std::max(worst_moment, moment);
        ++cases;
      }
    }
  }
  const bool ok =
      worst_bias <= 1e-12 && worst_moment <= 1.0 + 1e-12 && worst_sum <= 1e-12;
  return {ok, std::to_string(cases) +
                  " (grid, weights, V, M) cases: max |E[g(x)] - u(x)| " +
                  num(worst_bias) + " (limit 1e-12), max E[sum p g^2] " +
                  num(worst_moment) + " (limit 1), max |sum p - 1| " + num(worst_sum)};
}

// 8 ---------------------------------------------------------------------------

CriterionResult check_collect_bids(const AcceptanceOptions&) {
  Rng rng(0xc011ec7);
  int violations = 0;
  int all_zero_cases = 0;
  for (int n = 0; n < 1000; ++n) {
    const std::size_t t0 = 1 + rng.below(400);
    std::vector<double> samples(t0);
    const int style = n % 4;
    for (double& s : samples) {
      switch (style) {
        case 0:
          s = 0.0;
          break;
        case 1:
          s = static_cast<double>(rng.below(6)) / 10.0;
          break;
        case 2:
          s = rng.uniform();
          break;
        default:
          s = rng.bernoulli(0.5) ? 0.0 : static_cast<double>(rng.below(3)) / 4.0;
      }
    }
    const std::vector<double> out = collect_bids(samples);
    const auto step = static_cast<std::size_t>(
        ceil_rational_power(static_cast<std::int64_t>(t0), 1, 2));
    const double top = *std::max_element(samples.begin(), samples.end());
    bool good =
        !out.empty() && out.front() == 0.0 && out.size() <= step + 1 && out.back() == top;
    for (std::size_t k = 0; good && k + 1 < out.size(); ++k) {
      if (!(out[k] < out[k + 1])) good = false;
      const auto inside = std::count_if(samples.begin(), samples.end(), [&](double s) {
        return s > out[k] && s < out[k + 1];
      });
      if (static_cast<std::size_t>(inside) > step - 1) good = false;
    }
    if (top == 0.0) {
      ++all_zero_cases;
      if (out != std::vector<double>{0.0}) good = false;
    }
    if (!good) ++violations;
  }
  return {violations == 0, std::to_string(violations) +
                               " violations in 1000 sample sets (" +
                               std::to_string(all_zero_cases) + " all-zero)"};
}

// 9 ---------------------------------------------------------------------------

CriterionResult check_two_square_gap(const AcceptanceOptions&) {
  constexpr int kGrid = 10000;
  bool ok = true;
  std::ostringstream detail;
  for (double eps : {0.05, 0.1, 0.3}) {
    for (Tilt sign : {Tilt::kPlus, Tilt::kMinus}) {
      const PiecewiseQuadratic curve = expected_utility_curve(TwoSquare{eps, sign});
      const double best = curve.maximize().value;
      double least = 1e300;
      for (int i = 0; i < kGrid; ++i) {
        const double b = i / (kGrid - 1.0);
        const bool in_interval =
            sign == Tilt::kPlus ? b <= 0.125 : (b >= 0.25 && b <= 1.0);
        if (!in_interval) least = std::min(least, best - curve(b));
      }
      const bool pass = least >= eps / 128.0;
      ok = ok && pass;
      detail << "eps=" << eps << " sign=" << (sign == Tilt::kPlus ? '+' : '-')
             << ": min gap outside " << (sign == Tilt::kPlus ? "[0,1/8]" : "[1/4,1]")
             << " = " << num(least) << " (limit " << num(eps / 128.0) << ")";
      if (!(eps == 0.3 && sign == Tilt::kMinus)) detail << "\n";
    }
  }
  return {ok, detail.str()};
}

// 10 --------------------------------------------------------------------------

CriterionResult check_shrinking_invariant(const AcceptanceOptions&) {
  int violations = 0;
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    Environment env({ShrinkingAdversary{}, cell_seed(0x5e1f, 60, n)});
    for (std::int64_t t = 1; t <= 60; ++t) {
      const AuctionRound r = env.next_round();
      const NestedPath& path = *env.path();
      const double gap = path.upper(t) - path.lower(t);
      const double err = std::abs(gap - std::pow(3.0, -static_cast<double>(t)) / 6.0);
      worst = std::max(worst, err);
      bool good = err <= 1e-10 && path.steps() == t;
      good = good && path.lower(t) >= path.lower(t - 1) &&
             path.upper(t) <= path.upper(t - 1);
      good = good && path.compare_points(t, false, t, true) < 0 &&
             path.compare_points(t, false, t - 1, false) >= 0 &&
             path.compare_points(t, true, t - 1, true) <= 0;
      good = good && (r.valuation == 0.0 || r.valuation == 1.0) &&
             r.competing_bid >= 0.5 && r.competing_bid <= 2.0 / 3.0;
      good =
          good && r.exact && r.exact->step == t && r.exact->upper == (r.valuation == 0.0);
      if (!good) ++violations;
    }
  }
  return {violations == 0, "1000 trajectories x 60 steps: " + std::to_string(violations) +
                               " violations, max |gap - 3^-t/6| " + num(worst)};
}

// Registry --------------------------------------------------------------------

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria = {
      {1, "hindsight_oracle", {"oracle", "evaluation"}, 10, check_hindsight_oracle},
      {2, "sampler_fidelity", {"environments"}, 60, check_sampler_fidelity},
      {3, "exp3fpa_bound", {"exp3fpa", "bandits"}, 60, check_exp3fpa_bound},
      {4, "rate_slopes", {"slopes", "rates"}, 1200, check_rate_slopes},
      {5,
       "linear_lower_bounds",
       {"lower-bounds", "rates"},
       300,
       check_linear_lower_bounds},
      {6,
       "smoothness_properties",
       {"properties", "evaluation"},
       60,
       check_smoothness_properties},
      {7,
       "estimator_bruteforce",
       {"exp3fpa", "estimator", "bandits"},
       5,
       check_estimator_bruteforce},
      {8, "collect_bids", {"policies"}, 5, check_collect_bids},
      {9, "two_square_gap", {"environments"}, 5, check_two_square_gap},
      {10,
       "shrinking_invariant",
       {"environments", "adversary"},
       5,
       check_shrinking_invariant},
  };
  return criteria;
}

std::vector<const Criterion*> select_criteria(const std::string& filter) {
  std::vector<const Criterion*> out;
  for (const Criterion& c : acceptance_criteria()) {
    const bool numeric =
        !filter.empty() && filter.find_first_not_of("0123456789") == std::string::npos;
    bool match = filter.empty() || filter == std::to_string(c.number) ||
                 (!numeric && c.name.find(filter) != std::string::npos);
    for (const std::string& tag : c.tags) match = match || tag == filter;
    if (match) out.push_back(&c);
  }
  return out;
}

int run_acceptance(const std::string& filter, const AcceptanceOptions& options,
                   std::ostream& out) {
  const std::vector<const Criterion*> selected = select_criteria(filter);
  if (selected.empty()) {
    out << "no criterion matches '" << filter << "'\n";
    return 2;
  }
  int failed = 0;
  for (const Criterion* c : selected) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    try {
      result = c->run(options);
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds <= c->budget_seconds;
    const bool passed = result.passed && in_budget;
    if (!passed) ++failed;
    out << (passed ? "PASS" : "FAIL") << "  " << c->number << " " << c->name << "  ("
        << num(seconds, 3) << " s, budget " << c->budget_seconds << " s"
        << (in_budget ? "" : ", over budget") << ")\n";
    std::istringstream lines(result.detail);
    for (std::string line; std::getline(lines, line);) out << "      " << line << "\n";
    out.flush();
  }
  const std::string total = std::to_string(selected.size());
  if (failed > 0) {
    out << failed << " of " << total << " criteria failed\n";
  } else {
    out << (selected.size() == 1 ? "1 criterion passed"
                                 : "all " + total + " criteria passed")
        << "\n";
  }
  return failed == 0 ? 0 : 2;
}

}  // namespace fpa
