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

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "doctest.h"
#include "fpa/environments.hpp"

using namespace fpa;

namespace {

bool in_open(double x, double lo, double hi) { return x > lo && x < hi; }

// Chi-square statistic of `samples` against `cdf` on `bins` equal-width bins
// of [lo, hi].
double chi_square(const std::vector<double>& samples,
                  const std::function<double(double)>& cdf, double lo, double hi,
                  int bins) {
  std::vector<double> counts(bins, 0.0);
  for (double x : samples) {
    const int k = std::min(bins - 1, static_cast<int>((x - lo) / (hi - lo) * bins));
    counts[k] += 1.0;
  }
  double stat = 0.0;
  const double n = static_cast<double>(samples.size());
  for (int k = 0; k < bins; ++k) {
    const double a = lo + (hi - lo) * k / bins;
    const double b = lo + (hi - lo) * (k + 1) / bins;
    const double expected = n * (cdf(b) - cdf(a));
    stat += (counts[k] - expected) * (counts[k] - expected) / expected;
  }
  return stat;
}

double chi_square_critical(int dof) {
  return boost::math::quantile(boost::math::chi_squared(dof), 0.999);
}

}  // namespace

TEST_CASE("TwoSquare(0): each square with probability 1/2") {
  Environment env({TwoSquare{0.0, Tilt::kNone}, 1});
  int upper = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const AuctionRound r = env.next_round();
    const bool plus = in_open(r.valuation, 0, 0.25) && in_open(r.competing_bid, 0, 0.25);
    const bool minus =
        in_open(r.valuation, 0.75, 1) && in_open(r.competing_bid, 0.25, 0.5);
    REQUIRE((plus || minus));
    upper += plus;
  }
  CHECK(std::abs(upper / double(n) - 0.5) < 4 * std::sqrt(0.25 / n));
}

TEST_CASE("TwoSquare sampler: tilted mass") {
  Rng rng(3);
  const int n = 200000;
  int plus = 0;
  for (int i = 0; i < n; ++i)
    plus += sample_two_square(0.5, Tilt::kPlus, rng).valuation < 0.25;
  CHECK(std::abs(plus / double(n) - 0.75) < 4 * std::sqrt(0.1875 / n));
  int minus = 0;
  for (int i = 0; i < n; ++i)
    minus += sample_two_square(0.2, Tilt::kMinus, rng).valuation < 0.25;
  CHECK(std::abs(minus / double(n) - 0.4) < 4 * std::sqrt(0.24 / n));
}

TEST_CASE("NeedleBandit: two atoms around a fixed location") {
  Environment env({NeedleBandit{0.01}, 7});
  const double b = env.needle_location();
  CHECK(in_open(b, 1.0 / 3.0, 0.5 - 0.01));
  int ones = 0;
  for (int i = 0; i < 10000; ++i) {
    const AuctionRound r = env.next_round();
    if (r.valuation == 1.0) {
      CHECK(r.competing_bid == b);
      ++ones;
    } else {
      CHECK(r.valuation == 0.0);
      CHECK(r.competing_bid == b + 0.01);
    }
  }
  CHECK(std::abs(ones - 5000) < 200);
  // Location is fixed by the seed.
  CHECK(Environment({NeedleBandit{0.01}, 7}).needle_location() == b);
}

TEST_CASE("NeedleBandit: default gap") {
  CHECK(default_needle_eps(1) == doctest::Approx(1.0 / 108.0));
  CHECK(default_needle_eps(1000) == std::ldexp(1.0, -40));
  Environment env({NeedleBandit{}, 1}, 1000);
  CHECK(env.needle_eps() == std::ldexp(1.0, -40));
}

TEST_CASE("RectMixture: single unit square is uniform") {
  const RectMixture unit{{{1.0, {0, 1}, {0, 1}}}};
  Environment env({unit, 4});
  std::vector<double> vs;
  std::vector<double> ms;
  for (int i = 0; i < 100000; ++i) {
    const AuctionRound r = env.next_round();
    vs.push_back(r.valuation);
    ms.push_back(r.competing_bid);
  }
  auto id = [](double x) { return x; };
  CHECK(chi_square(vs, id, 0, 1, 20) < chi_square_critical(19));
  CHECK(chi_square(ms, id, 0, 1, 20) < chi_square_critical(19));
  CHECK(smoothness_of(unit) == doctest::Approx(1.0));
}

TEST_CASE("SlabBase sampler: support and marginals") {
  Environment env({SlabBase{}, 2});
  const int n = 1000000;
  std::vector<double> vs(n);
  std::vector<double> ms(n);
  int low = 0;
  for (int i = 0; i < n; ++i) {
    const AuctionRound r = env.next_round();
    vs[i] = r.valuation;
    ms[i] = r.competing_bid;
    CHECK_UNARY((r.competing_bid <= r.valuation - 0.125 || r.competing_bid < 0.25));
    low += r.competing_bid < 0.25;
  }
  // V uniform on [7/8, 1].
  CHECK(chi_square(
            vs, [](double v) { return std::clamp(8 * (v - 0.875), 0.0, 1.0); }, 0.875,
            1.0, 32) < chi_square_critical(31));
  // Inverse-CDF draws of M against the analytic marginal.
  CHECK(chi_square(
            ms, [](double m) { return competing_bid_cdf(SlabBase{}, m); }, 0.0, 0.875,
            56) < chi_square_critical(55));
  // P(M < 1/4) = ln(6/5).
  CHECK(std::abs(low / double(n) - std::log(1.2)) < 4 * std::sqrt(0.15 / n));
}

TEST_CASE("SlabBase: conditional mass below 1/4 at V = 1") {
  // c/8 with c = 1/(v - 1/4).
  const double v = 1.0;
  CHECK((1.0 / (v - 0.25)) / 8.0 == doctest::Approx(1.0 / 6.0));
  // Density integrates to 8 over m for every v.
  for (double vv : {0.875, 0.9, 0.95, 1.0}) {
    double total = 0.0;
    const int steps = 200000;
    for (int i = 0; i < steps; ++i) {
      const double m = (i + 0.5) / steps;
      total += slab_density(vv, m) / steps;
    }
    CHECK(total == doctest::Approx(8.0).epsilon(1e-3));
  }
}

TEST_CASE("SlabPerturbed: density and tent") {
  const double w = 0.5;
  const double eps = 0.25;
  const double v = 0.97;
  const double m = 0.3;
  CHECK(slab_perturbed_density(w, eps, v, m) ==
        doctest::Approx(std::pow(v - m, -2) + 16.0 / 9.0));
  CHECK(slab_perturbed_density(w, eps, 0.9, 0.6) ==
        doctest::Approx(std::pow(0.9 - 0.6, -2) + 16.0 / 9.0));
  CHECK(slab_perturbed_density(w, eps, 0.97, 0.6) ==
        doctest::Approx(std::pow(0.97 - 0.6, -2) - 16.0 / 9.0));
  const SlabPerturbed kind{w, eps};
  CHECK(expected_utility(kind, w) == doctest::Approx(0.125 + eps / 144.0));
  CHECK(expected_utility(kind, w + eps / 2) == doctest::Approx(0.125 + eps / 288.0));
  CHECK(expected_utility(kind, 0.8) ==
        doctest::Approx(expected_utility(SlabBase{}, 0.8)));
  CHECK(smoothness_of(kind) == doctest::Approx(1.0 / (64.0 + 16.0 / 9.0)));
}

TEST_CASE("SlabPerturbed: Monte-Carlo separation at the peak") {
  const double w = 0.4;
  const double eps = 0.1;
  Environment env({SlabPerturbed{w, eps}, 8});
  const int n = 1000000;
  double s = 0.0;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const AuctionRound r = env.next_round();
    const double d = utility(r, w) - utility(r, w + 2 * eps);
    s += d;
    ss += d * d;
  }
  const double mean = s / n;
  const double se = std::sqrt((ss / n - mean * mean) / n);
  const double expected = expected_utility(SlabPerturbed{w, eps}, w) -
                          expected_utility(SlabPerturbed{w, eps}, w + 2 * eps);
  CHECK(expected == doctest::Approx(eps / 144.0));
  CHECK(std::abs(mean - expected) <= 4 * se);
}

TEST_CASE("SlabPerturbed: tiny eps matches the base marginal") {
  Environment env({SlabPerturbed{0.5, 1e-9}, 9});
  std::vector<double> ms(200000);
  for (double& m : ms) m = env.next_round().competing_bid;
  CHECK(chi_square(
            ms, [](double m) { return competing_bid_cdf(SlabBase{}, m); }, 0.0, 0.875,
            28) < chi_square_critical(27));
}

TEST_CASE("Closed forms: reference values") {
  const TwoSquare flat{0.0, Tilt::kNone};
  CHECK(expected_utility(flat, 1.0 / 16) == doctest::Approx(1.0 / 128).epsilon(1e-15));
  CHECK(expected_utility(flat, 7.0 / 16) == doctest::Approx(1.0 / 128).epsilon(1e-15));
  CHECK(expected_utility_curve(flat).maximize().value == doctest::Approx(1.0 / 128));
  for (double b : {0.25, 0.4, 0.5, 0.7, 0.7499}) {
    CHECK(expected_utility(SlabBase{}, b) == doctest::Approx(0.125).epsilon(1e-15));
  }
  CHECK(expected_utility(SlabBase{}, 0.9) == doctest::Approx(15.0 / 16 - 0.9));
  for (const EnvironmentKind& k : {EnvironmentKind{flat}, EnvironmentKind{SlabBase{}},
                                   EnvironmentKind{SlabPerturbed{0.4, 0.1}},
                                   EnvironmentKind{TwoSquare{0.3, Tilt::kPlus}}}) {
    CHECK(expected_utility(k, 0.0) == 0.0);
  }
  CHECK_THROWS_AS(expected_utility(NeedleBandit{0.01}, 0.5), NoClosedForm);
  CHECK_THROWS_AS(expected_utility(ShrinkingAdversary{}, 0.5), NoClosedForm);
  CHECK_THROWS_AS(expected_utility(SlabBase{}, 1.5), std::domain_error);
}

TEST_CASE("Closed forms match direct numerical integration of the densities") {
  // E[u(b)] = int int (v - b) 1{m <= b} f(v, m) dm dv by the midpoint rule.
  auto integrate = [](const std::function<double(double, double)>& f, double b) {
    const int nv = 400;
    const int nm = 4000;
    double total = 0.0;
    for (int i = 0; i < nv; ++i) {
      const double v = (i + 0.5) / nv;
      for (int j = 0; j < nm; ++j) {
        const double m = (j + 0.5) / nm;
        if (m <= b) total += (v - b) * f(v, m);
      }
    }
    return total / (nv * static_cast<double>(nm));
  };
  for (double b : {0.1, 0.3, 0.5, 0.8, 0.9, 0.95}) {
    CHECK(integrate(slab_density, b) ==
          doctest::Approx(expected_utility(SlabBase{}, b)).epsilon(2e-3));
    CHECK(integrate(
              [](double v, double m) { return slab_perturbed_density(0.4, 0.1, v, m); },
              b) ==
          doctest::Approx(expected_utility(SlabPerturbed{0.4, 0.1}, b)).epsilon(2e-3));
  }
}

TEST_CASE("Smoothness constants") {
  CHECK(*smoothness_of(SlabBase{}) == doctest::Approx(1.0 / 64));
  for (double eps : {0.0, 0.1, 0.125, 0.3, 0.49}) {
    const double sigma = *smoothness_of(TwoSquare{eps, Tilt::kMinus});
    CHECK(sigma == doctest::Approx(1.0 / (8 * (1 + eps))));
    // Sup density 8(1 + eps) stays below 9 only up to eps = 1/8.
    CHECK(sigma > 1.0 / 12.0);
    if (eps <= 0.125) CHECK(sigma >= 1.0 / 9.0);
  }
  CHECK_FALSE(smoothness_of(NeedleBandit{}));
  CHECK_FALSE(smoothness_of(ShrinkingAdversary{}));
}

TEST_CASE("ShrinkingAdversary: hand trace and invariants") {
  NestedPath path;
  path.advance(true);
  CHECK(path.lower(1) == doctest::Approx(11.0 / 18.0).epsilon(1e-15));
  CHECK(path.upper(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(path.gap(1) == doctest::Approx(1.0 / 18.0).epsilon(1e-15));

  Environment env({ShrinkingAdversary{}, 12});
  for (std::int64_t t = 1; t <= 60; ++t) {
    const AuctionRound r = env.next_round();
    const NestedPath& p = *env.path();
    CHECK(std::abs(p.upper(t) - p.lower(t) - std::pow(3.0, -double(t)) / 6) <=
          1e-12 * double(t));
    CHECK(p.lower(t) >= p.lower(t - 1));
    CHECK(p.upper(t) <= p.upper(t - 1));
    CHECK(p.compare_points(t, false, t, true) < 0);
    CHECK((r.valuation == 0.0 || r.valuation == 1.0));
    CHECK(r.competing_bid >= 0.5);
    CHECK(r.competing_bid <= 2.0 / 3.0);
  }
}

TEST_CASE("SmoothSchedule: phases alternate by block") {
  const RectMixture a{{{1.0, {0.0, 0.1}, {0.0, 0.1}}}};
  const RectMixture b{{{1.0, {0.9, 1.0}, {0.9, 1.0}}}};
  Environment env({SmoothSchedule{{a, b}, 2}, 3});
  for (int t = 0; t < 12; ++t) {
    const AuctionRound r = env.next_round();
    CHECK(((t / 2) % 2 == 0 ? r.valuation < 0.1 : r.valuation > 0.9));
  }
  const SmoothSchedule s{{a, b}, 2};
  const PiecewiseQuadratic total = cumulative_expected_utility(s, 6);
  const double expected = 4 * expected_utility(a, 0.95) + 2 * expected_utility(b, 0.95);
  CHECK(total(0.95) == doctest::Approx(expected));
}

TEST_CASE("Environment streams are reproducible") {
  Environment a({SlabPerturbed{0.33, 0.03}, 99});
  Environment b({SlabPerturbed{0.33, 0.03}, 99});
  Environment c({SlabPerturbed{0.33, 0.03}, 100});
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const AuctionRound x = a.next_round();
    const AuctionRound y = b.next_round();
    const AuctionRound z = c.next_round();
    CHECK(x.valuation == y.valuation);
    CHECK(x.competing_bid == y.competing_bid);
    differs = differs || x.valuation != z.valuation;
  }
  CHECK(differs);
}

TEST_CASE("Validation of parameters") {
  CHECK_THROWS_AS(validate(SlabPerturbed{0.3, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(SlabPerturbed{0.7, 0.1}), std::invalid_argument);
  CHECK_NOTHROW(validate(SlabPerturbed{0.35, 0.1}));
  CHECK_THROWS_AS(validate(TwoSquare{0.5, Tilt::kPlus}), std::invalid_argument);
  CHECK_THROWS_AS(validate(NeedleBandit{0.2}), std::invalid_argument);
  CHECK_THROWS_AS(validate(RectMixture{{{0.5, {0, 1}, {0, 1}}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(RectMixture{{{1.0, {0, 1.2}, {0, 1}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(SmoothSchedule{{}, 1}), std::invalid_argument);
}

TEST_CASE("Competing-bid CDF is a distribution function") {
  for (const EnvironmentKind& k :
       {EnvironmentKind{SlabBase{}}, EnvironmentKind{SlabPerturbed{0.5, 0.2}},
        EnvironmentKind{TwoSquare{0.2, Tilt::kPlus}},
        EnvironmentKind{
            RectMixture{{{0.3, {0, 1}, {0.2, 0.4}}, {0.7, {0, 1}, {0.1, 0.9}}}}}}) {
    double last = competing_bid_cdf(k, 0.0);
    CHECK(last == doctest::Approx(0.0));
    for (int i = 1; i <= 1000; ++i) {
      const double f = competing_bid_cdf(k, i / 1000.0);
      CHECK(f >= last - 1e-15);
      last = f;
    }
    CHECK(last == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(competing_bid_cdf(NeedleBandit{0.01}, 0.5), NoClosedForm);
}
