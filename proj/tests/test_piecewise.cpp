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

#include <algorithm>

#include "doctest.h"
#include "fpa/piecewise.hpp"
#include "fpa/rng.hpp"

using namespace fpa;

TEST_CASE("PiecewiseQuadratic: zero function and evaluation") {
  const PiecewiseQuadratic zero;
  CHECK(zero(0.0) == 0.0);
  CHECK(zero(1.0) == 0.0);
  CHECK(zero.maximize().value == 0.0);

  const PiecewiseQuadratic f({0.0, 0.5, 1.0}, {{0, 1, 0}, {-1, 0, 1}});
  CHECK(f(0.25) == 0.25);
  CHECK(f(0.5) == 0.75);  // left-closed cells
  CHECK(f(1.0) == 0.0);   // last cell contains 1
}

TEST_CASE("PiecewiseQuadratic: add_on merges breaks") {
  PiecewiseQuadratic f;
  f.add_on(0.25, 0.75, {0, 0, 1});
  f.add_on(0.5, 2.0, {0, 1, 0});
  CHECK(f(0.1) == 0.0);
  CHECK(f(0.3) == 1.0);
  CHECK(f(0.6) == doctest::Approx(1.6));
  CHECK(f(0.8) == doctest::Approx(0.8));
  CHECK(f(1.0) == doctest::Approx(1.0));
}

TEST_CASE("PiecewiseQuadratic: arithmetic") {
  PiecewiseQuadratic a({0.0, 0.5, 1.0}, {{0, 1, 0}, {0, 0, 0.5}});
  PiecewiseQuadratic b({0.0, 0.25, 1.0}, {{1, 0, 0}, {0, 0, 1}});
  const PiecewiseQuadratic c = 2.0 * (a + b);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform();
    CHECK(c(x) == doctest::Approx(2.0 * (a(x) + b(x))).epsilon(1e-14));
  }
}

TEST_CASE("PiecewiseQuadratic: maximize finds interior vertices") {
  // -(x - 0.3)^2 + 0.2 on [0, 0.6), then 0.6 - x on [0.6, 1].
  const PiecewiseQuadratic f({0.0, 0.6, 1.0}, {{-1, 0.6, 0.11}, {0, -1, 0.6}});
  const Maximum m = f.maximize();
  CHECK(m.argmax == doctest::Approx(0.3));
  CHECK(m.value == doctest::Approx(0.2));
}

TEST_CASE("PiecewiseQuadratic: maximize matches a dense scan") {
  Rng rng(9);
  for (int n = 0; n < 200; ++n) {
    std::vector<double> breaks{0.0};
    const int cells = 1 + static_cast<int>(rng.below(5));
    for (int i = 1; i < cells; ++i) breaks.push_back(rng.uniform());
    breaks.push_back(1.0);
    std::sort(breaks.begin() + 1, breaks.end() - 1);
    // Continuous: each piece starts where the previous ended.
    std::vector<Quadratic> pieces;
    double start = rng.uniform(-1, 1);
    for (int i = 0; i < cells; ++i) {
      const double a = rng.uniform(-3, 3);
      const double b = rng.uniform(-3, 3);
      const double x0 = breaks[i];
      pieces.push_back({a, b, start - (a * x0 + b) * x0});
      const double x1 = breaks[i + 1];
      start = pieces.back()(x1);
    }
    const PiecewiseQuadratic f(breaks, pieces);
    double dense = -1e300;
    for (int i = 0; i <= 20000; ++i) dense = std::max(dense, f(i / 20000.0));
    for (double x : breaks) dense = std::max(dense, f(x));
    const Maximum m = f.maximize();
    CHECK(m.value >= dense - 1e-12);
    CHECK(m.value <= dense + 1e-6);
    CHECK(f(m.argmax) == doctest::Approx(m.value).epsilon(1e-12));
  }
}
