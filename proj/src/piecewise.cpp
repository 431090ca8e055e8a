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

#include "fpa/piecewise.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpa {

PiecewiseQuadratic::PiecewiseQuadratic() : breaks_{0.0, 1.0}, pieces_(1) {}

PiecewiseQuadratic::PiecewiseQuadratic(std::vector<double> breaks,
                                       std::vector<Quadratic> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size() ||
      breaks_.front() != 0.0 || breaks_.back() != 1.0 ||
      !std::is_sorted(breaks_.begin(), breaks_.end())) {
    throw std::invalid_argument("PiecewiseQuadratic: malformed breaks");
  }
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!(breaks_[i] > breaks_[i - 1])) {
      throw std::invalid_argument("PiecewiseQuadratic: empty cell");
    }
  }
}

double PiecewiseQuadratic::operator()(double x) const {
  auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, x);
  const std::size_t cell = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return pieces_[cell](x);
}

void PiecewiseQuadratic::add_on(double lo, double hi, const Quadratic& q) {
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, 0.0, 1.0);
  if (!(hi > lo)) return;
  auto split_at = [this](double x) {
    if (x <= 0.0 || x >= 1.0) return;
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
    if (*it == x) return;
    const std::size_t cell = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    breaks_.insert(it, x);
    pieces_.insert(pieces_.begin() + static_cast<std::ptrdiff_t>(cell), pieces_[cell]);
  };
  split_at(lo);
  split_at(hi);
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (breaks_[i] >= lo && breaks_[i + 1] <= hi) pieces_[i] += q;
  }
}

PiecewiseQuadratic& PiecewiseQuadratic::operator+=(const PiecewiseQuadratic& other) {
  for (std::size_t i = 0; i < other.pieces_.size(); ++i) {
    add_on(other.breaks_[i], other.breaks_[i + 1], other.pieces_[i]);
  }
  return *this;
}

PiecewiseQuadratic& PiecewiseQuadratic::operator*=(double factor) {
  for (Quadratic& q : pieces_) {
    q.a *= factor;
    q.b *= factor;
    q.c *= factor;
  }
  return *this;
}

Maximum PiecewiseQuadratic::maximize() const {
  Maximum best{0.0, (*this)(0.0)};
  auto consider = [&best, this](double x) {
    const double v = (*this)(x);
    if (v > best.value) best = {x, v};
  };
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double lo = breaks_[i];
    const double hi = breaks_[i + 1];
    consider(lo);
    const Quadratic& q = pieces_[i];
    if (q.a < 0.0) {
      const double vertex = -q.b / (2.0 * q.a);
      if (vertex > lo && vertex < hi) consider(vertex);
    }
  }
  consider(1.0);
  return best;
}

}  // namespace fpa
