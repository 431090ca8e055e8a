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

#include "fpa/nested_path.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

namespace fpa {

namespace {

// Doubles closer than this to an end point approximation go through the
// exact path. The approximations are accurate to a few ulps.
constexpr double kExactMargin = 1e-12;

int sign_of(const boost::multiprecision::cpp_int& a,
            const boost::multiprecision::cpp_int& b) {
  return a < b ? -1 : (a > b ? 1 : 0);
}

}  // namespace

NestedPath::NestedPath()
    : raised_{0}, lower_{0.5}, upper_{2.0 / 3.0}, gap_{1.0 / 6.0}, offset_sum_{0.0} {}

void NestedPath::advance(bool raise_lower) {
  const std::int64_t t = steps() + 1;
  moves_.push_back(raise_lower ? 1 : 0);
  raised_.push_back(raised_.back() + (raise_lower ? 1 : 0));
  const double third = std::pow(3.0, -static_cast<double>(t));
  const double offset = offset_sum_.back() + (raise_lower ? 2.0 * third : 0.0);
  offset_sum_.push_back(offset);
  gap_.push_back(third / 6.0);
  // The end that does not move is carried over bit for bit.
  lower_.push_back(raise_lower ? 0.5 + offset / 6.0 : lower_.back());
  upper_.push_back(raise_lower ? upper_.back() : 0.5 + (offset + third) / 6.0);
}

bool NestedPath::raised_lower_at(std::int64_t step) const {
  if (step < 1 || step > steps()) {
    throw std::out_of_range("NestedPath: step out of range");
  }
  return moves_[step - 1] != 0;
}

int NestedPath::compare_points(std::int64_t step_a, bool upper_a, std::int64_t step_b,
                               bool upper_b) const {
  if (upper_a != upper_b) return upper_a ? 1 : -1;
  if (step_a == step_b) return 0;
  const std::int64_t lo = std::min(step_a, step_b);
  const std::int64_t hi = std::max(step_a, step_b);
  const std::int64_t raises = raised_[hi] - raised_[lo];
  // Lower ends are non-decreasing, upper ends non-increasing in the step.
  if (!upper_a) {
    if (raises == 0) return 0;
    return step_a == hi ? 1 : -1;
  }
  const std::int64_t drops = (hi - lo) - raises;
  if (drops == 0) return 0;
  return step_a == hi ? -1 : 1;
}

int NestedPath::compare_value(double value, std::int64_t step, bool upper) const {
  const double approx = upper ? upper_[step] : lower_[step];
  if (value < approx - kExactMargin) return -1;
  if (value > approx + kExactMargin) return 1;

  // value lies within 1e-12 of [1/2, 2/3], so value - 1/2 is exact and is an
  // integer multiple of 2^-53.
  using boost::multiprecision::cpp_int;
  const double shifted = value - 0.5;
  if (shifted < 0.0) return -1;
  const cpp_int mantissa(static_cast<std::uint64_t>(std::ldexp(shifted, 53)));
  constexpr unsigned kShift = 53;

  // Descend the nested intervals [L_k, U_k] with L_k = 1/2 + N/(6 * 3^k),
  // U_k = L_k + 1/(6 * 3^k). value - 1/2 vs N/(6 * 3^k) is compared as
  // mantissa * 6 * 3^k vs N * 2^53.
  cpp_int power(1);
  cpp_int numerator(0);
  for (std::int64_t k = 0; k <= step; ++k) {
    if (k > 0) {
      power *= 3;
      numerator = numerator * 3 + (moves_[k - 1] ? 2 : 0);
    }
    const cpp_int lhs = mantissa * 6 * power;
    const cpp_int low = numerator << kShift;
    const cpp_int high = (numerator + 1) << kShift;
    if (k == step) return sign_of(lhs, upper ? high : low);
    if (lhs < low) return -1;
    if (lhs > high) return 1;
  }
  return 0;  // unreachable
}

}  // namespace fpa
