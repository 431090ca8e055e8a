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

#ifndef FPA_NESTED_PATH_HPP_
#define FPA_NESTED_PATH_HPP_

#include <cstdint>
#include <vector>

namespace fpa {

// Append-only record of a shrinking-interval path. The interval starts at
// [1/2, 2/3]; each step either raises the lower end or lowers the upper end
// by two thirds of the current gap, so the gap after t steps is 3^-t / 6.
//
// All end points have the form 1/2 + N / (6 * 3^t) for an integer N, which
// leaves double resolution after roughly 34 steps. Comparisons between end
// points are therefore done on the step record, and comparisons against a
// double are done in exact integer arithmetic when they are close.
class NestedPath {
 public:
  NestedPath();

  // Appends one step. `raise_lower` selects L <- L + 2/3 gap, otherwise
  // U <- U - 2/3 gap.
  void advance(bool raise_lower);

  std::int64_t steps() const { return static_cast<std::int64_t>(raised_.size()) - 1; }

  // Nearest-double approximations of the end points after `step` steps.
  double lower(std::int64_t step) const { return lower_[step]; }
  double upper(std::int64_t step) const { return upper_[step]; }
  // 3^-step / 6.
  double gap(std::int64_t step) const { return gap_[step]; }

  // Whether step s (1-based) raised the lower end.
  bool raised_lower_at(std::int64_t step) const;

  // Sign of (end point a) - (end point b).
  int compare_points(std::int64_t step_a, bool upper_a, std::int64_t step_b,
                     bool upper_b) const;

  // Sign of value - (end point), exact for every double.
  int compare_value(double value, std::int64_t step, bool upper) const;

 private:
  std::vector<std::uint8_t> moves_;   // moves_[s - 1] for step s
  std::vector<std::int64_t> raised_;  // raises among steps 1..t
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> gap_;
  std::vector<double> offset_sum_;  // sum of 2 * 3^-s over raises
};

}  // namespace fpa

#endif  // FPA_NESTED_PATH_HPP_
