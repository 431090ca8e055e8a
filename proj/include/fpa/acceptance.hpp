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

#ifndef FPA_ACCEPTANCE_HPP_
#define FPA_ACCEPTANCE_HPP_

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace fpa {

struct AcceptanceOptions {
  // Negative control: Exp3.FPA divides by the mass strictly above M.
  bool inject_estimator_bug = false;
  unsigned threads = 0;
};

struct CriterionResult {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int number = 0;
  std::string name;
  std::vector<std::string> tags;
  double budget_seconds = 0.0;
  std::function<CriterionResult(const AcceptanceOptions&)> run;
};

const std::vector<Criterion>& acceptance_criteria();

// Criteria matching `filter` by number, name substring or tag (all when empty).
std::vector<const Criterion*> select_criteria(const std::string& filter);

// Runs the selected criteria and prints one verdict line per criterion,
// followed by indented details. A criterion that overruns its budget fails.
// Returns 0 when all pass, 2 otherwise.
int run_acceptance(const std::string& filter, const AcceptanceOptions& options,
                   std::ostream& out);

// Individual criteria, exposed for unit tests.
CriterionResult check_hindsight_oracle(const AcceptanceOptions& options);
CriterionResult check_sampler_fidelity(const AcceptanceOptions& options);
CriterionResult check_exp3fpa_bound(const AcceptanceOptions& options);
CriterionResult check_rate_slopes(const AcceptanceOptions& options);
CriterionResult check_linear_lower_bounds(const AcceptanceOptions& options);
CriterionResult check_smoothness_properties(const AcceptanceOptions& options);
CriterionResult check_estimator_bruteforce(const AcceptanceOptions& options);
CriterionResult check_collect_bids(const AcceptanceOptions& options);
CriterionResult check_two_square_gap(const AcceptanceOptions& options);
CriterionResult check_shrinking_invariant(const AcceptanceOptions& options);

}  // namespace fpa

#endif  // FPA_ACCEPTANCE_HPP_
