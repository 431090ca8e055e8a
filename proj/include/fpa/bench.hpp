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

#ifndef FPA_BENCH_HPP_
#define FPA_BENCH_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fpa/environments.hpp"
#include "fpa/evaluation.hpp"
#include "fpa/policies.hpp"

namespace fpa {

// Raised for malformed or inconsistent experiment configurations.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct ExperimentConfig {
  EnvironmentKind environment;
  FeedbackModel feedback = FeedbackModel::kFull;
  PolicySpec policy;
  std::vector<std::int64_t> horizons;
  std::uint64_t seed = 0;
  int replicates = 1;
  RegretMode regret_mode = RegretMode::kHindsight;
  std::string output = "results.csv";
  // 0 uses the hardware concurrency.
  unsigned threads = 0;
};

// Checks replicates >= 1, strictly increasing positive horizons, the
// environment parameters, pseudo mode only for closed-form environments,
// and policy/feedback compatibility. Throws ConfigError.
void validate(const ExperimentConfig& config);

// JSON config; unknown keys are rejected. Throws ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

EnvironmentKind parse_environment(const std::string& json_text);
PolicySpec parse_policy(const std::string& json_text);

struct ResultRow {
  std::int64_t run_id = 0;
  std::string env_name;
  std::string feedback;
  std::string policy;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  double realized_utility_sum = 0.0;
  double hindsight_value = 0.0;
  std::optional<double> pseudo_benchmark;
  std::optional<double> expected_utility_sum;
  double regret = 0.0;
  double wall_ms = 0.0;
};

// Seed of the environment stream for one (horizon, replicate) cell.
std::uint64_t cell_seed(std::uint64_t base_seed, std::int64_t horizon, int replicate);

// One simulated run.
ResultRow run_cell(const ExperimentConfig& config, std::int64_t horizon, int replicate,
                   std::int64_t run_id);

// All (horizon, replicate) cells, horizon-major, on a worker pool. Rows are
// independent of the thread count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

// Runs `task(i)` for i in [0, count) on `threads` workers (0: hardware).
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task);

// CSV with a versioned comment line, a header row and 17 significant digits.
extern const char* const kCsvVersionLine;
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_csv_file(const std::string& path, const std::vector<ResultRow>& rows);
// Throws std::runtime_error on unreadable or malformed input.
std::vector<ResultRow> read_csv_file(const std::string& path);

struct HorizonStats {
  std::int64_t horizon = 0;
  int count = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct GroupReport {
  std::string env_name;
  std::string feedback;
  std::string policy;
  std::vector<HorizonStats> horizons;
  std::optional<SlopeFit> fit;  // set when at least 4 horizons
};

// Groups rows by (env, feedback, policy) and fits log-log slopes. Mean
// regrets below 1e-6 are clamped to 1e-6 before the fit.
std::vector<GroupReport> summarize(const std::vector<ResultRow>& rows);

std::string render_svg(const GroupReport& group);
std::string render_summary_table(const std::vector<GroupReport>& groups);

// Writes one SVG per fitted group and summary.txt into `out_dir`; returns
// the summary table. Groups with fewer than 4 horizons are reported on
// `warnings` and skipped.
std::string write_report(const std::vector<ResultRow>& rows, const std::string& out_dir,
                         std::ostream& warnings);

}  // namespace fpa

#endif  // FPA_BENCH_HPP_
