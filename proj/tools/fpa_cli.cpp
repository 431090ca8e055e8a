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

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpa/acceptance.hpp"
#include "fpa/bench.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationError = 1;
constexpr int kCriterionFailure = 2;

int cmd_run(const std::string& config_path, const std::string& output) {
  fpa::ExperimentConfig config = fpa::load_config(config_path);
  if (!output.empty()) config.output = output;
  const std::vector<fpa::ResultRow> rows = fpa::run_experiment(config);
  fpa::write_csv_file(config.output, rows);
  std::cout << "wrote " << rows.size() << " rows to " << config.output << "\n";
  return kOk;
}

int cmd_report(const std::vector<std::string>& csv_paths, const std::string& out_dir) {
  std::vector<fpa::ResultRow> rows;
  for (const std::string& path : csv_paths) {
    std::vector<fpa::ResultRow> part = fpa::read_csv_file(path);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::cout << fpa::write_report(rows, out_dir, std::cerr);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated first-price auction simulator and benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  CLI::App* run =
      app.add_subcommand("run", "Run every (horizon, replicate) cell of a config");
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_option("-o,--output", output, "CSV path, overrides the config");

  std::vector<std::string> csv_paths;
  std::string out_dir = "report";
  CLI::App* report = app.add_subcommand("report", "Fit slopes and render SVG plots");
  report->add_option("csv", csv_paths, "Result CSV files")->required();
  report->add_option("--out", out_dir, "Output directory");

  std::string filter;
  fpa::AcceptanceOptions options;
  CLI::App* acceptance = app.add_subcommand("acceptance", "Run the acceptance criteria");
  acceptance->add_option("--filter", filter, "Criterion number, name substring or tag");
  acceptance->add_flag("--inject-estimator-bug", options.inject_estimator_bug,
                       "Negative control: perturb the Exp3.FPA estimator");
  acceptance->add_option("--threads", options.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (*run) return cmd_run(config_path, output);
    if (*report) return cmd_report(csv_paths, out_dir);
    if (*acceptance) {
      return fpa::run_acceptance(filter, options, std::cout) == 0 ? kOk
                                                                  : kCriterionFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kOk;
}
