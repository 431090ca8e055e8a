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
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fpa/bench.hpp"

namespace fpa {

const char* const kCsvVersionLine = "# fpa-results v1";

namespace {

constexpr const char* kColumns[] = {"run_id",
                                    "env_name",
                                    "feedback",
                                    "policy",
                                    "T",
                                    "seed",
                                    "realized_utility_sum",
                                    "hindsight_value",
                                    "pseudo_benchmark",
                                    "regret",
                                    "wall_ms",
                                    "expected_utility_sum"};
constexpr std::size_t kColumnCount = std::size(kColumns);

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Quotes fields holding separators or quotes.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_real(const std::string& s, const std::string& column) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw std::runtime_error("CSV: bad number in column " + column + ": '" + s + "'");
  }
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t base_seed, std::int64_t horizon, int replicate) {
  return Rng::for_stream({base_seed, static_cast<std::uint64_t>(horizon),
                          static_cast<std::uint64_t>(replicate)})
      .next_u64();
}

ResultRow run_cell(const ExperimentConfig& config, std::int64_t horizon, int replicate,
                   std::int64_t run_id) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = cell_seed(config.seed, horizon, replicate);
  Environment env({config.environment, seed}, horizon);
  auto policy = make_policy(config.policy, horizon, Rng(seed).split(1));
  const RegretTrace trace = simulate(env, *policy, config.feedback, horizon);

  ResultRow row;
  row.run_id = run_id;
  row.env_name = environment_name(config.environment);
  row.feedback = std::string(to_string(config.feedback));
  row.policy = policy_name(config.policy);
  row.horizon = horizon;
  row.seed = seed;
  row.realized_utility_sum = trace.utility_sum();
  row.hindsight_value = hindsight_best(trace.rounds).value;
  if (has_closed_form(config.environment)) {
    row.pseudo_benchmark = pseudo_benchmark(config.environment, horizon);
    row.expected_utility_sum = expected_utility_sum(config.environment, trace.bids);
  }
  row.regret = config.regret_mode == RegretMode::kPseudo
                   ? *row.pseudo_benchmark - *row.expected_utility_sum
                   : row.hindsight_value - row.realized_utility_sum;
  row.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return row;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto reps = static_cast<std::size_t>(config.replicates);
  std::vector<ResultRow> rows(config.horizons.size() * reps);
  parallel_for(rows.size(), config.threads, [&](std::size_t i) {
    rows[i] = run_cell(config, config.horizons[i / reps], static_cast<int>(i % reps),
                       static_cast<std::int64_t>(i));
  });
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvVersionLine << '\n';
  for (std::size_t c = 0; c < kColumnCount; ++c) {
    out << (c ? "," : "") << kColumns[c];
  }
  out << '\n';
  for (const ResultRow& r : rows) {
    out << r.run_id << ',' << csv_field(r.env_name) << ',' << csv_field(r.feedback) << ','
        << csv_field(r.policy) << ',' << r.horizon << ',' << r.seed << ','
        << format_real(r.realized_utility_sum) << ',' << format_real(r.hindsight_value)
        << ',' << (r.pseudo_benchmark ? format_real(*r.pseudo_benchmark) : "") << ','
        << format_real(r.regret) << ',' << format_real(r.wall_ms) << ','
        << (r.expected_utility_sum ? format_real(*r.expected_utility_sum) : "") << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(out, rows);
  out.flush();
  if (!out) throw std::runtime_error("error while writing " + path);
}

std::vector<ResultRow> read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::vector<std::string> header;
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (header.empty()) {
      header = std::move(fields);
      for (const char* required : {"env_name", "feedback", "policy", "T", "regret"}) {
        if (std::find(header.begin(), header.end(), required) == header.end()) {
          throw std::runtime_error(path + ": missing column " + required);
        }
      }
      continue;
    }
    if (fields.size() != header.size()) {
      throw std::runtime_error(path + ": row has " + std::to_string(fields.size()) +
                               " fields, header " + std::to_string(header.size()));
    }
    ResultRow r;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& name = header[c];
      const std::string& v = fields[c];
      if (name == "run_id") {
        r.run_id = static_cast<std::int64_t>(parse_real(v, name));
      } else if (name == "env_name") {
        r.env_name = v;
      } else if (name == "feedback") {
        r.feedback = v;
      } else if (name == "policy") {
        r.policy = v;
      } else if (name == "T") {
        r.horizon = static_cast<std::int64_t>(parse_real(v, name));
      } else if (name == "seed") {
        r.seed = std::stoull(v);
      } else if (name == "realized_utility_sum") {
        r.realized_utility_sum = parse_real(v, name);
      } else if (name == "hindsight_value") {
        r.hindsight_value = parse_real(v, name);
      } else if (name == "pseudo_benchmark") {
        if (!v.empty()) r.pseudo_benchmark = parse_real(v, name);
      } else if (name == "expected_utility_sum") {
        if (!v.empty()) r.expected_utility_sum = parse_real(v, name);
      } else if (name == "regret") {
        r.regret = parse_real(v, name);
      } else if (name == "wall_ms") {
        r.wall_ms = parse_real(v, name);
      }
    }
    rows.push_back(std::move(r));
  }
  if (header.empty()) throw std::runtime_error(path + ": empty CSV");
  return rows;
}

}  // namespace fpa
