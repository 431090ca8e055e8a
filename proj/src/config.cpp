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

#include <fstream>
#include <set>
#include <sstream>

#include "fpa/bench.hpp"
#include "json.hpp"

namespace fpa {

namespace {

using nlohmann::json;

void only_keys(const json& j, std::initializer_list<const char*> allowed,
               const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) {
    throw ConfigError(where + ": missing key '" + std::string(key) + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

Interval to_interval(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(where + ": expected [lo, hi]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

RectMixture to_mixture(const json& j, const std::string& where) {
  if (!j.contains("components")) throw ConfigError(where + ": missing components");
  const json& comps = j.at("components");
  if (!comps.is_array()) throw ConfigError(where + ".components: expected a list");
  RectMixture mix;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string at = where + ".components[" + std::to_string(i) + "]";
    only_keys(comps[i], {"weight", "v", "m"}, at);
    if (!comps[i].contains("v") || !comps[i].contains("m")) {
      throw ConfigError(at + ": needs 'v' and 'm'");
    }
    mix.components.push_back({get_or<double>(comps[i], "weight", 1.0, at),
                              to_interval(comps[i]["v"], at + ".v"),
                              to_interval(comps[i]["m"], at + ".m")});
  }
  return mix;
}

Tilt to_tilt(const std::string& s, const std::string& where) {
  if (s == "+" || s == "plus") return Tilt::kPlus;
  if (s == "-" || s == "minus") return Tilt::kMinus;
  if (s == "0" || s == "none") return Tilt::kNone;
  throw ConfigError(where + ".sign: expected '+', '-' or '0'");
}

EnvironmentKind to_environment(const json& j) {
  const std::string where = "environment";
  const auto type = get<std::string>(j, "type", where);
  if (type == "RectMixture") {
    only_keys(j, {"type", "components"}, where);
    return to_mixture(j, where);
  }
  if (type == "SlabBase") {
    only_keys(j, {"type"}, where);
    return SlabBase{};
  }
  if (type == "SlabPerturbed") {
    only_keys(j, {"type", "w", "eps"}, where);
    return SlabPerturbed{get<double>(j, "w", where), get<double>(j, "eps", where)};
  }
  if (type == "TwoSquare") {
    only_keys(j, {"type", "eps", "sign"}, where);
    return TwoSquare{get<double>(j, "eps", where),
                     to_tilt(get_or<std::string>(j, "sign", "0", where), where)};
  }
  if (type == "NeedleBandit") {
    only_keys(j, {"type", "eps"}, where);
    NeedleBandit n;
    if (j.contains("eps")) n.eps = get<double>(j, "eps", where);
    return n;
  }
  if (type == "ShrinkingAdversary") {
    only_keys(j, {"type"}, where);
    return ShrinkingAdversary{};
  }
  if (type == "SmoothSchedule") {
    only_keys(j, {"type", "phases", "block_length"}, where);
    SmoothSchedule s;
    s.block_length = get_or<std::int64_t>(j, "block_length", 1, where);
    if (!j.contains("phases")) throw ConfigError(where + ": missing phases");
    const json& phases = j.at("phases");
    if (!phases.is_array()) throw ConfigError(where + ".phases: expected a list");
    for (std::size_t i = 0; i < phases.size(); ++i) {
      const std::string at = where + ".phases[" + std::to_string(i) + "]";
      only_keys(phases[i], {"components"}, at);
      s.phases.push_back(to_mixture(phases[i], at));
    }
    return s;
  }
  throw ConfigError(where + ": unknown type '" + type + "'");
}

PolicySpec to_policy(const json& j) {
  const std::string where = "policy";
  const auto type = get<std::string>(j, "type", where);
  if (type == "CoBa") {
    only_keys(j, {"type"}, where);
    return CoBaSpec{};
  }
  if (type == "WTFPA") {
    only_keys(j, {"type"}, where);
    return WtfpaSpec{};
  }
  if (type == "DiscretizedBandit") {
    only_keys(j, {"type", "grid_exponent"}, where);
    DiscretizedBanditSpec s;
    if (j.contains("grid_exponent")) {
      const json& e = j["grid_exponent"];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer() || e[0].get<int>() < 0 || e[1].get<int>() < 1) {
        throw ConfigError(where + ".grid_exponent: expected [numerator, denominator]");
      }
      s.exponent_num = e[0].get<int>();
      s.exponent_den = e[1].get<int>();
    }
    return s;
  }
  if (type == "DiscretizedTransparent") {
    only_keys(j, {"type"}, where);
    return DiscretizedTransparentSpec{};
  }
  if (type == "FixedBid") {
    only_keys(j, {"type", "bid"}, where);
    const double bid = get<double>(j, "bid", where);
    if (!(bid >= 0.0 && bid <= 1.0)) throw ConfigError(where + ".bid: outside [0, 1]");
    return FixedBidSpec{bid};
  }
  throw ConfigError(where + ": unknown type '" + type + "'");
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (config.horizons.empty()) throw ConfigError("horizons must not be empty");
  for (std::size_t i = 0; i < config.horizons.size(); ++i) {
    if (config.horizons[i] < 1) throw ConfigError("horizons must be positive");
    if (i > 0 && config.horizons[i] <= config.horizons[i - 1]) {
      throw ConfigError("horizons must be strictly increasing");
    }
  }
  try {
    validate(config.environment);
    check_compatible(config.policy, config.feedback);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (config.regret_mode == RegretMode::kPseudo && !has_closed_form(config.environment)) {
    throw ConfigError("pseudo regret needs a closed-form environment, got " +
                      environment_name(config.environment));
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  const json j = parse_json(json_text);
  const std::string where = "config";
  only_keys(j,
            {"environment", "feedback", "policy", "horizons", "seed", "replicates",
             "regret_mode", "output", "threads"},
            where);
  ExperimentConfig c;
  if (!j.contains("environment")) throw ConfigError("config: missing environment");
  if (!j.contains("policy")) throw ConfigError("config: missing policy");
  c.environment = to_environment(j["environment"]);
  c.policy = to_policy(j["policy"]);
  try {
    c.feedback = parse_feedback_model(get<std::string>(j, "feedback", where));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.horizons = get<std::vector<std::int64_t>>(j, "horizons", where);
  for (const char* key : {"seed", "threads"}) {
    if (j.contains(key) && !j[key].is_number_unsigned()) {
      throw ConfigError(std::string("config.") + key +
                        ": expected a non-negative integer");
    }
  }
  c.seed = get_or<std::uint64_t>(j, "seed", 0, where);
  c.replicates = get_or<int>(j, "replicates", 1, where);
  const auto mode = get_or<std::string>(j, "regret_mode", "hindsight", where);
  if (mode == "hindsight") {
    c.regret_mode = RegretMode::kHindsight;
  } else if (mode == "pseudo") {
    c.regret_mode = RegretMode::kPseudo;
  } else {
    throw ConfigError("config.regret_mode: expected 'hindsight' or 'pseudo'");
  }
  c.output = get_or<std::string>(j, "output", c.output, where);
  c.threads = get_or<unsigned>(j, "threads", 0, where);
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

EnvironmentKind parse_environment(const std::string& json_text) {
  EnvironmentKind kind = to_environment(parse_json(json_text));
  try {
    validate(kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return kind;
}

PolicySpec parse_policy(const std::string& json_text) {
  return to_policy(parse_json(json_text));
}

}  // namespace fpa
