#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include <json.hpp>

#include "eberlein/errors.hpp"
#include "eberlein/structures.hpp"

namespace eberlein {

enum class ArithmeticMode { Exact, Float };

/// Run-wide knobs: which structure, how far the universe is truncated, and
/// how the numeric checks compare values.
struct RunConfig {
  StructureKind kind = StructureKind::PureSet;
  Elem scale = 32;          // universe truncation for windowed operations
  int tuple_arity_cap = 5;  // largest tuple arity for orbit enumerations
  std::size_t semigroup_cap = 100000;
  ArithmeticMode mode = ArithmeticMode::Exact;
  long double tolerance = 0.0L;  // used only in float mode
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  std::vector<std::string> suites;  // check-id prefixes to run; empty = all

  Structure structure() const { return Structure(kind); }

  bool suite_selected(const std::string& id) const {
    if (suites.empty()) return true;
    for (const std::string& prefix : suites)
      if (id.rfind(prefix, 0) == 0) return true;
    return false;
  }
};

inline StructureKind parse_kind(const std::string& name) {
  if (name == "pure_set") return StructureKind::PureSet;
  if (name == "dlo") return StructureKind::DLO;
  if (name == "rado") return StructureKind::RadoGraph;
  throw ConfigError("unknown structure kind: " + name);
}

inline RunConfig parse_config(const nlohmann::json& j) {
  RunConfig cfg;
  if (j.contains("kind")) cfg.kind = parse_kind(j.at("kind").get<std::string>());
  if (j.contains("scale")) cfg.scale = j.at("scale").get<long long>();
  if (j.contains("tuple_arity_cap"))
    cfg.tuple_arity_cap = j.at("tuple_arity_cap").get<int>();
  if (j.contains("semigroup_cap"))
    cfg.semigroup_cap = j.at("semigroup_cap").get<std::size_t>();
  if (j.contains("mode")) {
    std::string m = j.at("mode").get<std::string>();
    if (m == "exact")
      cfg.mode = ArithmeticMode::Exact;
    else if (m == "float")
      cfg.mode = ArithmeticMode::Float;
    else
      throw ConfigError("mode must be exact or float");
  }
  if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("suites"))
    for (const auto& v : j.at("suites")) cfg.suites.push_back(v.get<std::string>());
  if (cfg.scale <= 0 || cfg.tuple_arity_cap <= 0 || cfg.semigroup_cap == 0)
    throw ConfigError("caps must be positive");
  if ((cfg.mode == ArithmeticMode::Float) != j.contains("tolerance"))
    throw ConfigError("tolerance must be given exactly when mode is float");
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  return parse_config(j);
}

inline nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(cfg.kind);
  j["scale"] = static_cast<long long>(cfg.scale);
  j["tuple_arity_cap"] = cfg.tuple_arity_cap;
  j["semigroup_cap"] = cfg.semigroup_cap;
  j["mode"] = cfg.mode == ArithmeticMode::Exact ? "exact" : "float";
  if (cfg.mode == ArithmeticMode::Float) j["tolerance"] = static_cast<double>(cfg.tolerance);
  j["seed"] = cfg.seed;
  if (!cfg.suites.empty()) j["suites"] = cfg.suites;
  return j;
}

}  // namespace eberlein
