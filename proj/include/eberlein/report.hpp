#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "eberlein/config.hpp"

namespace eberlein {

enum class CheckStatus { Pass, Fail, Inconclusive };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// One verified statement: a stable id, its outcome, and the witnessing
/// values. Reports are sorted by id and never include wall-clock data, so a
/// run in exact mode reproduces byte for byte.
struct CheckRecord {
  std::string id;
  CheckStatus status = CheckStatus::Fail;
  nlohmann::ordered_json evidence;
};

struct Report {
  std::vector<CheckRecord> checks;

  void add(std::string id, bool pass, nlohmann::ordered_json evidence = {}) {
    checks.push_back({std::move(id), pass ? CheckStatus::Pass : CheckStatus::Fail,
                      std::move(evidence)});
  }

  void add_status(std::string id, CheckStatus st, nlohmann::ordered_json evidence = {}) {
    checks.push_back({std::move(id), st, std::move(evidence)});
  }

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) {
      return c.status == CheckStatus::Pass;
    });
  }

  nlohmann::ordered_json to_json(const RunConfig& cfg) const {
    std::vector<const CheckRecord*> sorted;
    for (const auto& c : checks) sorted.push_back(&c);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const CheckRecord* a, const CheckRecord* b) { return a->id < b->id; });
    nlohmann::ordered_json j;
    j["config"] = config_to_json(cfg);
    j["checks"] = nlohmann::ordered_json::array();
    int pass = 0, fail = 0, inconclusive = 0;
    for (const CheckRecord* c : sorted) {
      nlohmann::ordered_json rec;
      rec["id"] = c->id;
      rec["status"] = status_name(c->status);
      if (!c->evidence.is_null() && !c->evidence.empty()) rec["evidence"] = c->evidence;
      j["checks"].push_back(std::move(rec));
      switch (c->status) {
        case CheckStatus::Pass: ++pass; break;
        case CheckStatus::Fail: ++fail; break;
        case CheckStatus::Inconclusive: ++inconclusive; break;
      }
    }
    j["summary"] = {{"pass", pass}, {"fail", fail}, {"inconclusive", inconclusive}};
    return j;
  }
};

}  // namespace eberlein
