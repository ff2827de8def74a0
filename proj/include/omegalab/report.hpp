#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "omegalab/core.hpp"
#include "omegalab/reductions.hpp"
#include "omegalab/rigidity.hpp"

// Machine-readable command reports. JSON output is byte-stable for fixed
// flags: keys are sorted (nlohmann objects are ordered maps), all numbers
// are integers, and nothing environmental (paths, timestamps) is recorded.

namespace omegalab {

struct VerdictEntry {
  std::string name;
  std::string status;  // evidence | refuted | deviation | collision | budget-exhausted | error
  Nat window = 0;
  nlohmann::json witness;  // object, or null when there is nothing to show

  VerdictEntry(std::string name_, std::string status_, Nat window_,
               nlohmann::json witness_ = nullptr)
      : name(std::move(name_)),
        status(std::move(status_)),
        window(window_),
        witness(std::move(witness_)) {}
};

inline VerdictEntry make_check_entry(std::string name, const Verdict& verdict) {
  nlohmann::json witness;
  if (verdict.counterexample) {
    witness = nlohmann::json::object();
    witness["inputs"] = verdict.counterexample->inputs;
    witness["observed"] = verdict.counterexample->observed;
  }
  if (!verdict.caveat.empty()) {
    if (witness.is_null()) witness = nlohmann::json::object();
    witness["note"] = verdict.caveat;
  }
  return VerdictEntry(std::move(name), verdict.refuted() ? "refuted" : "evidence",
                      verdict.window, std::move(witness));
}

inline VerdictEntry make_audit_entry(std::string name, const AuditOutcome& outcome) {
  nlohmann::json witness = nlohmann::json::object();
  witness["context"] = outcome.context;
  std::string status;
  if (outcome.is_deviation()) {
    status = "deviation";
    witness["point"] = outcome.deviation().point;
    witness["value"] = outcome.deviation().value;
  } else if (outcome.is_collision()) {
    status = "collision";
    witness["point1"] = outcome.collision().point1;
    witness["point2"] = outcome.collision().point2;
    witness["value"] = outcome.collision().value;
  } else if (outcome.is_budget_exhausted()) {
    status = "budget-exhausted";
    witness["evaluated"] = outcome.stats().evaluated;
    witness["distinct_projections"] = outcome.stats().distinct_projections;
    witness["max_image_multiplicity"] = outcome.stats().max_image_multiplicity;
  } else {
    status = "error";
    witness["reason"] = "range-violation";
    witness["input"] = outcome.range_violation().input;
    witness["image"] = outcome.range_violation().image;
  }
  return VerdictEntry(std::move(name), std::move(status), 0, std::move(witness));
}

struct Report {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::vector<VerdictEntry> verdicts;
  int exit_code = 0;

  nlohmann::json to_json() const {
    nlohmann::json doc;
    doc["schema"] = 1;
    doc["command"] = command;
    doc["params"] = params;
    doc["exit_code"] = exit_code;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& v : verdicts) {
      nlohmann::json entry;
      entry["name"] = v.name;
      entry["status"] = v.status;
      entry["window"] = v.window;
      entry["witness"] = v.witness;
      list.push_back(std::move(entry));
    }
    doc["verdicts"] = std::move(list);
    return doc;
  }

  std::string to_json_text() const { return to_json().dump(2) + "\n"; }

  std::string to_csv() const {
    std::string out = "name,status,window,witness\n";
    for (const auto& v : verdicts) {
      std::string witness = v.witness.is_null() ? "" : v.witness.dump();
      std::string quoted;
      quoted.reserve(witness.size() + 2);
      quoted += '"';
      for (char c : witness) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      quoted += '"';
      out += v.name + "," + v.status + "," + std::to_string(v.window) + "," + quoted + "\n";
    }
    return out;
  }

  bool any_refuted() const {
    for (const auto& v : verdicts) {
      if (v.status == "refuted") return true;
    }
    return false;
  }

  // For commands whose every verdict is a claimed property: 2 on refutation.
  // Commands that sweep hypothesized candidates (where refuted entries are
  // expected outcomes) set exit_code themselves.
  void finalize_exit_code() { exit_code = any_refuted() ? 2 : 0; }
};

}  // namespace omegalab
