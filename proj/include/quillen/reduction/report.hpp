#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quillen/homology/complex.hpp"

namespace quillen {

enum class Verdict { Verified, Inconclusive, CounterWitness };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "Verified";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::CounterWitness: return "CounterWitness";
  }
  return "?";
}

struct ReductionStep {
  std::string operation;
  std::string certificate;  // kind of evidence, "none" when the step only computes
  bool ok = true;
  std::string detail;
  std::optional<HomologyResult> before, after;
};

struct ReductionReport {
  std::string group;
  std::uint32_t prime = 0;
  std::vector<ReductionStep> steps;
  Verdict verdict = Verdict::Inconclusive;
  nlohmann::ordered_json certificates = nlohmann::ordered_json::array();

  ReductionStep& add(std::string op, std::string cert, bool ok, std::string detail = "") {
    steps.push_back({std::move(op), std::move(cert), ok, std::move(detail), std::nullopt, std::nullopt});
    return steps.back();
  }
  bool all_ok() const {
    for (const auto& s : steps)
      if (!s.ok) return false;
    return true;
  }
  const ReductionStep* find(const std::string& op) const {
    for (const auto& s : steps)
      if (s.operation == op) return &s;
    return nullptr;
  }
};

inline nlohmann::ordered_json report_to_json(const ReductionReport& r) {
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : r.steps) {
    nlohmann::ordered_json j{{"operation", s.operation}, {"certificate", s.certificate}, {"ok", s.ok}};
    if (!s.detail.empty()) j["detail"] = s.detail;
    if (s.before) j["before"] = homology_to_json(*s.before);
    if (s.after) j["after"] = homology_to_json(*s.after);
    steps.push_back(std::move(j));
  }
  return {{"group", r.group},
          {"prime", r.prime},
          {"steps", steps},
          {"verdict", to_string(r.verdict)},
          {"certificates", r.certificates}};
}

}  // namespace quillen
