#pragma once

// JSON reports. Every report parses back to an equal object.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "incidence/verifier.hpp"

namespace incidence {

using nlohmann::json;

/// Verdicts on one map, as printed by `classify` and `check`. Unknown
/// verdicts (a brute-force check that does not apply, e.g. over Q) are empty.
struct ClassificationReport {
  std::optional<bool> unital;
  std::optional<bool> preserver;
  std::optional<bool> strong;
  std::optional<bool> inverse_preserving;
  std::optional<bool> jordan;
  std::optional<PreserverSpec> spec;
  /// Set when classification refuted the map.
  std::optional<std::string> refuted_lemma;
  std::vector<std::string> witnesses;

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

/// Classifies phi and runs whichever predicates are decidable for its field and
/// size. Over Q, preserver and strong are decided through the normal form.
ClassificationReport classification_report(const LinearMap& phi, const GateOptions& gates = {});

json to_json(const LinearMap& phi);
LinearMap map_from_json(const json& j);

json to_json(const PreserverSpec& spec);
PreserverSpec spec_from_json(const json& j);

json to_json(const LemmaVerdict& v);
LemmaVerdict verdict_from_json(const json& j);

/// {"pass": ..., "applicable": n, "failed": n, "verdicts": [...]}.
json verdicts_to_json(const std::vector<LemmaVerdict>& verdicts);
std::vector<LemmaVerdict> verdicts_from_json(const json& j);

json to_json(const CensusReport& report);
CensusReport census_from_json(const json& j);

json to_json(const ClassificationReport& report);
ClassificationReport classification_from_json(const json& j);

}  // namespace incidence
