#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "k3calc/config.hpp"
#include "k3calc/double_cover.hpp"

namespace k3calc {

/// Deliberate corruptions used to show that a scenario's expectations can
/// fail. drop_blowup omits the last blow-up of the construction (or, where
/// the construction blows up nothing, shifts the ledger by one blow-down);
/// move_branch moves one branch flag onto a neighbouring non-branch curve.
enum class Mutation { none, drop_blowup, move_branch };

std::string to_string(Mutation m);
Mutation parse_mutation(const std::string& text);
const std::vector<Mutation>& registered_mutations();

struct Expectation {
  std::string name;
  nlohmann::json expected;
  nlohmann::json actual;
  std::string origin;  // "published" or "derived"
  bool pass = false;
};

struct ScenarioReport {
  std::string name;
  std::vector<Expectation> checks;
  std::vector<std::pair<std::string, Config>> artifacts;
  std::vector<std::string> notes;
  std::optional<FixedLocusSummary> fixed;

  bool passed() const;
  const Config* artifact(const std::string& key) const;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  /// Part of the K3 certificate family (upstairs Euler number 24 expected).
  bool k3_certificate = false;
  std::vector<Mutation> mutations;  // mutations that apply
};

struct RunOptions {
  Mutation mutation = Mutation::none;
  bool trace = false;
};

/// Concrete registered instances, in a fixed order.
std::vector<ScenarioInfo> list_scenarios();

/// Runs "family" or "family(arg, ...)". Throws Error(unknown_id) for an
/// unknown family and Error(invalid_argument) for bad arguments. Failures
/// inside the pipeline become a failed "pipeline completes" expectation.
ScenarioReport run_scenario(const std::string& name, const RunOptions& options = {});

nlohmann::json to_json(const ScenarioReport& report);

}  // namespace k3calc
