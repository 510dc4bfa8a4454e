#pragma once

#include <json.hpp>

#include "restab/generator.hpp"

namespace restab {

struct TheoremCounter {
  std::string name;
  int pass = 0;
  int fail = 0;
  std::vector<nlohmann::json> witnesses;  // capped; one per failing trial
};

struct SuiteReport {
  ScenarioConfig config;
  EnumerationGuard guard;
  bool self_test_corrupt = false;
  int trials_run = 0;
  int trials_skipped = 0;
  std::vector<TheoremCounter> theorems;

  bool all_passed() const;
};

struct SuiteOptions {
  EnumerationGuard guard;
  // Deliberately perturbs the checked Set Offering output so failures and
  // witnesses can be observed end to end.
  bool corrupt_for_self_test = false;
  int max_witnesses = 3;
  // Sampled pairs per trial for the per-worker independence property.
  int independence_samples = 16;
};

// Runs every lattice / Set Offering / transition property over n_trials
// generated markets and counts pass/fail per theorem, attaching the violating
// market as a witness on failure. A trial counts as a pass for a theorem when
// every instance of the property holds on that trial's market.
SuiteReport run_theorem_suite(const ScenarioConfig& cfg, const SuiteOptions& options = {});

nlohmann::json suite_report_to_json(const SuiteReport& report);

// Single-scenario execution: restabilize mu_old across the transition and
// collect the trace, the theorem report, and per-agent before/after rows.
struct ScenarioOutcome {
  SetOfferingTrace trace;
  TransitionReport report;
  int chain_length = 0;  // Set Offering rounds with at least one offer

  struct WorkerRow {
    WorkerId worker;
    std::optional<FirmId> old_partner;
    std::optional<FirmId> new_partner;
    bool improved = false;  // strict, under the new market's preferences
  };
  struct FirmRow {
    FirmId firm;
    WorkerSet old_assigned;
    WorkerSet new_assigned;
    bool improved = false;  // strict Blair improvement under old preferences
  };
  std::vector<WorkerRow> worker_rows;
  std::vector<FirmRow> firm_rows;
};

ScenarioOutcome run_scenario(const Market& base, const Matching& mu_old,
                             const TransitionSpec& spec, const EnumerationGuard& guard = {});

std::string scenario_csv(const ScenarioOutcome& outcome, int trial = 0);

}  // namespace restab
