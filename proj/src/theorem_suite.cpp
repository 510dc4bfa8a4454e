#include "restab/theorem_suite.hpp"

#include <algorithm>
#include <sstream>

#include "restab/json_io.hpp"
#include "restab/stability.hpp"

namespace restab {

using nlohmann::json;

bool SuiteReport::all_passed() const {
  return std::all_of(theorems.begin(), theorems.end(),
                     [](const TheoremCounter& t) { return t.fail == 0; });
}

namespace {

const std::vector<std::string> kBaseTheorems = {
    "stable_lattice_closure",
    "rural_hospitals",
    "polarization",
    "da_firm_optimal",
    "da_worker_optimal",
    "mixed_join_stability",
    "upper_set_sublattice",
    "so_output_stable",
    "so_intermediates_quasi_stable",
    "so_trace_worker_monotone",
    "so_dominance_preservation",
    "so_worst_point",
    "so_closed_form",
    "so_per_worker_formula",
    "so_per_worker_independence",
};

const std::vector<std::string> kTransitionTheorems = {
    "induced_quasi_stable",
    "workers_weakly_gain",
    "incumbents_blair_dominated_by_old",
    "entering_firms_get_firm_optimal",
    "worker_outcome_formula",
    "restabilization_monotone",
    "worker_optimal_comparison",
};

// Deliberate perturbation of a computed output so the harness can prove it
// notices violations: toggle the first worker that can be toggled.
Matching corrupt_matching(const Matching& mu, const Market& m) {
  for (const auto& [w, partner] : mu.entries()) {
    if (partner.has_value()) return mu.reassigned(w, std::nullopt);
    const auto& ranking = m.worker_pref(w).ranking;
    if (!ranking.empty()) return mu.reassigned(w, ranking.front());
  }
  return mu;
}

class TrialRecorder {
 public:
  TrialRecorder(std::vector<TheoremCounter>& counters, int max_witnesses)
      : counters_(counters), max_witnesses_(max_witnesses) {
    failed_.resize(counters.size(), false);
    details_.resize(counters.size());
  }

  void fail(const std::string& theorem, const std::string& detail) {
    const std::size_t at = index_of(theorem);
    if (!failed_[at]) details_[at] = detail;
    failed_[at] = true;
  }

  bool already_failed(const std::string& theorem) const { return failed_[index_of(theorem)]; }

  void commit(int trial, const json& market_json) {
    for (std::size_t i = 0; i < counters_.size(); ++i) {
      if (failed_[i]) {
        counters_[i].fail += 1;
        if (static_cast<int>(counters_[i].witnesses.size()) < max_witnesses_) {
          json witness;
          witness["trial"] = trial;
          witness["detail"] = details_[i];
          witness["market"] = market_json;
          counters_[i].witnesses.push_back(std::move(witness));
        }
      } else {
        counters_[i].pass += 1;
      }
    }
  }

 private:
  std::size_t index_of(const std::string& theorem) const {
    for (std::size_t i = 0; i < counters_.size(); ++i) {
      if (counters_[i].name == theorem) return i;
    }
    throw Error("unknown theorem counter " + theorem);
  }

  std::vector<TheoremCounter>& counters_;
  int max_witnesses_;
  std::vector<bool> failed_;
  std::vector<std::string> details_;
};

void check_base_theorems(const Market& market, const SuiteOptions& options, std::uint64_t seed,
                         int trial, TrialRecorder& rec) {
  const StableSet stable = enumerate_stable(market, options.guard);
  const std::vector<Matching> fqs = enumerate_fqs(market, options.guard);
  const Matching mu_f = da_firm_proposing(market);
  const Matching mu_w = da_worker_proposing(market);

  // Lattice closure, rural hospitals, polarization over stable pairs.
  for (std::size_t i = 0; i < stable.matchings.size(); ++i) {
    const Matching& a = stable.matchings[i];
    for (std::size_t j = i + 1; j < stable.matchings.size(); ++j) {
      const Matching& b = stable.matchings[j];
      if (!is_stable(join_workers(a, b, market), market) ||
          !is_stable(meet_workers(a, b, market), market)) {
        rec.fail("stable_lattice_closure", "join or meet of a stable pair is unstable");
      }
      for (const auto& [f, pref] : market.firms()) {
        const WorkerSet sa = a.assigned_to(f);
        const WorkerSet sb = b.assigned_to(f);
        if (sa.size() != sb.size() ||
            (static_cast<int>(sa.size()) < pref.quota && sa != sb)) {
          rec.fail("rural_hospitals", to_string(f) + " differs across stable matchings");
        }
      }
    }
  }
  for (const Matching& mu : stable.matchings) {
    try {
      if (!dominates_firms(mu_f, mu, market) || !dominates_firms(mu, mu_w, market) ||
          !dominates_workers(mu_w, mu, market) || !dominates_workers(mu, mu_f, market)) {
        rec.fail("polarization", "an extreme stable matching fails to dominate");
      }
    } catch (const IncomparableError& e) {
      rec.fail("polarization", e.what());
    }
  }

  if (!stable.contains(mu_f)) {
    rec.fail("da_firm_optimal", "firm-proposing output is not in the stable set");
  }
  if (!stable.contains(mu_w)) {
    rec.fail("da_worker_optimal", "worker-proposing output is not in the stable set");
  }

  // Per-worker achievable partners for the closed-form corollary.
  std::vector<std::pair<WorkerId, std::vector<std::optional<FirmId>>>> achievable;
  for (const auto& [w, _] : market.workers()) {
    std::vector<std::optional<FirmId>> partners;
    for (const Matching& mu : stable.matchings) partners.push_back(mu.partner_of(w));
    achievable.emplace_back(w, std::move(partners));
  }
  auto is_achievable = [&](WorkerId w, const std::optional<FirmId>& p) {
    for (const auto& [wid, partners] : achievable) {
      if (wid == w) {
        return std::find(partners.begin(), partners.end(), p) != partners.end();
      }
    }
    return false;
  };

  std::vector<Matching> outputs;
  outputs.reserve(fqs.size());
  for (const Matching& start : fqs) {
    const SetOfferingTrace trace = set_offering(market, start);
    const Matching output = options.corrupt_for_self_test
                                ? corrupt_matching(trace.output, market)
                                : trace.output;
    outputs.push_back(output);

    if (!is_stable(output, market)) {
      rec.fail("so_output_stable", "set offering output is unstable");
    }
    if (output != join_workers(start, mu_f, market)) {
      rec.fail("so_closed_form", "output differs from input joined with the firm optimum");
    }

    const StableSet above = upper_set(stable, start, market);
    if (above.matchings.empty()) {
      rec.fail("upper_set_sublattice", "no stable matching dominates a quasi-stable one");
    } else {
      if (!rec.already_failed("upper_set_sublattice")) {
        for (std::size_t i = 0; i < above.matchings.size(); ++i) {
          for (std::size_t j = i + 1; j < above.matchings.size(); ++j) {
            if (!above.contains(join_workers(above.matchings[i], above.matchings[j], market)) ||
                !above.contains(meet_workers(above.matchings[i], above.matchings[j], market))) {
              rec.fail("upper_set_sublattice", "upper set is not closed under join/meet");
            }
          }
        }
      }
      Matching worst = above.matchings.front();
      for (const Matching& mu : above.matchings) worst = meet_workers(worst, mu, market);
      if (!above.contains(worst) || output != worst) {
        rec.fail("so_worst_point", "output is not the worker-worst dominating stable matching");
      }
    }

    for (const auto& [w, start_partner] : start.entries()) {
      const auto expected =
          is_achievable(w, start_partner) ? start_partner : mu_f.partner_of(w);
      if (output.partner_of(w) != expected) {
        rec.fail("so_per_worker_formula", to_string(w) + " deviates from the achievability rule");
      }
    }

    const Matching* previous = &trace.input;
    for (const SetOfferingStep& step : trace.steps) {
      if (!is_firm_quasi_stable(step.matching, market)) {
        rec.fail("so_intermediates_quasi_stable", "an intermediate matching is not quasi-stable");
      }
      if (!dominates_workers(step.matching, *previous, market)) {
        rec.fail("so_trace_worker_monotone", "a worker lost ground along the trace");
      }
      previous = &step.matching;
    }
    for (const Matching& mu : stable.matchings) {
      if (!dominates_workers(mu, start, market)) continue;
      for (const SetOfferingStep& step : trace.steps) {
        if (!dominates_workers(mu, step.matching, market)) {
          rec.fail("so_dominance_preservation",
                   "a dominating stable matching loses to an intermediate");
        }
      }
    }

    for (const Matching& mu : stable.matchings) {
      const Matching mixed = join_workers(mu, start, market);
      if (!is_stable(mixed, market)) {
        rec.fail("mixed_join_stability", "stable-with-quasi-stable join is unstable");
      }
    }
  }

  // DA extremality against the brute-forced set.
  try {
    for (const Matching& mu : stable.matchings) {
      if (!dominates_firms(mu_f, mu, market)) {
        rec.fail("da_firm_optimal", "a stable matching beats the firm-proposing output");
      }
      if (!dominates_workers(mu_w, mu, market)) {
        rec.fail("da_worker_optimal", "a stable matching beats the worker-proposing output");
      }
    }
  } catch (const IncomparableError& e) {
    rec.fail("da_firm_optimal", e.what());
  }

  // Agreement at a worker carries to the outputs.
  SplitMix64 rng(seed + 7777ull * (static_cast<std::uint64_t>(trial) + 1));
  if (fqs.size() >= 2) {
    for (int k = 0; k < options.independence_samples; ++k) {
      const std::size_t i = rng.next_below(fqs.size());
      const std::size_t j = rng.next_below(fqs.size());
      for (const auto& [w, pi] : fqs[i].entries()) {
        if (pi != fqs[j].partner_of(w)) continue;
        if (outputs[i].partner_of(w) != outputs[j].partner_of(w)) {
          rec.fail("so_per_worker_independence",
                   to_string(w) + " has equal inputs but different outputs");
        }
      }
    }
  }
}

void check_transition_theorems(const Market& market, const ScenarioConfig& cfg,
                               const SuiteOptions& options, int trial, TrialRecorder& rec) {
  const TransitionSpec spec = generate_transition_spec(cfg, trial, market);
  const MarketTransition t = apply_transition(market, spec);
  const StableSet old_stable = enumerate_stable(t.old_market, options.guard);
  for (const Matching& mu_old : old_stable.matchings) {
    if (!is_firm_quasi_stable(induce(mu_old, t), t.new_market)) {
      rec.fail("induced_quasi_stable", "induced matching is not quasi-stable in the new market");
    }
    const TransitionReport report = verify_transition_theorems(mu_old, t, options.guard);
    for (const AssertionResult& a : report.assertions) {
      if (!a.passed) rec.fail(a.name, a.witness);
    }
  }
}

}  // namespace

SuiteReport run_theorem_suite(const ScenarioConfig& cfg, const SuiteOptions& options) {
  cfg.validate();
  SuiteReport report;
  report.config = cfg;
  report.guard = options.guard;
  report.self_test_corrupt = options.corrupt_for_self_test;
  for (const std::string& name : kBaseTheorems) {
    report.theorems.push_back(TheoremCounter{name, 0, 0, {}});
  }
  if (cfg.transition.has_value()) {
    for (const std::string& name : kTransitionTheorems) {
      report.theorems.push_back(TheoremCounter{name, 0, 0, {}});
    }
  }

  for (int trial = 0; trial < cfg.n_trials; ++trial) {
    // Generation may legitimately fail for the explicit family; skip and move on.
    std::optional<Market> market;
    try {
      market.emplace(generate_market(cfg, trial));
    } catch (const PreconditionError&) {
      report.trials_skipped += 1;
      continue;
    }

    TrialRecorder rec(report.theorems, options.max_witnesses);
    check_base_theorems(*market, options, cfg.rng_seed, trial, rec);
    if (cfg.transition.has_value()) {
      check_transition_theorems(*market, cfg, options, trial, rec);
    }
    rec.commit(trial, market_to_json(*market));
    report.trials_run += 1;
  }
  return report;
}

json suite_report_to_json(const SuiteReport& report) {
  json cfg;
  cfg["seed"] = report.config.rng_seed;
  cfg["trials"] = report.config.n_trials;
  cfg["firms"] = report.config.n_firms;
  cfg["workers"] = report.config.n_workers;
  cfg["quota_max"] = report.config.quota_max;
  cfg["density"] = report.config.acceptability_density;
  cfg["family"] = to_string(report.config.family);
  cfg["retire"] = report.config.transition ? report.config.transition->retire_count : 0;
  cfg["add_firms"] = report.config.transition ? report.config.transition->add_firm_count : 0;

  json theorems = json::array();
  for (const TheoremCounter& t : report.theorems) {
    json entry;
    entry["name"] = t.name;
    entry["pass"] = t.pass;
    entry["fail"] = t.fail;
    entry["witnesses"] = t.witnesses;
    theorems.push_back(std::move(entry));
  }

  json j;
  j["config"] = std::move(cfg);
  j["max_enum_workers"] = report.guard.max_workers;
  j["max_enum_firms"] = report.guard.max_firms;
  j["self_test_corrupt"] = report.self_test_corrupt;
  j["trials_run"] = report.trials_run;
  j["trials_skipped"] = report.trials_skipped;
  j["theorems"] = std::move(theorems);
  j["all_passed"] = report.all_passed();
  return j;
}

ScenarioOutcome run_scenario(const Market& base, const Matching& mu_old,
                             const TransitionSpec& spec, const EnumerationGuard& guard) {
  const MarketTransition t = apply_transition(base, spec);
  ScenarioOutcome outcome;
  outcome.trace = restabilize(mu_old, t);
  outcome.report = verify_transition_theorems(mu_old, t, guard);
  outcome.chain_length = outcome.trace.rounds_with_offers();

  const Matching& output = outcome.trace.output;
  for (const auto& [w, old_partner] : mu_old.entries()) {
    ScenarioOutcome::WorkerRow row;
    row.worker = w;
    row.old_partner = old_partner;
    if (t.new_market.has_worker(w)) {
      row.new_partner = output.partner_of(w);
      row.improved = t.new_market.worker_prefers(w, row.new_partner, old_partner);
    }
    outcome.worker_rows.push_back(row);
  }
  for (const auto& [f, _] : t.new_market.firms()) {
    ScenarioOutcome::FirmRow row;
    row.firm = f;
    row.new_assigned = output.assigned_to(f);
    if (t.old_market.has_firm(f)) {
      row.old_assigned = mu_old.assigned_to(f);
      // Strict Blair improvement under the old preferences.
      row.improved = row.new_assigned != row.old_assigned &&
                     choice(t.old_market, f, set_union(row.old_assigned, row.new_assigned)) ==
                         row.new_assigned;
    } else {
      row.improved = !row.new_assigned.empty();
    }
    outcome.firm_rows.push_back(row);
  }
  return outcome;
}

std::string scenario_csv(const ScenarioOutcome& outcome, int trial) {
  std::ostringstream out;
  out << "kind,trial,id,old,new,improved,chain_length\n";
  auto partner_cell = [](const std::optional<FirmId>& p) {
    return p.has_value() ? std::to_string(p->value) : std::string();
  };
  auto set_cell = [](const WorkerSet& s) {
    std::string cell;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) cell += ";";
      cell += std::to_string(s[i].value);
    }
    return cell;
  };
  for (const auto& row : outcome.worker_rows) {
    out << "worker," << trial << "," << row.worker.value << "," << partner_cell(row.old_partner)
        << "," << partner_cell(row.new_partner) << "," << (row.improved ? "true" : "false")
        << ",\n";
  }
  for (const auto& row : outcome.firm_rows) {
    out << "firm," << trial << "," << row.firm.value << "," << set_cell(row.old_assigned) << ","
        << set_cell(row.new_assigned) << "," << (row.improved ? "true" : "false") << ",\n";
  }
  out << "chain," << trial << ",,,,," << outcome.chain_length << "\n";
  return out.str();
}

}  // namespace restab
