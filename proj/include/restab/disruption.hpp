#pragma once

#include <string>
#include <vector>

#include "restab/algorithms.hpp"

namespace restab {

inline constexpr int kConsistencyWorkerCap = 12;

// The two markets agree on their common agents: the same acceptable
// coalitions over shared firms and workers, firm preferences that coincide on
// shared-worker subsets (equal quotas plus equal rankings or subset orders
// filtered to the shared workers; differing preference families never
// coincide), and worker rankings that coincide on shared firms. The coalition
// comparison is exhaustive over shared-worker subsets, capped by the guard.
bool is_consistent(const Market& old_market, const Market& new_market,
                   int worker_cap = kConsistencyWorkerCap);

// Consistency plus population shape: workers may only leave, firms may only
// enter.
bool leads_to(const Market& old_market, const Market& new_market,
              int worker_cap = kConsistencyWorkerCap);

// Population-change generators. Both produce markets consistent with the base
// by construction.
Market retire_workers(const Market& base, const WorkerSet& retiring);
Market add_firms(const Market& base,
                 const std::vector<std::pair<FirmId, FirmPreference>>& newcomers);

struct TransitionSpec {
  WorkerSet retire;
  std::vector<std::pair<FirmId, FirmPreference>> add_firms;
};

struct MarketTransition {
  Market old_market;
  Market new_market;

  // Validates the leads-to relation for an arbitrary market pair.
  static MarketTransition validated(Market old_market, Market new_market,
                                    int worker_cap = kConsistencyWorkerCap);

  // Firms present only in the new market, sorted.
  std::vector<FirmId> entering_firms() const;
};

MarketTransition apply_transition(const Market& base, const TransitionSpec& spec);

// Restriction of an old-market matching to the new population: surviving
// workers keep their partner, entering firms start empty. Requires every
// kept partner to exist in the new market (guaranteed under leads-to).
Matching induce(const Matching& mu_old, const MarketTransition& t);

// Induce then run the Set Offering dynamic in the new market. The input must
// be stable in the old market.
SetOfferingTrace restabilize(const Matching& mu_old, const MarketTransition& t);

struct AssertionResult {
  std::string name;
  bool passed = false;
  std::string witness;  // empty when passed
};

struct TransitionReport {
  std::vector<AssertionResult> assertions;
  bool all_passed() const;
};

/**
 * Checks, on one concrete transition instance, every relation tying the old
 * stable matching to the restabilized one:
 *   (a) surviving workers weakly gain under the new preferences;
 *   (b) the old matching Blair-dominates the output over incumbent firms
 *       under the old preferences;
 *   (c) each entering firm receives exactly its firm-optimal assignment of
 *       the new market;
 *   (d) each surviving worker receives the better of old partner and new
 *       firm-optimal partner;
 *   (e) restabilization is monotone: worker-dominance between old stable
 *       matchings carries over to the outputs;
 *   (f) the new worker-optimal matching weakly improves on the old one for
 *       survivors, and the old one Blair-dominates it over incumbents.
 * Failed assertions are reported with witnesses, never thrown.
 */
TransitionReport verify_transition_theorems(const Matching& mu_old, const MarketTransition& t,
                                            const EnumerationGuard& guard = {});

}  // namespace restab
