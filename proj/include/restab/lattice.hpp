#pragma once

#include <vector>

#include "restab/matching.hpp"

namespace restab {

// Worker-side pointing functions. Defined pointwise on arbitrary matchings
// over the same market; stability of the result for stable/quasi-stable
// inputs is a theorem that the test suites verify, not a precondition.
Matching join_workers(const Matching& mu1, const Matching& mu2, const Market& m);
Matching meet_workers(const Matching& mu1, const Matching& mu2, const Market& m);

// Weak unanimous orders.
bool dominates_workers(const Matching& mu1, const Matching& mu2, const Market& m);

// Firm-side weak dominance. Responsive firms compare equal-size sets by
// sorted rank vectors; unequal sizes outside the determined cases throw
// IncomparableError (on stable pairs sizes always agree).
bool dominates_firms(const Matching& mu1, const Matching& mu2, const Market& m);

// Blair order restricted to the given firms: mu1 dominates mu2 when choosing
// from the union of their assignments returns mu1's assignment, under the
// preferences of `prefs`. Both matchings may live over a worker superset of
// any single market, so the comparison works across market transitions.
bool blair_dominates(const Matching& mu1, const Matching& mu2, const std::vector<FirmId>& firms,
                     const Market& prefs);

// Deduplicated stable matchings in canonical order.
struct StableSet {
  std::vector<Matching> matchings;

  bool contains(const Matching& mu) const;
};

// Members of `stable` that every worker weakly prefers to `floor`.
StableSet upper_set(const StableSet& stable, const Matching& floor, const Market& m);

}  // namespace restab
