#pragma once

#include <utility>
#include <vector>

#include "restab/matching.hpp"

namespace restab {

// No worker would rather be unmatched, and every firm keeps exactly its
// choice from its own assignment.
bool is_individually_rational(const Matching& mu, const Market& m);

// All pairs (w, f) with w not at f, where f would take w alongside its
// current workers and w strictly prefers f to its current partner.
std::vector<std::pair<WorkerId, FirmId>> blocking_pairs(const Matching& mu, const Market& m);

bool is_stable(const Matching& mu, const Market& m);

// Workers who strictly prefer f to their current partner. Workers matched to
// f are excluded by strictness.
WorkerSet envy_set(FirmId f, const Matching& mu, const Market& m);

inline constexpr int kQuasiStableSubsetCap = 16;

// Firm quasi-stability: individually rational, and no firm facing envious
// workers would fire anyone it currently holds when expanding. For responsive
// firms one choice over the whole envy set decides this (substitutability:
// anyone kept alongside the full envy set is kept alongside any part of it).
// Explicit orders are checked against every nonempty envy subset, guarded by
// `subset_cap` on the envy-set size.
bool is_firm_quasi_stable(const Matching& mu, const Market& m,
                          int subset_cap = kQuasiStableSubsetCap);

}  // namespace restab
