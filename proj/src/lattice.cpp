#include "restab/lattice.hpp"

#include <algorithm>

namespace restab {

namespace {

// Pointwise selection; `take_best` keeps each worker's preferred partner,
// otherwise the dispreferred one. On non-strict comparisons the second
// argument wins, mirroring the if/otherwise shape of the pointing function.
Matching pointwise(const Matching& mu1, const Matching& mu2, const Market& m, bool take_best) {
  mu1.require_valid_for(m);
  mu2.require_valid_for(m);
  std::vector<Matching::Entry> entries;
  entries.reserve(mu1.entries().size());
  for (const auto& [w, p1] : mu1.entries()) {
    const auto p2 = mu2.partner_of(w);
    const bool first_strictly_better = m.worker_prefers(w, p1, p2);
    const bool pick_first = take_best ? first_strictly_better : !first_strictly_better;
    entries.emplace_back(w, pick_first ? p1 : p2);
  }
  return Matching(std::move(entries));
}

}  // namespace

Matching join_workers(const Matching& mu1, const Matching& mu2, const Market& m) {
  return pointwise(mu1, mu2, m, /*take_best=*/true);
}

Matching meet_workers(const Matching& mu1, const Matching& mu2, const Market& m) {
  return pointwise(mu1, mu2, m, /*take_best=*/false);
}

bool dominates_workers(const Matching& mu1, const Matching& mu2, const Market& m) {
  mu1.require_valid_for(m);
  mu2.require_valid_for(m);
  for (const auto& [w, p1] : mu1.entries()) {
    if (!m.worker_weakly_prefers(w, p1, mu2.partner_of(w))) return false;
  }
  return true;
}

bool dominates_firms(const Matching& mu1, const Matching& mu2, const Market& m) {
  mu1.require_valid_for(m);
  mu2.require_valid_for(m);
  for (const auto& [f, _] : m.firms()) {
    const WorkerSet s1 = mu1.assigned_to(f);
    const WorkerSet s2 = mu2.assigned_to(f);
    if (s1 == s2) continue;
    if (!firm_prefers_set(m, f, s1, s2)) return false;
  }
  return true;
}

bool blair_dominates(const Matching& mu1, const Matching& mu2, const std::vector<FirmId>& firms,
                     const Market& prefs) {
  for (FirmId f : firms) {
    const WorkerSet s1 = mu1.assigned_to(f);
    const WorkerSet s2 = mu2.assigned_to(f);
    if (choice(prefs, f, set_union(s1, s2)) != s1) return false;
  }
  return true;
}

bool StableSet::contains(const Matching& mu) const {
  auto it = std::lower_bound(matchings.begin(), matchings.end(), mu, Matching::canonical_less);
  return it != matchings.end() && *it == mu;
}

StableSet upper_set(const StableSet& stable, const Matching& floor, const Market& m) {
  StableSet out;
  for (const Matching& mu : stable.matchings) {
    if (dominates_workers(mu, floor, m)) out.matchings.push_back(mu);
  }
  return out;
}

}  // namespace restab
