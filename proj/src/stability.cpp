#include "restab/stability.hpp"

#include <algorithm>

namespace restab {

bool is_individually_rational(const Matching& mu, const Market& m) {
  mu.require_valid_for(m);
  for (const auto& [w, partner] : mu.entries()) {
    if (partner.has_value() && !m.acceptable_to_worker(w, *partner)) return false;
  }
  for (const auto& [f, _] : m.firms()) {
    const WorkerSet held = mu.assigned_to(f);
    if (choice(m, f, held) != held) return false;
  }
  return true;
}

std::vector<std::pair<WorkerId, FirmId>> blocking_pairs(const Matching& mu, const Market& m) {
  mu.require_valid_for(m);
  std::vector<std::pair<WorkerId, FirmId>> out;
  for (const auto& [w, partner] : mu.entries()) {
    const auto& ranking = m.worker_pref(w).ranking;
    for (FirmId f : ranking) {
      if (partner == f) break;  // only firms strictly above the current match
      const WorkerSet held = mu.assigned_to(f);
      if (set_contains(choice(m, f, set_with(held, w)), w)) {
        out.emplace_back(w, f);
      }
    }
  }
  return out;
}

bool is_stable(const Matching& mu, const Market& m) {
  if (!is_individually_rational(mu, m)) return false;
  for (const auto& [w, partner] : mu.entries()) {
    const auto& ranking = m.worker_pref(w).ranking;
    for (FirmId f : ranking) {
      if (partner == f) break;
      const WorkerSet held = mu.assigned_to(f);
      if (set_contains(choice(m, f, set_with(held, w)), w)) return false;
    }
  }
  return true;
}

WorkerSet envy_set(FirmId f, const Matching& mu, const Market& m) {
  mu.require_valid_for(m);
  if (!m.has_firm(f)) throw InputError("unknown firm " + to_string(f));
  WorkerSet out;
  for (const auto& [w, partner] : mu.entries()) {
    if (m.worker_prefers(w, f, partner)) out.push_back(w);
  }
  return out;
}

bool is_firm_quasi_stable(const Matching& mu, const Market& m, int subset_cap) {
  if (!is_individually_rational(mu, m)) return false;
  for (const auto& [f, pref] : m.firms()) {
    const WorkerSet envious = envy_set(f, mu, m);
    if (envious.empty()) continue;
    const WorkerSet held = mu.assigned_to(f);
    if (pref.is_responsive()) {
      // One choice over the full envy set decides all subsets by
      // substitutability of responsive preferences.
      if (!is_subset_of(held, choice(m, f, set_union(held, envious)))) return false;
    } else {
      if (static_cast<int>(envious.size()) > subset_cap) {
        throw SizeGuardError("quasi-stability subset check capped at " +
                             std::to_string(subset_cap) + " envious workers");
      }
      bool ok = true;
      for_each_subset(envious, [&](const WorkerSet& s) {
        if (!ok || s.empty()) return;
        if (!is_subset_of(held, choice(m, f, set_union(held, s)))) ok = false;
      });
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace restab
