#pragma once

#include <tuple>
#include <vector>

#include "restab/matching.hpp"
#include "restab/stability.hpp"

namespace restab::testing {

// Compact builders for fixture markets.

struct FirmSpec {
  int id;
  int quota;
  std::vector<int> ranking;
};

struct FirmSubsetSpec {
  int id;
  int quota;
  std::vector<std::vector<int>> order;
};

struct WorkerSpec {
  int id;
  std::vector<int> ranking;
};

inline std::pair<WorkerId, WorkerPreference> worker_of(const WorkerSpec& spec) {
  WorkerPreference pref;
  for (int f : spec.ranking) pref.ranking.push_back(FirmId{f});
  return {WorkerId{spec.id}, std::move(pref)};
}

inline Market responsive_market(const std::vector<FirmSpec>& firms,
                                const std::vector<WorkerSpec>& workers) {
  std::vector<std::pair<FirmId, FirmPreference>> fs;
  for (const FirmSpec& spec : firms) {
    ResponsivePreference body;
    for (int w : spec.ranking) body.ranking.push_back(WorkerId{w});
    fs.emplace_back(FirmId{spec.id}, FirmPreference{spec.quota, std::move(body)});
  }
  std::vector<std::pair<WorkerId, WorkerPreference>> ws;
  for (const WorkerSpec& spec : workers) ws.push_back(worker_of(spec));
  return Market(std::move(fs), std::move(ws));
}

inline FirmPreference subset_pref(int quota, const std::vector<std::vector<int>>& order) {
  SubsetOrderPreference body;
  for (const auto& subset : order) {
    WorkerSet s;
    for (int w : subset) s.push_back(WorkerId{w});
    body.order.push_back(make_worker_set(std::move(s)));
  }
  return FirmPreference{quota, std::move(body)};
}

inline Market explicit_market(const std::vector<FirmSubsetSpec>& firms,
                              const std::vector<WorkerSpec>& workers) {
  std::vector<std::pair<FirmId, FirmPreference>> fs;
  for (const FirmSubsetSpec& spec : firms) {
    fs.emplace_back(FirmId{spec.id}, subset_pref(spec.quota, spec.order));
  }
  std::vector<std::pair<WorkerId, WorkerPreference>> ws;
  for (const WorkerSpec& spec : workers) ws.push_back(worker_of(spec));
  return Market(std::move(fs), std::move(ws));
}

// Assignment as {worker, firm} pairs with -1 for unmatched; workers of the
// market that are omitted default to unmatched.
inline Matching matching_of(const Market& m, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Matching::Entry> entries;
  for (const auto& [w, _] : m.workers()) entries.emplace_back(w, std::nullopt);
  Matching mu{std::move(entries)};
  for (const auto& [w, f] : pairs) {
    mu = mu.reassigned(WorkerId{w}, f < 0 ? std::optional<FirmId>{} : FirmId{f});
  }
  return mu;
}

inline WorkerSet ws(const std::vector<int>& ids) {
  WorkerSet out;
  for (int w : ids) out.push_back(WorkerId{w});
  return make_worker_set(std::move(out));
}

// --- Independent oracles -------------------------------------------------
//
// These re-execute definitions by routes independent of the production
// implementations they check.

// Explicit-order choice by exhaustive scan: enumerate every subset of the
// pool, keep those of admissible size, and pick the one with the smallest
// stored-order position.
inline WorkerSet oracle_choice_explicit(const Market& m, FirmId f, const WorkerSet& pool) {
  const FirmPreference& p = m.firm_pref(f);
  const auto& order = p.subset_order().order;
  auto position = [&](const WorkerSet& s) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] == s) return i;
    }
    return order.size();
  };
  WorkerSet best;
  std::size_t best_pos = position(best);
  for_each_subset(pool, [&](const WorkerSet& s) {
    if (static_cast<int>(s.size()) > p.quota) return;
    const std::size_t pos = position(s);
    if (pos < best_pos) {
      best = s;
      best_pos = pos;
    }
  });
  return best;
}

// Firm quasi-stability by the literal definition: every nonempty subset of
// the envy set, for every firm, keeps the current workforce inside the choice.
inline bool oracle_fqs_literal(const Matching& mu, const Market& m) {
  if (!is_individually_rational(mu, m)) return false;
  for (const auto& [f, _] : m.firms()) {
    const WorkerSet envious = envy_set(f, mu, m);
    const WorkerSet held = mu.assigned_to(f);
    bool ok = true;
    for_each_subset(envious, [&](const WorkerSet& s) {
      if (!ok || s.empty()) return;
      if (!is_subset_of(held, choice(m, f, set_union(held, s)))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

// Initial availability pool by the one-step-improvement form: workers outside
// mu(f) for which some under-quota set improves when they join. Explicit
// bodies only (the comparison reads the stored order).
inline WorkerSet oracle_initial_pool_literal(const Market& m, FirmId f, const Matching& mu) {
  const FirmPreference& p = m.firm_pref(f);
  const auto& order = p.subset_order().order;
  auto position = [&](const WorkerSet& s) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] == s) return i;
    }
    return order.size();
  };
  const WorkerSet held = mu.assigned_to(f);
  WorkerSet out;
  for (const auto& [w, _] : m.workers()) {
    if (set_contains(held, w)) continue;
    bool improves_somewhere = false;
    for_each_subset(m.worker_id_set(), [&](const WorkerSet& s) {
      if (improves_somewhere) return;
      if (static_cast<int>(s.size()) >= p.quota || set_contains(s, w)) return;
      if (position(set_with(s, w)) < position(s)) improves_somewhere = true;
    });
    if (improves_somewhere) out.push_back(w);
  }
  return out;
}

// Every matching of the market, for exhaustive property checks.
template <typename Fn>
void for_each_matching_of(const Market& m, Fn&& fn) {
  const auto workers = m.worker_ids();
  const auto firms = m.firm_ids();
  std::vector<std::size_t> digits(workers.size(), 0);
  while (true) {
    std::vector<Matching::Entry> entries;
    for (std::size_t i = 0; i < workers.size(); ++i) {
      entries.emplace_back(workers[i], digits[i] == 0 ? std::optional<FirmId>{}
                                                      : std::optional<FirmId>{firms[digits[i] - 1]});
    }
    fn(Matching(std::move(entries)));
    std::size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] <= firms.size()) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == digits.size()) return;
  }
}

}  // namespace restab::testing
