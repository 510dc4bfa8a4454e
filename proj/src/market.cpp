#include "restab/market.hpp"

#include <algorithm>
#include <limits>

namespace restab {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

template <typename Id, typename Pref>
const Pref* find_pref(const std::vector<std::pair<Id, Pref>>& table, Id id) {
  auto it = std::lower_bound(table.begin(), table.end(), id,
                             [](const auto& entry, Id key) { return entry.first < key; });
  if (it == table.end() || it->first != id) return nullptr;
  return &it->second;
}

// Position of the subset in the stored order, or npos when unlisted.
std::size_t order_index(const SubsetOrderPreference& p, const WorkerSet& s) {
  for (std::size_t i = 0; i < p.order.size(); ++i) {
    if (p.order[i] == s) return i;
  }
  return npos;
}

// Core choice evaluation against a canonical (sorted, unique) pool. Shared by
// the public choice() and the validators, which may probe preferences not
// attached to any firm of the market.
WorkerSet choice_under(const FirmPreference& p, const WorkerSet& pool) {
  if (p.is_responsive()) {
    WorkerSet chosen;
    for (WorkerId w : p.responsive().ranking) {
      if (static_cast<int>(chosen.size()) == p.quota) break;
      if (set_contains(pool, w)) chosen.push_back(w);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }
  for (const WorkerSet& candidate : p.subset_order().order) {
    if (static_cast<int>(candidate.size()) > p.quota) continue;
    if (is_subset_of(candidate, pool)) return candidate;
  }
  // Unreachable for well-formed orders: the empty set is always listed.
  throw InputError("subset order admits no subset of the pool");
}

}  // namespace

Market::Market(std::vector<std::pair<FirmId, FirmPreference>> firms,
               std::vector<std::pair<WorkerId, WorkerPreference>> workers)
    : firms_(std::move(firms)), workers_(std::move(workers)) {
  if (firms_.empty() || workers_.empty()) {
    throw InputError("market needs at least one firm and one worker");
  }
  auto by_id = [](const auto& a, const auto& b) { return a.first < b.first; };
  std::sort(firms_.begin(), firms_.end(), by_id);
  std::sort(workers_.begin(), workers_.end(), by_id);
  for (std::size_t i = 1; i < firms_.size(); ++i) {
    if (firms_[i].first == firms_[i - 1].first) {
      throw InputError("duplicate firm id " + to_string(firms_[i].first));
    }
  }
  for (std::size_t i = 1; i < workers_.size(); ++i) {
    if (workers_[i].first == workers_[i - 1].first) {
      throw InputError("duplicate worker id " + to_string(workers_[i].first));
    }
  }

  for (const auto& [wid, pref] : workers_) {
    std::vector<FirmId> seen = pref.ranking;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      throw InputError("duplicate firm in ranking of " + to_string(wid));
    }
    for (FirmId f : pref.ranking) {
      if (!has_firm(f)) {
        throw InputError(to_string(wid) + " ranks unknown firm " + to_string(f));
      }
    }
  }

  const WorkerSet all_workers = worker_id_set();
  for (const auto& [fid, pref] : firms_) {
    if (pref.quota < 1) {
      throw InputError(to_string(fid) + " has non-positive quota");
    }
    if (pref.is_responsive()) {
      std::vector<WorkerId> seen = pref.responsive().ranking;
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw InputError("duplicate worker in ranking of " + to_string(fid));
      }
      for (WorkerId w : pref.responsive().ranking) {
        if (!has_worker(w)) {
          throw InputError(to_string(fid) + " ranks unknown worker " + to_string(w));
        }
      }
    } else {
      const auto& order = pref.subset_order().order;
      for (const WorkerSet& s : order) {
        if (!std::is_sorted(s.begin(), s.end()) ||
            std::adjacent_find(s.begin(), s.end()) != s.end()) {
          throw InputError("subset order of " + to_string(fid) + " has a non-canonical subset");
        }
        for (WorkerId w : s) {
          if (!has_worker(w)) {
            throw InputError(to_string(fid) + " lists unknown worker " + to_string(w));
          }
        }
      }
      std::vector<WorkerSet> sorted = order;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InputError("subset order of " + to_string(fid) + " lists a subset twice");
      }
      // The order must rank every subset up to the quota so that choice is
      // total; larger subsets are implicitly below the empty set.
      const auto required = subsets_up_to(all_workers, static_cast<std::size_t>(pref.quota));
      for (const WorkerSet& s : required) {
        if (!std::binary_search(sorted.begin(), sorted.end(), s)) {
          throw InputError("subset order of " + to_string(fid) +
                           " is missing a subset of size <= quota");
        }
      }
    }
  }
}

std::vector<FirmId> Market::firm_ids() const {
  std::vector<FirmId> out;
  out.reserve(firms_.size());
  for (const auto& [id, _] : firms_) out.push_back(id);
  return out;
}

std::vector<WorkerId> Market::worker_ids() const {
  std::vector<WorkerId> out;
  out.reserve(workers_.size());
  for (const auto& [id, _] : workers_) out.push_back(id);
  return out;
}

bool Market::has_firm(FirmId f) const { return find_pref(firms_, f) != nullptr; }
bool Market::has_worker(WorkerId w) const { return find_pref(workers_, w) != nullptr; }

const FirmPreference& Market::firm_pref(FirmId f) const {
  const FirmPreference* p = find_pref(firms_, f);
  if (!p) throw InputError("unknown firm " + to_string(f));
  return *p;
}

const WorkerPreference& Market::worker_pref(WorkerId w) const {
  const WorkerPreference* p = find_pref(workers_, w);
  if (!p) throw InputError("unknown worker " + to_string(w));
  return *p;
}

int Market::worker_rank(WorkerId w, std::optional<FirmId> partner) const {
  const auto& ranking = worker_pref(w).ranking;
  if (!partner.has_value()) return static_cast<int>(ranking.size());
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (ranking[i] == *partner) return static_cast<int>(i);
  }
  return static_cast<int>(ranking.size()) + 1;
}

bool Market::worker_prefers(WorkerId w, std::optional<FirmId> a, std::optional<FirmId> b) const {
  return worker_rank(w, a) < worker_rank(w, b);
}

bool Market::worker_weakly_prefers(WorkerId w, std::optional<FirmId> a,
                                   std::optional<FirmId> b) const {
  return a == b || worker_prefers(w, a, b);
}

bool Market::acceptable_to_worker(WorkerId w, FirmId f) const {
  const auto& ranking = worker_pref(w).ranking;
  return std::find(ranking.begin(), ranking.end(), f) != ranking.end();
}

bool Market::firm_accepts(FirmId f, WorkerId w) const {
  const FirmPreference& p = firm_pref(f);
  if (p.is_responsive()) {
    const auto& r = p.responsive().ranking;
    return std::find(r.begin(), r.end(), w) != r.end();
  }
  const std::size_t single = order_index(p.subset_order(), WorkerSet{w});
  const std::size_t empty = order_index(p.subset_order(), WorkerSet{});
  return single != npos && single < empty;
}

WorkerSet Market::acceptable_workers(FirmId f) const {
  WorkerSet out;
  for (const auto& [wid, _] : workers_) {
    if (firm_accepts(f, wid)) out.push_back(wid);
  }
  return out;
}

int Market::responsive_rank(FirmId f, WorkerId w) const {
  const auto& r = firm_pref(f).responsive().ranking;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == w) return static_cast<int>(i);
  }
  return static_cast<int>(r.size());
}

WorkerSet choice(const Market& m, FirmId f, const WorkerSet& pool) {
  const FirmPreference& p = m.firm_pref(f);
  WorkerSet s = pool;
  if (!std::is_sorted(s.begin(), s.end())) std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (WorkerId w : s) {
    if (!m.has_worker(w)) throw InputError("choice pool contains unknown worker " + to_string(w));
  }
  return choice_under(p, s);
}

bool validate_substitutable(const FirmPreference& p, const Market& m, int worker_cap) {
  const WorkerSet workers = m.worker_id_set();
  if (static_cast<int>(workers.size()) > worker_cap) {
    throw SizeGuardError("substitutability check capped at " + std::to_string(worker_cap) +
                         " workers");
  }
  bool ok = true;
  for_each_subset(workers, [&](const WorkerSet& s) {
    if (!ok || s.empty()) return;
    const WorkerSet chosen = choice_under(p, s);
    for (WorkerId removed : s) {
      const WorkerSet reduced_choice = choice_under(p, set_without(s, removed));
      for (WorkerId w : chosen) {
        if (w == removed) continue;
        if (!set_contains(reduced_choice, w)) {
          ok = false;
          return;
        }
      }
    }
  });
  return ok;
}

bool validate_q_separable(const FirmPreference& p, const Market& m, int worker_cap) {
  if (p.is_responsive()) {
    return true;  // Both clauses hold by construction of the induced order.
  }
  const WorkerSet workers = m.worker_id_set();
  if (static_cast<int>(workers.size()) > worker_cap) {
    throw SizeGuardError("q-separability check capped at " + std::to_string(worker_cap) +
                         " workers");
  }
  const auto& body = p.subset_order();
  const std::size_t empty_pos = order_index(body, WorkerSet{});
  if (empty_pos == npos) return false;

  // Clause (b): nothing over quota may sit above the empty set. Unlisted
  // over-quota subsets are below it by convention.
  for (std::size_t i = 0; i < body.order.size(); ++i) {
    if (static_cast<int>(body.order[i].size()) > p.quota && i < empty_pos) return false;
  }

  // Clause (a): one-step additions to under-quota sets improve the set
  // exactly when the added worker is individually acceptable.
  bool ok = true;
  for_each_subset(workers, [&](const WorkerSet& s) {
    if (!ok || static_cast<int>(s.size()) >= p.quota) return;
    const std::size_t s_pos = order_index(body, s);
    if (s_pos == npos) return;
    for (WorkerId w : workers) {
      if (set_contains(s, w)) continue;
      const std::size_t grown_pos = order_index(body, set_with(s, w));
      const std::size_t single_pos = order_index(body, WorkerSet{w});
      if (grown_pos == npos || single_pos == npos) {
        ok = false;
        return;
      }
      const bool improves = grown_pos < s_pos;
      const bool acceptable = single_pos < empty_pos;
      if (improves != acceptable) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

bool is_acceptable_coalition(const WorkerSet& s, FirmId f, const Market& m) {
  const FirmPreference& p = m.firm_pref(f);
  if (s.empty()) return false;
  for (WorkerId w : s) {
    if (!m.has_worker(w)) throw InputError("coalition contains unknown worker " + to_string(w));
    if (!m.acceptable_to_worker(w, f)) return false;
  }
  if (p.is_responsive()) {
    if (static_cast<int>(s.size()) > p.quota) return false;
    return std::all_of(s.begin(), s.end(), [&](WorkerId w) { return m.firm_accepts(f, w); });
  }
  const std::size_t s_pos = order_index(p.subset_order(), s);
  const std::size_t empty_pos = order_index(p.subset_order(), WorkerSet{});
  if (s_pos == npos) return false;  // unlisted: below the empty set
  return s_pos < empty_pos;
}

bool firm_prefers_set(const Market& m, FirmId f, const WorkerSet& a, const WorkerSet& b) {
  if (a == b) return false;
  const FirmPreference& p = m.firm_pref(f);

  if (!p.is_responsive()) {
    const auto& body = p.subset_order();
    const std::size_t ia = order_index(body, a);
    const std::size_t ib = order_index(body, b);
    if (ia != npos && ib != npos) return ia < ib;
    const std::size_t empty_pos = order_index(body, WorkerSet{});
    // An unlisted set is below the empty set; a listed set at or above the
    // empty set therefore beats it. Anything else is undetermined.
    if (ia != npos && ib == npos && ia <= empty_pos) return true;
    if (ia == npos && ib != npos && ib <= empty_pos) return false;
    throw IncomparableError("subset order of " + to_string(f) + " does not rank both sets");
  }

  const int qa = static_cast<int>(a.size());
  const int qb = static_cast<int>(b.size());
  auto rank_vector = [&](const WorkerSet& s) {
    std::vector<int> ranks;
    ranks.reserve(s.size());
    for (WorkerId w : s) ranks.push_back(m.responsive_rank(f, w));
    std::sort(ranks.begin(), ranks.end());
    return ranks;
  };
  if (qa == qb) {
    return rank_vector(a) < rank_vector(b);
  }
  // Nested sets whose difference is individually acceptable are ordered by
  // q-separability provided the larger set fits the quota.
  auto all_acceptable = [&](const WorkerSet& s) {
    return std::all_of(s.begin(), s.end(), [&](WorkerId w) { return m.firm_accepts(f, w); });
  };
  if (is_subset_of(b, a) && qa <= p.quota && all_acceptable(set_minus(a, b))) return true;
  if (is_subset_of(a, b) && qb <= p.quota && all_acceptable(set_minus(b, a))) return false;
  if (qa > p.quota && qb <= p.quota && all_acceptable(b)) return false;
  if (qb > p.quota && qa <= p.quota && all_acceptable(a)) return true;
  throw IncomparableError("responsive order of " + to_string(f) +
                          " does not compare sets of sizes " + std::to_string(qa) + " and " +
                          std::to_string(qb));
}

}  // namespace restab
