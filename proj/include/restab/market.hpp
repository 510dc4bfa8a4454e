#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "restab/errors.hpp"
#include "restab/ids.hpp"
#include "restab/worker_set.hpp"

namespace restab {

// A worker's strict preference over firms, most preferred first. Firms absent
// from the list are unacceptable: the worker prefers staying unmatched.
struct WorkerPreference {
  std::vector<FirmId> ranking;
};

// Quota-capped preference induced by a strict ranking of individual workers,
// most preferred first. Workers absent from the ranking are unacceptable.
struct ResponsivePreference {
  std::vector<WorkerId> ranking;
};

// Explicit strict order over worker subsets, best first. Each listed subset is
// id-sorted. A well-formed order lists every subset of the market's workers up
// to the quota size (the empty set included); over-quota subsets may appear
// but a q-separable order keeps them below the empty set, and any unlisted
// subset is implicitly ranked below the empty set.
struct SubsetOrderPreference {
  std::vector<WorkerSet> order;
};

struct FirmPreference {
  int quota = 1;
  std::variant<ResponsivePreference, SubsetOrderPreference> body;

  bool is_responsive() const { return std::holds_alternative<ResponsivePreference>(body); }
  const ResponsivePreference& responsive() const { return std::get<ResponsivePreference>(body); }
  const SubsetOrderPreference& subset_order() const { return std::get<SubsetOrderPreference>(body); }
};

/**
 * A many-to-one matching market: firms with quota-capped preferences over
 * worker subsets and workers with strict preferences over firms.
 *
 * Construction validates every structural invariant (unique ids, resolvable
 * cross-references, quotas >= 1, duplicate-free rankings, and completeness of
 * explicit subset orders). Instances are immutable afterwards; every
 * operation on a market is a pure function.
 */
class Market {
 public:
  Market(std::vector<std::pair<FirmId, FirmPreference>> firms,
         std::vector<std::pair<WorkerId, WorkerPreference>> workers);

  const std::vector<std::pair<FirmId, FirmPreference>>& firms() const { return firms_; }
  const std::vector<std::pair<WorkerId, WorkerPreference>>& workers() const { return workers_; }

  std::vector<FirmId> firm_ids() const;
  std::vector<WorkerId> worker_ids() const;
  WorkerSet worker_id_set() const { return worker_ids(); }

  bool has_firm(FirmId f) const;
  bool has_worker(WorkerId w) const;

  const FirmPreference& firm_pref(FirmId f) const;
  const WorkerPreference& worker_pref(WorkerId w) const;

  // Position of `partner` in w's list; lower is better. Unmatched sits just
  // past the list, unlisted firms one step further (below the empty set).
  int worker_rank(WorkerId w, std::optional<FirmId> partner) const;
  bool worker_prefers(WorkerId w, std::optional<FirmId> a, std::optional<FirmId> b) const;
  bool worker_weakly_prefers(WorkerId w, std::optional<FirmId> a, std::optional<FirmId> b) const;
  bool acceptable_to_worker(WorkerId w, FirmId f) const;

  // Individual acceptability on the firm side: membership in a responsive
  // ranking, or {w} ranked above the empty set in an explicit order.
  bool firm_accepts(FirmId f, WorkerId w) const;
  WorkerSet acceptable_workers(FirmId f) const;

  // Position of worker w in f's responsive ranking (0 = best); unlisted
  // workers rank past the end. Responsive firms only.
  int responsive_rank(FirmId f, WorkerId w) const;

 private:
  std::vector<std::pair<FirmId, FirmPreference>> firms_;    // sorted by id
  std::vector<std::pair<WorkerId, WorkerPreference>> workers_;  // sorted by id
};

// Firm f's most preferred subset of `pool` (Ch). Responsive: the top
// min(quota, #acceptable) acceptable pool members by rank. Explicit order:
// the first listed subset of size <= quota contained in the pool. The result
// is id-sorted. Throws InputError for unknown firms or pool members.
WorkerSet choice(const Market& m, FirmId f, const WorkerSet& pool);

inline constexpr int kSubstitutabilityCap = 12;
inline constexpr int kSeparabilityCap = 10;

// Exhaustively checks that a chosen worker stays chosen when others leave the
// pool. Throws SizeGuardError when the market's worker count exceeds the cap.
bool validate_substitutable(const FirmPreference& p, const Market& m,
                            int worker_cap = kSubstitutabilityCap);

// Checks q-separability: adding an individually acceptable worker to an
// under-quota set improves it, and every over-quota set sits below the empty
// set. Responsive bodies satisfy both clauses by construction.
bool validate_q_separable(const FirmPreference& p, const Market& m,
                          int worker_cap = kSeparabilityCap);

// True iff S is preferred by f to the empty set and f is acceptable to every
// member of S. The empty coalition is never acceptable (strictness).
bool is_acceptable_coalition(const WorkerSet& s, FirmId f, const Market& m);

// Strict firm-side comparison of two worker sets under f's preference.
//   Responsive: equal-size sets compare by sorted rank vectors
//   (lexicographic), proper subsets/supersets by q-separable monotonicity;
//   anything else throws IncomparableError.
//   Explicit order: listed sets compare by position; unlisted sets only
//   against listed individually-rational sets.
bool firm_prefers_set(const Market& m, FirmId f, const WorkerSet& a, const WorkerSet& b);

}  // namespace restab
