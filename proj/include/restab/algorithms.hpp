#pragma once

#include <map>
#include <optional>
#include <vector>

#include "restab/lattice.hpp"
#include "restab/matching.hpp"

namespace restab {

// One round of the Set Offering dynamic: the availability pools at the start
// of the round, the offers each firm extended, and the matching after workers
// answered. The final recorded step always has empty offers.
struct SetOfferingStep {
  std::map<FirmId, WorkerSet> available;
  std::map<FirmId, WorkerSet> offers;
  Matching matching;
};

struct SetOfferingTrace {
  Matching input;
  std::vector<SetOfferingStep> steps;
  Matching output;

  // Rounds in which at least one firm made an offer.
  int rounds_with_offers() const;
};

/**
 * The Set Offering restabilization dynamic. Starting from a firm quasi-stable
 * matching, every firm simultaneously offers the part of its choice (over its
 * current workforce plus the workers who never rejected it) that it does not
 * already employ; each offered worker keeps the best of current match and
 * offers; offered workers leave the firm's availability pool. Stops when no
 * firm extends an offer.
 *
 * Initial availability pools are the firm's individually acceptable workers
 * outside its current workforce (equivalent, under q-separability, to the
 * one-step-improvement form of the definition).
 *
 * Throws PreconditionError when the input is not firm quasi-stable.
 */
SetOfferingTrace set_offering(const Market& m, const Matching& start);

// Firm-optimal stable matching: the Set Offering dynamic run from the empty
// matching, which makes firms extend cumulative offers exactly as in the
// firm-proposing deferred acceptance procedure with choice functions.
Matching da_firm_proposing(const Market& m);

// Worker-optimal stable matching: workers propose down their lists one step
// at a time (lowest worker id first); a firm holds its choice from current
// workforce plus proposer. The outcome is order-independent for substitutable
// preferences.
Matching da_worker_proposing(const Market& m);

namespace detail {
// Same engine with an explicit processing order over the workers; used to
// check order-independence.
Matching da_worker_proposing_ordered(const Market& m, const std::vector<WorkerId>& order);
}  // namespace detail

struct EnumerationGuard {
  int max_workers = 7;
  int max_firms = 5;
};

// Brute-force oracle: every assignment of workers to firms (or to none) is
// generated and filtered by is_stable. Canonically ordered.
StableSet enumerate_stable(const Market& m, const EnumerationGuard& guard = {});

// Brute-force oracle for the firm quasi-stable set, canonically ordered.
std::vector<Matching> enumerate_fqs(const Market& m, const EnumerationGuard& guard = {});

// Partners of w across the stable set (std::nullopt = unmatched), sorted with
// unmatched first then firms by id.
std::vector<std::optional<FirmId>> achievable_firms(WorkerId w, const Market& m,
                                                    const EnumerationGuard& guard = {});

}  // namespace restab
