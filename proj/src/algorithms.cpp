#include "restab/algorithms.hpp"

#include <algorithm>

#include "restab/stability.hpp"

namespace restab {

int SetOfferingTrace::rounds_with_offers() const {
  int n = 0;
  for (const auto& step : steps) {
    bool any = false;
    for (const auto& [_, s] : step.offers) any = any || !s.empty();
    if (any) ++n;
  }
  return n;
}

namespace {

SetOfferingTrace run_set_offering(const Market& m, const Matching& start) {
  SetOfferingTrace trace;
  trace.input = start;

  std::map<FirmId, WorkerSet> available;
  for (const auto& [f, _] : m.firms()) {
    available[f] = set_minus(m.acceptable_workers(f), start.assigned_to(f));
  }

  Matching current = start;
  std::size_t budget = 1;  // terminal round
  for (const auto& [_, pool] : available) budget += pool.size();

  for (std::size_t round = 0; round <= budget; ++round) {
    SetOfferingStep step;
    step.available = available;

    bool any_offer = false;
    for (const auto& [f, pool] : available) {
      const WorkerSet held = current.assigned_to(f);
      WorkerSet offers = set_minus(choice(m, f, set_union(pool, held)), held);
      any_offer = any_offer || !offers.empty();
      step.offers[f] = std::move(offers);
    }

    if (!any_offer) {
      step.matching = current;
      trace.steps.push_back(std::move(step));
      trace.output = current;
      return trace;
    }

    // Workers answer simultaneously: best of current match and all offers.
    Matching next = current;
    for (const auto& [w, _] : current.entries()) {
      std::optional<FirmId> best = current.partner_of(w);
      bool offered = false;
      for (const auto& [f, offers] : step.offers) {
        if (!set_contains(offers, w)) continue;
        offered = true;
        if (m.worker_prefers(w, f, best)) best = f;
      }
      if (offered) next = next.reassigned(w, best);
    }

    for (auto& [f, pool] : available) {
      pool = set_minus(pool, step.offers.at(f));
    }
    step.matching = next;
    trace.steps.push_back(std::move(step));
    current = std::move(next);
  }
  throw Error("set offering failed to terminate within its availability budget");
}

}  // namespace

SetOfferingTrace set_offering(const Market& m, const Matching& start) {
  start.require_valid_for(m);
  if (!is_firm_quasi_stable(start, m)) {
    throw PreconditionError(
        "set offering requires a firm quasi-stable input matching; the given matching is not");
  }
  return run_set_offering(m, start);
}

Matching da_firm_proposing(const Market& m) {
  // The empty matching is firm quasi-stable by definition; skip the check.
  return run_set_offering(m, Matching::empty_for(m)).output;
}

namespace detail {

Matching da_worker_proposing_ordered(const Market& m, const std::vector<WorkerId>& order) {
  Matching current = Matching::empty_for(m);
  std::map<WorkerId, std::size_t> next_proposal;
  for (const auto& [w, _] : m.workers()) next_proposal[w] = 0;

  while (true) {
    WorkerId proposer{-1};
    bool found = false;
    for (WorkerId w : order) {
      if (current.partner_of(w).has_value()) continue;
      if (next_proposal.at(w) >= m.worker_pref(w).ranking.size()) continue;
      proposer = w;
      found = true;
      break;
    }
    if (!found) return current;

    const FirmId target = m.worker_pref(proposer).ranking[next_proposal.at(proposer)];
    ++next_proposal.at(proposer);

    const WorkerSet held = current.assigned_to(target);
    const WorkerSet kept = choice(m, target, set_with(held, proposer));
    if (set_contains(kept, proposer)) {
      current = current.reassigned(proposer, target);
    }
    for (WorkerId w : set_minus(held, kept)) {
      current = current.reassigned(w, std::nullopt);
    }
  }
}

}  // namespace detail

Matching da_worker_proposing(const Market& m) {
  return detail::da_worker_proposing_ordered(m, m.worker_ids());
}

namespace {

void check_guard(const Market& m, const EnumerationGuard& guard) {
  if (static_cast<int>(m.workers().size()) > guard.max_workers) {
    throw SizeGuardError("enumeration capped at " + std::to_string(guard.max_workers) +
                         " workers");
  }
  if (static_cast<int>(m.firms().size()) > guard.max_firms) {
    throw SizeGuardError("enumeration capped at " + std::to_string(guard.max_firms) + " firms");
  }
}

// Every worker -> (firm | unmatched) assignment, fed to `fn` as a Matching.
template <typename Fn>
void for_each_matching(const Market& m, Fn&& fn) {
  const auto workers = m.worker_ids();
  const auto firms = m.firm_ids();
  std::vector<Matching::Entry> entries;
  entries.reserve(workers.size());
  for (WorkerId w : workers) entries.emplace_back(w, std::nullopt);

  // Odometer over (#firms + 1) options per worker; option 0 = unmatched.
  std::vector<std::size_t> digits(workers.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < workers.size(); ++i) {
      entries[i].second =
          digits[i] == 0 ? std::optional<FirmId>{} : std::optional<FirmId>{firms[digits[i] - 1]};
    }
    fn(Matching(std::vector<Matching::Entry>(entries)));

    std::size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] <= firms.size()) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == digits.size()) return;
  }
}

}  // namespace

StableSet enumerate_stable(const Market& m, const EnumerationGuard& guard) {
  check_guard(m, guard);
  StableSet out;
  for_each_matching(m, [&](const Matching& mu) {
    if (is_stable(mu, m)) out.matchings.push_back(mu);
  });
  std::sort(out.matchings.begin(), out.matchings.end(), Matching::canonical_less);
  return out;
}

std::vector<Matching> enumerate_fqs(const Market& m, const EnumerationGuard& guard) {
  check_guard(m, guard);
  std::vector<Matching> out;
  for_each_matching(m, [&](const Matching& mu) {
    if (is_firm_quasi_stable(mu, m)) out.push_back(mu);
  });
  std::sort(out.begin(), out.end(), Matching::canonical_less);
  return out;
}

std::vector<std::optional<FirmId>> achievable_firms(WorkerId w, const Market& m,
                                                    const EnumerationGuard& guard) {
  if (!m.has_worker(w)) throw InputError("unknown worker " + to_string(w));
  const StableSet stable = enumerate_stable(m, guard);
  std::vector<std::optional<FirmId>> out;
  for (const Matching& mu : stable.matchings) {
    out.push_back(mu.partner_of(w));
  }
  auto key = [](const std::optional<FirmId>& p) { return p.has_value() ? p->value : -1; };
  std::sort(out.begin(), out.end(),
            [&](const auto& a, const auto& b) { return key(a) < key(b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace restab
