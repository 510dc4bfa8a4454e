#include "restab/disruption.hpp"

#include <algorithm>

#include "restab/stability.hpp"

namespace restab {

namespace {

WorkerSet common_workers(const Market& a, const Market& b) {
  WorkerSet out;
  for (const auto& [w, _] : a.workers()) {
    if (b.has_worker(w)) out.push_back(w);
  }
  return out;
}

std::vector<FirmId> common_firms(const Market& a, const Market& b) {
  std::vector<FirmId> out;
  for (const auto& [f, _] : a.firms()) {
    if (b.has_firm(f)) out.push_back(f);
  }
  return out;
}

std::vector<FirmId> filter_firm_ranking(const std::vector<FirmId>& ranking,
                                        const std::vector<FirmId>& keep) {
  std::vector<FirmId> out;
  for (FirmId f : ranking) {
    if (std::binary_search(keep.begin(), keep.end(), f)) out.push_back(f);
  }
  return out;
}

WorkerSet filter_worker_ranking(const std::vector<WorkerId>& ranking, const WorkerSet& keep) {
  WorkerSet out;
  for (WorkerId w : ranking) {
    if (set_contains(keep, w)) out.push_back(w);
  }
  return out;
}

// Relative order of the listed subsets that only use shared workers.
std::vector<WorkerSet> filter_subset_order(const SubsetOrderPreference& p, const WorkerSet& keep) {
  std::vector<WorkerSet> out;
  for (const WorkerSet& s : p.order) {
    if (is_subset_of(s, keep)) out.push_back(s);
  }
  return out;
}

std::string partner_name(const std::optional<FirmId>& p) {
  return p.has_value() ? to_string(*p) : "unmatched";
}

std::string set_name(const WorkerSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += to_string(s[i]);
  }
  return out + "}";
}

}  // namespace

bool is_consistent(const Market& old_market, const Market& new_market, int worker_cap) {
  const WorkerSet shared_workers = common_workers(old_market, new_market);
  const std::vector<FirmId> shared_firms = common_firms(old_market, new_market);

  // (3) Worker rankings coincide on shared firms.
  for (WorkerId w : shared_workers) {
    if (filter_firm_ranking(old_market.worker_pref(w).ranking, shared_firms) !=
        filter_firm_ranking(new_market.worker_pref(w).ranking, shared_firms)) {
      return false;
    }
  }

  // (2) Firm preferences coincide over subsets of the shared workers.
  for (FirmId f : shared_firms) {
    const FirmPreference& po = old_market.firm_pref(f);
    const FirmPreference& pn = new_market.firm_pref(f);
    if (po.quota != pn.quota) return false;
    if (po.is_responsive() != pn.is_responsive()) return false;
    if (po.is_responsive()) {
      if (filter_worker_ranking(po.responsive().ranking, shared_workers) !=
          filter_worker_ranking(pn.responsive().ranking, shared_workers)) {
        return false;
      }
    } else {
      if (filter_subset_order(po.subset_order(), shared_workers) !=
          filter_subset_order(pn.subset_order(), shared_workers)) {
        return false;
      }
    }
  }

  // (1) Acceptable coalitions over shared agents coincide, exhaustively.
  if (static_cast<int>(shared_workers.size()) > worker_cap) {
    throw SizeGuardError("consistency coalition check capped at " + std::to_string(worker_cap) +
                         " shared workers");
  }
  bool ok = true;
  for_each_subset(shared_workers, [&](const WorkerSet& s) {
    if (!ok) return;
    for (FirmId f : shared_firms) {
      if (is_acceptable_coalition(s, f, old_market) != is_acceptable_coalition(s, f, new_market)) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

bool leads_to(const Market& old_market, const Market& new_market, int worker_cap) {
  for (const auto& [w, _] : new_market.workers()) {
    if (!old_market.has_worker(w)) return false;  // workers may only leave
  }
  for (const auto& [f, _] : old_market.firms()) {
    if (!new_market.has_firm(f)) return false;  // firms may only enter
  }
  return is_consistent(old_market, new_market, worker_cap);
}

Market retire_workers(const Market& base, const WorkerSet& retiring) {
  for (WorkerId w : retiring) {
    if (!base.has_worker(w)) {
      throw InputError("cannot retire unknown worker " + to_string(w));
    }
  }
  if (retiring.size() >= base.workers().size()) {
    throw PreconditionError("retiring every worker would leave an empty market");
  }

  std::vector<std::pair<WorkerId, WorkerPreference>> workers;
  for (const auto& [w, pref] : base.workers()) {
    if (!set_contains(retiring, w)) workers.emplace_back(w, pref);
  }

  std::vector<std::pair<FirmId, FirmPreference>> firms;
  for (const auto& [f, pref] : base.firms()) {
    FirmPreference restricted = pref;
    if (pref.is_responsive()) {
      auto& ranking = std::get<ResponsivePreference>(restricted.body).ranking;
      std::erase_if(ranking, [&](WorkerId w) { return set_contains(retiring, w); });
    } else {
      // Restrict to the surviving subsets in their original relative order;
      // subsets mentioning a retired worker vanish. This keeps the new order
      // coinciding with the old one over shared workers.
      auto& order = std::get<SubsetOrderPreference>(restricted.body).order;
      std::erase_if(order, [&](const WorkerSet& s) {
        return std::any_of(s.begin(), s.end(),
                           [&](WorkerId w) { return set_contains(retiring, w); });
      });
    }
    firms.emplace_back(f, std::move(restricted));
  }

  Market out(std::move(firms), std::move(workers));
  for (const auto& [f, pref] : out.firms()) {
    if (!pref.is_responsive()) {
      if (!validate_substitutable(pref, out) || !validate_q_separable(pref, out)) {
        throw PreconditionError("restricting the subset order of " + to_string(f) +
                                " broke substitutability or q-separability");
      }
    }
  }
  return out;
}

Market add_firms(const Market& base,
                 const std::vector<std::pair<FirmId, FirmPreference>>& newcomers) {
  std::vector<std::pair<FirmId, FirmPreference>> firms = base.firms();
  for (const auto& [f, pref] : newcomers) {
    if (base.has_firm(f)) {
      throw InputError("entering firm reuses existing id " + to_string(f));
    }
    firms.emplace_back(f, pref);
  }
  return Market(std::move(firms), base.workers());
}

MarketTransition MarketTransition::validated(Market old_market, Market new_market,
                                             int worker_cap) {
  if (!leads_to(old_market, new_market, worker_cap)) {
    throw PreconditionError("the old market does not lead to the new market");
  }
  return MarketTransition{std::move(old_market), std::move(new_market)};
}

std::vector<FirmId> MarketTransition::entering_firms() const {
  std::vector<FirmId> out;
  for (const auto& [f, _] : new_market.firms()) {
    if (!old_market.has_firm(f)) out.push_back(f);
  }
  return out;
}

MarketTransition apply_transition(const Market& base, const TransitionSpec& spec) {
  Market shrunk = spec.retire.empty() ? base : retire_workers(base, spec.retire);
  Market grown = spec.add_firms.empty() ? std::move(shrunk) : add_firms(shrunk, spec.add_firms);
  return MarketTransition::validated(base, std::move(grown));
}

Matching induce(const Matching& mu_old, const MarketTransition& t) {
  mu_old.require_valid_for(t.old_market);
  std::vector<Matching::Entry> entries;
  entries.reserve(t.new_market.workers().size());
  for (const auto& [w, _] : t.new_market.workers()) {
    entries.emplace_back(w, mu_old.partner_of(w));
  }
  Matching out(std::move(entries));
  out.require_valid_for(t.new_market);
  return out;
}

SetOfferingTrace restabilize(const Matching& mu_old, const MarketTransition& t) {
  if (!is_stable(mu_old, t.old_market)) {
    throw PreconditionError("restabilization starts from a matching stable in the old market");
  }
  return set_offering(t.new_market, induce(mu_old, t));
}

bool TransitionReport::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const AssertionResult& a) { return a.passed; });
}

TransitionReport verify_transition_theorems(const Matching& mu_old, const MarketTransition& t,
                                            const EnumerationGuard& guard) {
  if (!is_stable(mu_old, t.old_market)) {
    throw PreconditionError("transition theorems require an old-market stable matching");
  }
  const Market& old_m = t.old_market;
  const Market& new_m = t.new_market;

  const Matching induced = induce(mu_old, t);
  const Matching output = set_offering(new_m, induced).output;
  const Matching mu_f_new = da_firm_proposing(new_m);
  const Matching mu_w_new = da_worker_proposing(new_m);
  const Matching mu_w_old = da_worker_proposing(old_m);
  const std::vector<FirmId> incumbents = old_m.firm_ids();

  TransitionReport report;
  auto record = [&](std::string name, bool passed, std::string witness) {
    report.assertions.push_back({std::move(name), passed, passed ? "" : std::move(witness)});
  };

  {  // (a) surviving workers weakly gain
    bool passed = true;
    std::string witness;
    for (const auto& [w, old_partner] : induced.entries()) {
      const auto new_partner = output.partner_of(w);
      if (!new_m.worker_weakly_prefers(w, new_partner, old_partner)) {
        passed = false;
        witness = to_string(w) + " moved from " + partner_name(old_partner) + " to " +
                  partner_name(new_partner);
        break;
      }
    }
    record("workers_weakly_gain", passed, std::move(witness));
  }

  {  // (b) incumbents never gain, Blair-wise, under old preferences
    bool passed = true;
    std::string witness;
    for (FirmId f : incumbents) {
      const WorkerSet before = mu_old.assigned_to(f);
      const WorkerSet after = output.assigned_to(f);
      if (choice(old_m, f, set_union(before, after)) != before) {
        passed = false;
        witness = to_string(f) + " held " + set_name(before) + " but would keep part of " +
                  set_name(after);
        break;
      }
    }
    record("incumbents_blair_dominated_by_old", passed, std::move(witness));
  }

  {  // (c) entering firms receive exactly their firm-optimal assignment
    bool passed = true;
    std::string witness;
    for (FirmId f : t.entering_firms()) {
      const WorkerSet got = output.assigned_to(f);
      const WorkerSet best = mu_f_new.assigned_to(f);
      if (got != best) {
        passed = false;
        witness = to_string(f) + " got " + set_name(got) + " instead of " + set_name(best);
        break;
      }
    }
    record("entering_firms_get_firm_optimal", passed, std::move(witness));
  }

  {  // (d) per-worker closed form
    bool passed = true;
    std::string witness;
    for (const auto& [w, old_partner] : induced.entries()) {
      const auto best_of = new_m.worker_prefers(w, old_partner, mu_f_new.partner_of(w))
                               ? old_partner
                               : mu_f_new.partner_of(w);
      if (output.partner_of(w) != best_of) {
        passed = false;
        witness = to_string(w) + " got " + partner_name(output.partner_of(w)) + " instead of " +
                  partner_name(best_of);
        break;
      }
    }
    record("worker_outcome_formula", passed, std::move(witness));
  }

  {  // (e) monotone in the old stable matching
    bool passed = true;
    std::string witness;
    const StableSet old_stable = enumerate_stable(old_m, guard);
    std::vector<Matching> outputs;
    outputs.reserve(old_stable.matchings.size());
    for (const Matching& mu : old_stable.matchings) {
      outputs.push_back(set_offering(new_m, induce(mu, t)).output);
    }
    for (std::size_t i = 0; i < old_stable.matchings.size() && passed; ++i) {
      for (std::size_t j = 0; j < old_stable.matchings.size(); ++j) {
        if (i == j) continue;
        if (!dominates_workers(old_stable.matchings[i], old_stable.matchings[j], old_m)) continue;
        if (!dominates_workers(outputs[i], outputs[j], new_m)) {
          passed = false;
          witness = "stable pair (" + std::to_string(i) + "," + std::to_string(j) +
                    ") loses its worker ordering after restabilization";
          break;
        }
      }
    }
    record("restabilization_monotone", passed, std::move(witness));
  }

  {  // (f) worker-optimal matchings across the transition
    bool passed = true;
    std::string witness;
    for (const auto& [w, _] : new_m.workers()) {
      if (!new_m.worker_weakly_prefers(w, mu_w_new.partner_of(w), mu_w_old.partner_of(w))) {
        passed = false;
        witness = to_string(w) + " prefers the old worker-optimal partner " +
                  partner_name(mu_w_old.partner_of(w));
        break;
      }
    }
    if (passed && !blair_dominates(mu_w_old, mu_w_new, incumbents, old_m)) {
      passed = false;
      witness = "an incumbent firm Blair-prefers the new worker-optimal matching";
    }
    record("worker_optimal_comparison", passed, std::move(witness));
  }

  return report;
}

}  // namespace restab
