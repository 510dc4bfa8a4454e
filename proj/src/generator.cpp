#include "restab/generator.hpp"

#include <algorithm>
#include <cmath>

namespace restab {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;
constexpr int kExplicitAttemptCap = 256;

// Distinct stream per (seed, trial, purpose) so adding draws to one stage
// never shifts another.
std::uint64_t stream_seed(std::uint64_t seed, int trial, std::uint64_t purpose) {
  return seed + kGoldenGamma * (static_cast<std::uint64_t>(trial) + 1) + purpose * 0x94D049BB133111EBull;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGoldenGamma;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next_below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

double SplitMix64::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

bool SplitMix64::bernoulli(double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return next_unit() < p;
}

std::string to_string(PreferenceFamily family) {
  return family == PreferenceFamily::responsive ? "responsive" : "explicit-validated";
}

PreferenceFamily family_from_string(const std::string& name) {
  if (name == "responsive") return PreferenceFamily::responsive;
  if (name == "explicit-validated" || name == "explicit") {
    return PreferenceFamily::explicit_validated;
  }
  throw InputError("unknown preference family \"" + name + "\"");
}

void ScenarioConfig::validate() const {
  if (n_firms < 1) throw InputError("n_firms must be positive");
  if (n_workers < 1) throw InputError("n_workers must be positive");
  if (quota_max < 1) throw InputError("quota_max must be positive");
  if (acceptability_density < 0.0 || acceptability_density > 1.0) {
    throw InputError("acceptability_density must lie in [0, 1]");
  }
  if (n_trials < 0) throw InputError("n_trials must be non-negative");
  if (family == PreferenceFamily::explicit_validated && n_workers > 5) {
    throw InputError("explicit-validated preferences are restricted to at most 5 workers");
  }
  if (transition.has_value()) {
    if (transition->retire_count < 0 || transition->add_firm_count < 0) {
      throw InputError("transition counts must be non-negative");
    }
    if (transition->retire_count + transition->add_firm_count == 0) {
      throw InputError("a transition must retire a worker or add a firm");
    }
  }
}

namespace {

std::vector<FirmId> sample_firm_ranking(SplitMix64& rng, int n_firms, double density) {
  std::vector<FirmId> acceptable;
  for (int f = 0; f < n_firms; ++f) {
    if (rng.bernoulli(density)) acceptable.push_back(FirmId{f});
  }
  rng.shuffle(acceptable);
  return acceptable;
}

FirmPreference sample_responsive(SplitMix64& rng, int n_workers, int quota_max, double density) {
  FirmPreference pref;
  pref.quota = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(quota_max)));
  ResponsivePreference body;
  for (int w = 0; w < n_workers; ++w) {
    if (rng.bernoulli(density)) body.ranking.push_back(WorkerId{w});
  }
  rng.shuffle(body.ranking);
  pref.body = std::move(body);
  return pref;
}

// Proposal draw for the explicit family: additive valuations (acceptable
// workers weigh positive, others negative), subsets ordered by total weight,
// then a few random adjacent swaps. The validators remain the gate.
FirmPreference sample_subset_order(SplitMix64& rng, const WorkerSet& workers, int quota_max,
                                   double density) {
  FirmPreference pref;
  pref.quota = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(quota_max)));

  std::vector<double> weight(workers.size());
  for (std::size_t i = 0; i < workers.size(); ++i) {
    const double magnitude = 1.0 + rng.next_unit();
    weight[i] = rng.bernoulli(density) ? magnitude : -magnitude;
  }
  auto total = [&](const WorkerSet& s) {
    double sum = 0.0;
    for (WorkerId w : s) {
      const auto it = std::lower_bound(workers.begin(), workers.end(), w);
      sum += weight[static_cast<std::size_t>(it - workers.begin())];
    }
    return sum;
  };

  SubsetOrderPreference body;
  body.order = subsets_up_to(workers, static_cast<std::size_t>(pref.quota));
  std::stable_sort(body.order.begin(), body.order.end(),
                   [&](const WorkerSet& a, const WorkerSet& b) { return total(a) > total(b); });

  const std::uint64_t swaps = rng.next_below(4);
  for (std::uint64_t k = 0; k < swaps && body.order.size() > 1; ++k) {
    const std::size_t at = rng.next_below(body.order.size() - 1);
    std::swap(body.order[at], body.order[at + 1]);
  }
  pref.body = std::move(body);
  return pref;
}

std::vector<std::pair<WorkerId, WorkerPreference>> sample_workers(SplitMix64& rng, int n_workers,
                                                                  int n_firms, double density) {
  std::vector<std::pair<WorkerId, WorkerPreference>> workers;
  for (int w = 0; w < n_workers; ++w) {
    workers.emplace_back(WorkerId{w},
                         WorkerPreference{sample_firm_ranking(rng, n_firms, density)});
  }
  return workers;
}

}  // namespace

Market generate_market(const ScenarioConfig& cfg, int trial) {
  cfg.validate();
  SplitMix64 rng(stream_seed(cfg.rng_seed, trial, 1));

  if (cfg.family == PreferenceFamily::responsive) {
    std::vector<std::pair<FirmId, FirmPreference>> firms;
    for (int f = 0; f < cfg.n_firms; ++f) {
      firms.emplace_back(FirmId{f}, sample_responsive(rng, cfg.n_workers, cfg.quota_max,
                                                      cfg.acceptability_density));
    }
    return Market(std::move(firms), sample_workers(rng, cfg.n_workers, cfg.n_firms,
                                                   cfg.acceptability_density));
  }

  WorkerSet all_workers;
  for (int w = 0; w < cfg.n_workers; ++w) all_workers.push_back(WorkerId{w});
  auto workers = sample_workers(rng, cfg.n_workers, cfg.n_firms, cfg.acceptability_density);

  // The validators only read the worker pool from the market, so candidates
  // can be screened against a placeholder market with trivial firms.
  std::vector<std::pair<FirmId, FirmPreference>> placeholders;
  for (int f = 0; f < cfg.n_firms; ++f) {
    placeholders.emplace_back(FirmId{f}, FirmPreference{1, ResponsivePreference{}});
  }
  const Market scope(std::move(placeholders), workers);

  std::vector<std::pair<FirmId, FirmPreference>> firms;
  for (int f = 0; f < cfg.n_firms; ++f) {
    bool placed = false;
    for (int attempt = 0; attempt < kExplicitAttemptCap && !placed; ++attempt) {
      FirmPreference candidate =
          sample_subset_order(rng, all_workers, cfg.quota_max, cfg.acceptability_density);
      if (validate_substitutable(candidate, scope) && validate_q_separable(candidate, scope)) {
        firms.emplace_back(FirmId{f}, std::move(candidate));
        placed = true;
      }
    }
    if (!placed) {
      throw PreconditionError("explicit preference sampling exhausted " +
                              std::to_string(kExplicitAttemptCap) + " attempts for trial " +
                              std::to_string(trial));
    }
  }
  return Market(std::move(firms), std::move(workers));
}

TransitionSpec generate_transition_spec(const ScenarioConfig& cfg, int trial,
                                        const Market& base) {
  cfg.validate();
  if (!cfg.transition.has_value()) {
    throw InputError("scenario config has no transition shape");
  }
  SplitMix64 rng(stream_seed(cfg.rng_seed, trial, 2));

  TransitionSpec spec;
  const auto worker_ids = base.worker_ids();
  const int max_retire =
      std::min(cfg.transition->retire_count, static_cast<int>(worker_ids.size()) - 1);
  WorkerSet pool = worker_ids;
  for (int k = 0; k < max_retire; ++k) {
    const std::size_t at = static_cast<std::size_t>(rng.next_below(pool.size()));
    spec.retire.push_back(pool[at]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
  }
  spec.retire = make_worker_set(std::move(spec.retire));

  int next_id = 0;
  for (const auto& [f, _] : base.firms()) next_id = std::max(next_id, f.value + 1);
  for (int k = 0; k < cfg.transition->add_firm_count; ++k) {
    FirmPreference pref;
    pref.quota = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cfg.quota_max)));
    ResponsivePreference body;
    for (WorkerId w : pool) {
      if (rng.bernoulli(cfg.acceptability_density)) body.ranking.push_back(w);
    }
    rng.shuffle(body.ranking);
    pref.body = std::move(body);
    spec.add_firms.emplace_back(FirmId{next_id + k}, std::move(pref));
  }
  return spec;
}

}  // namespace restab
