#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "restab/disruption.hpp"

namespace restab {

// SplitMix64: fixed 64-bit generator so that seeded runs reproduce
// byte-identically on every platform. next() advances the state by the
// golden-gamma constant and returns the mixed value.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // next() % n; the modulo bias is irrelevant at these ranges.
  std::uint64_t next_below(std::uint64_t n);
  // 53-bit mantissa draw in [0, 1).
  double next_unit();
  bool bernoulli(double p);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_below(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

enum class PreferenceFamily { responsive, explicit_validated };

std::string to_string(PreferenceFamily family);
PreferenceFamily family_from_string(const std::string& name);

struct TransitionShape {
  int retire_count = 0;
  int add_firm_count = 0;
};

struct ScenarioConfig {
  std::uint64_t rng_seed = 42;
  int n_firms = 3;
  int n_workers = 5;
  int quota_max = 3;
  double acceptability_density = 0.5;
  PreferenceFamily family = PreferenceFamily::responsive;
  int n_trials = 100;
  std::optional<TransitionShape> transition;

  void validate() const;  // throws InputError on out-of-range fields
};

// Deterministic function of (config, trial). Firms get ids 0..n_firms-1 and
// workers 0..n_workers-1. The explicit family rejection-samples subset orders
// until both validators pass; throws PreconditionError when the attempt cap
// runs out (callers may skip the trial).
Market generate_market(const ScenarioConfig& cfg, int trial);

// Deterministic retirement/entry spec against a base market: distinct
// retiring workers (always leaving at least one) and entering firms with
// fresh ids and preferences over the survivors.
TransitionSpec generate_transition_spec(const ScenarioConfig& cfg, int trial, const Market& base);

}  // namespace restab
