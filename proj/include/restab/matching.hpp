#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "restab/market.hpp"

namespace restab {

/**
 * A matching stored canonically as the worker -> firm partial map, one entry
 * per worker of the market, id-sorted. The firm -> workers view is always
 * derived, never stored, so the two sides cannot disagree.
 */
class Matching {
 public:
  using Entry = std::pair<WorkerId, std::optional<FirmId>>;

  Matching() = default;
  explicit Matching(std::vector<Entry> assignment);

  static Matching empty_for(const Market& m);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t worker_count() const { return entries_.size(); }

  bool has_worker(WorkerId w) const;
  // Throws InputError for workers outside the matching's domain.
  std::optional<FirmId> partner_of(WorkerId w) const;

  // Derived firm view: the id-sorted set of workers assigned to f.
  WorkerSet assigned_to(FirmId f) const;

  Matching reassigned(WorkerId w, std::optional<FirmId> partner) const;

  // Domain check against a market: exactly the market's workers, every
  // assigned firm present. Throws InputError on mismatch.
  void require_valid_for(const Market& m) const;

  friend bool operator==(const Matching&, const Matching&) = default;

  // Total deterministic order used for canonical stable-set listing:
  // lexicographic over the assignment vector with unmatched first.
  static bool canonical_less(const Matching& a, const Matching& b);

 private:
  std::vector<Entry> entries_;  // sorted by worker id
};

}  // namespace restab
