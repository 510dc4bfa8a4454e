#pragma once

#include <algorithm>
#include <vector>

#include "restab/ids.hpp"

namespace restab {

// Worker sets are canonically represented as id-sorted, duplicate-free
// vectors. All helpers below assume (and preserve) that form.
using WorkerSet = std::vector<WorkerId>;

inline WorkerSet make_worker_set(WorkerSet v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool set_contains(const WorkerSet& s, WorkerId w) {
  return std::binary_search(s.begin(), s.end(), w);
}

inline bool is_subset_of(const WorkerSet& a, const WorkerSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline WorkerSet set_union(const WorkerSet& a, const WorkerSet& b) {
  WorkerSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline WorkerSet set_minus(const WorkerSet& a, const WorkerSet& b) {
  WorkerSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline WorkerSet set_intersect(const WorkerSet& a, const WorkerSet& b) {
  WorkerSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline WorkerSet set_with(WorkerSet a, WorkerId w) {
  auto it = std::lower_bound(a.begin(), a.end(), w);
  if (it == a.end() || *it != w) a.insert(it, w);
  return a;
}

inline WorkerSet set_without(WorkerSet a, WorkerId w) {
  auto it = std::lower_bound(a.begin(), a.end(), w);
  if (it != a.end() && *it == w) a.erase(it);
  return a;
}

// Calls fn(subset) for every subset of `base`, the empty set included.
// Subsets are emitted in a fixed order (bitmask order over base positions)
// and are themselves id-sorted. Intended for exhaustive checks on small sets.
template <typename Fn>
void for_each_subset(const WorkerSet& base, Fn&& fn) {
  const std::size_t n = base.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    WorkerSet subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(base[i]);
    }
    fn(subset);
  }
}

// All subsets of `base` with size <= max_size, graded by size then by
// position order within each size. Deterministic.
std::vector<WorkerSet> subsets_up_to(const WorkerSet& base, std::size_t max_size);

}  // namespace restab
