#include "restab/matching.hpp"

#include <algorithm>

namespace restab {

Matching::Matching(std::vector<Entry> assignment) : entries_(std::move(assignment)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].first == entries_[i - 1].first) {
      throw InputError("matching assigns " + to_string(entries_[i].first) + " twice");
    }
  }
}

Matching Matching::empty_for(const Market& m) {
  std::vector<Entry> entries;
  entries.reserve(m.workers().size());
  for (const auto& [wid, _] : m.workers()) entries.emplace_back(wid, std::nullopt);
  return Matching(std::move(entries));
}

bool Matching::has_worker(WorkerId w) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), w,
                             [](const Entry& e, WorkerId key) { return e.first < key; });
  return it != entries_.end() && it->first == w;
}

std::optional<FirmId> Matching::partner_of(WorkerId w) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), w,
                             [](const Entry& e, WorkerId key) { return e.first < key; });
  if (it == entries_.end() || it->first != w) {
    throw InputError("matching has no entry for " + to_string(w));
  }
  return it->second;
}

WorkerSet Matching::assigned_to(FirmId f) const {
  WorkerSet out;
  for (const auto& [w, partner] : entries_) {
    if (partner == f) out.push_back(w);
  }
  return out;
}

Matching Matching::reassigned(WorkerId w, std::optional<FirmId> partner) const {
  Matching out = *this;
  auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), w,
                             [](const Entry& e, WorkerId key) { return e.first < key; });
  if (it == out.entries_.end() || it->first != w) {
    throw InputError("matching has no entry for " + to_string(w));
  }
  it->second = partner;
  return out;
}

void Matching::require_valid_for(const Market& m) const {
  if (entries_.size() != m.workers().size()) {
    throw InputError("matching covers a different worker set than the market");
  }
  for (const auto& [w, partner] : entries_) {
    if (!m.has_worker(w)) {
      throw InputError("matching assigns unknown worker " + to_string(w));
    }
    if (partner.has_value() && !m.has_firm(*partner)) {
      throw InputError("matching assigns " + to_string(w) + " to unknown firm " +
                       to_string(*partner));
    }
  }
}

bool Matching::canonical_less(const Matching& a, const Matching& b) {
  auto key = [](const Entry& e) {
    return std::pair<int, int>(e.first.value, e.second.has_value() ? e.second->value : -1);
  };
  return std::lexicographical_compare(
      a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
      [&](const Entry& x, const Entry& y) { return key(x) < key(y); });
}

}  // namespace restab
