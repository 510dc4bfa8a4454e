#include "restab/worker_set.hpp"

namespace restab {

namespace {

void combinations_of_size(const WorkerSet& base, std::size_t k, std::size_t start,
                          WorkerSet& current, std::vector<WorkerSet>& out) {
  if (current.size() == k) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = start; i < base.size(); ++i) {
    current.push_back(base[i]);
    combinations_of_size(base, k, i + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<WorkerSet> subsets_up_to(const WorkerSet& base, std::size_t max_size) {
  std::vector<WorkerSet> out;
  const std::size_t top = std::min(max_size, base.size());
  WorkerSet current;
  for (std::size_t k = 0; k <= top; ++k) {
    combinations_of_size(base, k, 0, current, out);
  }
  return out;
}

}  // namespace restab
