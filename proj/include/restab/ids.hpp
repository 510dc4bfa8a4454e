#pragma once

#include <compare>
#include <string>

namespace restab {

// Worker and firm identifiers live in disjoint typed namespaces; the raw
// values may overlap between the two sides.
struct WorkerId {
  int value = -1;
  friend constexpr auto operator<=>(WorkerId, WorkerId) = default;
};

struct FirmId {
  int value = -1;
  friend constexpr auto operator<=>(FirmId, FirmId) = default;
};

inline std::string to_string(WorkerId w) { return "w" + std::to_string(w.value); }
inline std::string to_string(FirmId f) { return "f" + std::to_string(f.value); }

}  // namespace restab
