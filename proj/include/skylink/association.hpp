#pragma once

#include <cstddef>
#include <vector>

namespace skylink {

// Ordered list of GBS indices the UAV is served by, one per trajectory
// segment. Planner outputs never repeat an index; looped sequences are still
// representable so that loop removal can be exercised.
struct AssociationSequence {
  std::vector<std::size_t> indices;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  std::size_t operator[](std::size_t i) const { return indices[i]; }
  bool is_simple() const;

  friend bool operator==(const AssociationSequence&, const AssociationSequence&) = default;
  friend auto operator<=>(const AssociationSequence&, const AssociationSequence&) = default;
};

}  // namespace skylink
