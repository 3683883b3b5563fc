#include "setlab/sets.hpp"

namespace setlab {

namespace {

int ground_of(std::span<const ElementSet> sets) {
  if (sets.empty()) throw ArgumentError("need at least one set");
  int n = sets.front().ground_size();
  for (const ElementSet& s : sets)
    if (s.ground_size() != n) throw ArgumentError("sets live over different ground sizes");
  return n;
}

}  // namespace

ElementSet union_of(std::span<const ElementSet> sets) {
  int n = ground_of(sets);
  std::uint64_t m = 0;
  for (const ElementSet& s : sets) m |= s.mask();
  return ElementSet::from_mask(n, m);
}

ElementSet intersection_of(std::span<const ElementSet> sets) {
  int n = ground_of(sets);
  std::uint64_t m = ElementSet::ground_mask(n);
  for (const ElementSet& s : sets) m &= s.mask();
  return ElementSet::from_mask(n, m);
}

int union_size(std::span<const ElementSet> sets) { return union_of(sets).size(); }

int intersection_size(std::span<const ElementSet> sets) {
  return intersection_of(sets).size();
}

}  // namespace setlab
