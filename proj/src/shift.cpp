#include "setlab/shift.hpp"

#include "setlab/errors.hpp"

namespace setlab {

namespace {

void require_pair_in_ground(ShiftPair p, int n) {
  if (p.i > n || p.j > n)
    throw ArgumentError("shift pair outside the ground set");
}

// Core rule, assuming the pair fits the ground set: move j to i when j is
// present, i absent, and the swapped set is not already a member.
ElementSet shifted(const ElementSet& a, const SetFamily& f, ShiftPair p) {
  if (!a.contains(p.j) || a.contains(p.i)) return a;
  ElementSet moved = swapped(a, p.j, p.i);
  return f.contains(moved) ? a : moved;
}

}  // namespace

ElementSet shift_set(const ElementSet& a, const SetFamily& f, ShiftPair p) {
  require_pair_in_ground(p, f.ground_size());
  if (!f.contains(a)) throw ArgumentError("shift_set needs a member of the family");
  return shifted(a, f, p);
}

SetFamily shift_family(const SetFamily& f, ShiftPair p) {
  require_pair_in_ground(p, f.ground_size());
  std::vector<ElementSet> out;
  out.reserve(f.size());
  for (const ElementSet& a : f.members()) out.push_back(shifted(a, f, p));
  SetFamily result(f.ground_size(), std::move(out));
  if (result.size() != f.size())
    throw std::logic_error("shift collapsed two members; this cannot happen");
  return result;
}

std::vector<ElementSet> shift_image(std::span<const ElementSet> subfamily,
                                    const SetFamily& f, ShiftPair p) {
  require_pair_in_ground(p, f.ground_size());
  std::vector<ElementSet> out;
  out.reserve(subfamily.size());
  for (const ElementSet& a : subfamily) {
    if (!f.contains(a)) throw ArgumentError("subfamily member missing from the family");
    out.push_back(shifted(a, f, p));
  }
  return out;
}

bool is_stable(const SetFamily& f) {
  const int n = f.ground_size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (const ElementSet& a : f.members())
        if (a.contains(j) && !a.contains(i) && !f.contains(swapped(a, j, i)))
          return false;
  return true;
}

StabilizeResult stabilize(const SetFamily& f) {
  StabilizeResult r{f, {}};
  const int n = f.ground_size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        ShiftPair p(i, j);
        SetFamily next = shift_family(r.family, p);
        if (next != r.family) {
          r.family = std::move(next);
          r.shifts.push_back(p);
          changed = true;
        }
      }
    }
  }
  return r;
}

}  // namespace setlab
