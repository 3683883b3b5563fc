#pragma once

#include <span>
#include <vector>

#include "setlab/family.hpp"

namespace setlab {

/// Image of one member under the (i,j)-shift, taken relative to the family:
/// A becomes (A - {j}) + {i} when j is present, i absent, and the swapped
/// set is not already a member; otherwise A is returned unchanged.
ElementSet shift_set(const ElementSet& a, const SetFamily& f, ShiftPair p);

/// Memberwise shift of the whole family. Preserves the family size.
SetFamily shift_family(const SetFamily& f, ShiftPair p);

/// Images of a subfamily, each computed relative to the ambient family.
std::vector<ElementSet> shift_image(std::span<const ElementSet> subfamily,
                                    const SetFamily& f, ShiftPair p);

/// True when every shift with i < j leaves the family unchanged.
bool is_stable(const SetFamily& f);

struct StabilizeResult {
  SetFamily family;
  std::vector<ShiftPair> shifts;  // the shifts that changed something, in order
};

/// Repeated lexicographic sweeps of all shifts with i < j until a full
/// sweep changes nothing. The result is stable and has the input's size.
StabilizeResult stabilize(const SetFamily& f);

}  // namespace setlab
