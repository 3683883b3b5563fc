#pragma once

#include <span>
#include <vector>

#include "setlab/predicates.hpp"

namespace setlab {

/// Full record of one application of the witness-swap map, which carries an
/// instability witness for the pair (i,j) to one for the reversed pair by
/// swapping i for j in every member whose swap already sits inside the
/// family. Every intermediate set is exposed so the map's algebraic
/// identities can be asserted directly.
struct DualityTrace {
  std::vector<ElementSet> input;  // the witness subfamily, sorted
  ShiftPair pair;                 // (i,j) of the instability
  ConditionParams params;
  UnstablePartition partition;  // input split into moved / with_i / avoiding_both

  /// Members of the with_i class that the reversed shift leaves in place:
  /// their (i -> j)-swap is already a member of the family.
  std::vector<ElementSet> reverse_fixed;
  /// Those swaps themselves; they join the output in place of the originals.
  std::vector<ElementSet> reverse_fixed_swapped;

  std::vector<ElementSet> output;  // the reversed-pair witness, sorted

  /// Members of the output carrying j that the original shift leaves in
  /// place, and their (j -> i)-swaps. These mirror the two lists above:
  /// output_fixed == reverse_fixed_swapped and output_fixed_swapped ==
  /// reverse_fixed, which is what makes the map an involution.
  std::vector<ElementSet> output_fixed;
  std::vector<ElementSet> output_fixed_swapped;
};

/// Applies the witness-swap map. The subfamily must be d distinct members
/// of the family forming an instability witness for the pair (argument
/// error otherwise), and its avoiding_both class must be nonempty
/// (capability error otherwise; the map is not defined without it).
///
/// The returned trace satisfies, with G = reverse_fixed, G' =
/// reverse_fixed_swapped: output = moved + avoiding_both + (with_i - G)
/// + G'; |output| = d; output is a subfamily of the family and is an
/// instability witness for the reversed pair; G is a proper subset of
/// with_i.
DualityTrace duality_forward(std::span<const ElementSet> subfamily,
                             const SetFamily& family, ShiftPair pair,
                             const ConditionParams& params);

/// Inverts the map: `subfamily` must be an instability witness for the
/// REVERSED pair (j,i) with a nonempty avoiding_both class, as produced by
/// duality_forward for (i,j). Returns the unique preimage, sorted. The
/// composition duality_inverse(duality_forward(A).output) recovers A.
std::vector<ElementSet> duality_inverse(std::span<const ElementSet> subfamily,
                                        const SetFamily& family, ShiftPair pair,
                                        const ConditionParams& params);

/// Convenience overload reading the subfamily, pair, and parameters out of
/// a forward trace.
std::vector<ElementSet> duality_inverse(const DualityTrace& trace,
                                        const SetFamily& family);

}  // namespace setlab
