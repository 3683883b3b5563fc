#include "setlab/duality.hpp"

#include <algorithm>
#include <stdexcept>

namespace setlab {

namespace {

struct BlockedSwaps {
  std::vector<ElementSet> fixed;    // candidates whose swap is already a member
  std::vector<ElementSet> swapped;  // the corresponding swaps, same order
};

// Among candidates that all contain `from` and miss `to`, pick out those the
// (to <- from)-shift would leave in place because the swapped set already
// belongs to the family.
BlockedSwaps blocked_swaps(const std::vector<ElementSet>& candidates,
                           const SetFamily& family, int from, int to) {
  BlockedSwaps out;
  for (const ElementSet& m : candidates) {
    ElementSet sw = swapped(m, from, to);
    if (family.contains(sw)) {
      out.fixed.push_back(m);
      out.swapped.push_back(sw);
    }
  }
  return out;
}

bool sorted_distinct(const std::vector<ElementSet>& sets) {
  return std::adjacent_find(sets.begin(), sets.end()) == sets.end();
}

}  // namespace

DualityTrace duality_forward(std::span<const ElementSet> subfamily,
                             const SetFamily& family, ShiftPair pair,
                             const ConditionParams& params) {
  std::vector<ElementSet> input(subfamily.begin(), subfamily.end());
  std::sort(input.begin(), input.end());
  if (!sorted_distinct(input))
    throw ArgumentError("the subfamily must consist of distinct sets");
  if (!check_unstable_characterization(input, family, pair, params))
    throw ArgumentError(
        "subfamily is not an instability witness for this pair and condition");

  DualityTrace trace{input, pair, params, {}, {}, {}, {}, {}, {}};
  trace.partition = partition_unstable_family(input, family, pair);
  if (trace.partition.avoiding_both.empty())
    throw CapabilityError(
        "the swap map needs a witness member avoiding both pair elements");

  BlockedSwaps g =
      blocked_swaps(trace.partition.with_i, family, pair.i, pair.j);
  trace.reverse_fixed = g.fixed;
  trace.reverse_fixed_swapped = g.swapped;

  std::vector<ElementSet> output = trace.partition.moved;
  output.insert(output.end(), trace.partition.avoiding_both.begin(),
                trace.partition.avoiding_both.end());
  for (const ElementSet& m : trace.partition.with_i)
    if (std::find(g.fixed.begin(), g.fixed.end(), m) == g.fixed.end())
      output.push_back(m);
  output.insert(output.end(), g.swapped.begin(), g.swapped.end());
  std::sort(output.begin(), output.end());
  trace.output = output;

  // Everything below is guaranteed by the construction; a failure would be
  // a bug in this function, not bad input.
  if (g.fixed.size() == trace.partition.with_i.size())
    throw std::logic_error(
        "swap map left no movable member carrying the lower pair element");
  if (static_cast<int>(output.size()) != params.d || !sorted_distinct(output))
    throw std::logic_error("swap map changed the subfamily size");
  for (const ElementSet& m : output)
    if (!family.contains(m))
      throw std::logic_error("swap map left the family");
  ShiftPair reversed(pair.j, pair.i);
  if (!check_unstable_characterization(output, family, reversed, params))
    throw std::logic_error(
        "swap map output is not a witness for the reversed pair");

  // The output's own blocked members under the original shift: by
  // construction they are exactly the swaps introduced above.
  UnstablePartition back =
      partition_unstable_family(output, family, reversed);
  BlockedSwaps h = blocked_swaps(back.with_i, family, pair.j, pair.i);
  trace.output_fixed = h.fixed;
  trace.output_fixed_swapped = h.swapped;
  return trace;
}

std::vector<ElementSet> duality_inverse(std::span<const ElementSet> subfamily,
                                        const SetFamily& family, ShiftPair pair,
                                        const ConditionParams& params) {
  // The map is its own inverse with the roles of i and j exchanged.
  return duality_forward(subfamily, family, ShiftPair(pair.j, pair.i), params)
      .output;
}

std::vector<ElementSet> duality_inverse(const DualityTrace& trace,
                                        const SetFamily& family) {
  return duality_inverse(trace.output, family, trace.pair, trace.params);
}

}  // namespace setlab
