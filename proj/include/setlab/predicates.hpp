#pragma once

#include <optional>
#include <span>
#include <vector>

#include "setlab/shift.hpp"

namespace setlab {

/// The condition triple: every d distinct members whose union has at most
/// s elements must share at least t elements.
struct ConditionParams {
  int d;
  int s;
  int t;

  ConditionParams(int d_, int s_, int t_ = 1) : d(d_), s(s_), t(t_) {
    if (d < 2) throw ArgumentError("condition needs d >= 2");
    if (s < 0) throw ArgumentError("condition needs s >= 0");
    if (t < 1) throw ArgumentError("condition needs t >= 1");
  }
};

/// A d-tuple of members violating the condition.
struct ClusterWitness {
  std::vector<ElementSet> sets;
  int union_size;
  int intersection_size;
};

/// A d-subfamily whose shifted image (relative to the ambient family)
/// breaks the condition even though the family satisfies it.
struct UnstableWitness {
  std::vector<ElementSet> subfamily;
  ShiftPair pair;
  ConditionParams params;
};

/// Partition of an unstable witness by how the shift pair (i,j) touches
/// each member. Every member lands in exactly one class.
struct UnstablePartition {
  std::vector<ElementSet> moved;          // j present, i absent, swap outside the family
  std::vector<ElementSet> with_i;         // i present, j absent
  std::vector<ElementSet> avoiding_both;  // neither i nor j present
};

bool is_conditionally_intersecting(const SetFamily& f, const ConditionParams& p);
bool is_d_wise_t_intersecting(const SetFamily& f, int d, int t);

/// First violating d-tuple in canonical member order, if any.
std::optional<ClusterWitness> find_violating_cluster(const SetFamily& f,
                                                     const ConditionParams& p);

/// Whether this exact d-subfamily takes the canonical witness shape for the
/// pair, with images taken relative to `f`: intersections may only grow yet
/// stay below t, and the union must drop from exactly s+1 to exactly s.
/// When `f` is the subfamily itself this is equivalent to "the subfamily
/// meets the condition while its shifted image does not". Inside a larger
/// family the shape still certifies such a witness, but the converse can
/// fail: a member may be held in place by an outside blocker while the
/// others move, breaking the image's condition without the union ever
/// passing through s+1. Whole-family detection is unaffected — an unstable
/// family always contains a subfamily of this exact shape.
bool check_unstable_characterization(std::span<const ElementSet> subfamily,
                                     const SetFamily& f, ShiftPair p,
                                     const ConditionParams& params);

/// Scans d-subfamilies in canonical order for an instability witness.
/// Returns none exactly when the shifted family still meets the condition.
/// The family itself must meet the condition.
std::optional<UnstableWitness> is_ij_unstable(const SetFamily& f, ShiftPair p,
                                              const ConditionParams& params);

/// Splits an instability witness into its three classes. The subfamily
/// must be a witness for some (s,t), i.e. its union must shrink by exactly
/// one under the shift.
UnstablePartition partition_unstable_family(std::span<const ElementSet> subfamily,
                                            const SetFamily& f, ShiftPair p);

}  // namespace setlab
