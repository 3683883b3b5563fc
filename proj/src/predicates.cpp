#include "setlab/predicates.hpp"

#include <algorithm>
#include <bit>

namespace setlab {

namespace {

// Walks index tuples i1 < ... < id with union-size pruning: once a partial
// union exceeds the cap, no extension can come back under it. visit() gets
// each full tuple and returns true to stop the walk early.
template <typename Visit>
class ClusterWalk {
 public:
  ClusterWalk(const std::vector<ElementSet>& members, int d, int union_cap, Visit& visit)
      : members_(members), d_(d), union_cap_(union_cap), visit_(visit) {
    idx_.reserve(static_cast<std::size_t>(d));
  }

  void run() {
    if (static_cast<int>(members_.size()) >= d_) descend(0, 0);
  }

 private:
  void descend(int start, std::uint64_t partial_union) {
    if (static_cast<int>(idx_.size()) == d_) {
      stopped_ = visit_(idx_);
      return;
    }
    const int need = d_ - static_cast<int>(idx_.size());
    for (int i = start; i + need <= static_cast<int>(members_.size()); ++i) {
      std::uint64_t u = partial_union | members_[static_cast<std::size_t>(i)].mask();
      if (std::popcount(u) > union_cap_) continue;
      idx_.push_back(i);
      descend(i + 1, u);
      idx_.pop_back();
      if (stopped_) return;
    }
  }

  const std::vector<ElementSet>& members_;
  int d_;
  int union_cap_;
  Visit& visit_;
  std::vector<int> idx_;
  bool stopped_ = false;
};

template <typename Visit>
void walk_clusters(const std::vector<ElementSet>& members, int d, int union_cap,
                   Visit visit) {
  ClusterWalk<Visit>(members, d, union_cap, visit).run();
}

int intersection_size_of(const std::vector<ElementSet>& members,
                         const std::vector<int>& idx) {
  std::uint64_t m = ~std::uint64_t{0};
  for (int i : idx) m &= members[static_cast<std::size_t>(i)].mask();
  int n = members.front().ground_size();
  return std::popcount(m & ElementSet::ground_mask(n));
}

}  // namespace

std::optional<ClusterWitness> find_violating_cluster(const SetFamily& f,
                                                     const ConditionParams& p) {
  std::optional<ClusterWitness> found;
  walk_clusters(f.members(), p.d, p.s, [&](const std::vector<int>& idx) {
    if (intersection_size_of(f.members(), idx) >= p.t) return false;
    ClusterWitness w;
    for (int i : idx) w.sets.push_back(f.member(static_cast<std::size_t>(i)));
    w.union_size = union_size(w.sets);
    w.intersection_size = intersection_size(w.sets);
    found = std::move(w);
    return true;
  });
  return found;
}

bool is_conditionally_intersecting(const SetFamily& f, const ConditionParams& p) {
  return !find_violating_cluster(f, p).has_value();
}

bool is_d_wise_t_intersecting(const SetFamily& f, int d, int t) {
  return is_conditionally_intersecting(f, ConditionParams(d, f.ground_size(), t));
}

namespace {

// Distinctness plus membership checks shared by the witness operations.
void require_subfamily(std::span<const ElementSet> subfamily, const SetFamily& f) {
  if (subfamily.empty()) throw ArgumentError("subfamily is empty");
  for (std::size_t a = 0; a < subfamily.size(); ++a) {
    if (!f.contains(subfamily[a]))
      throw ArgumentError("subfamily member missing from the family");
    for (std::size_t b = a + 1; b < subfamily.size(); ++b)
      if (subfamily[a] == subfamily[b])
        throw ArgumentError("subfamily members must be distinct");
  }
}

}  // namespace

bool check_unstable_characterization(std::span<const ElementSet> subfamily,
                                     const SetFamily& f, ShiftPair p,
                                     const ConditionParams& params) {
  require_subfamily(subfamily, f);
  if (static_cast<int>(subfamily.size()) != params.d)
    throw ArgumentError("witness check needs exactly d members");
  std::vector<ElementSet> image = shift_image(subfamily, f, p);
  int inter_before = intersection_size(subfamily);
  int inter_after = intersection_size(image);
  int union_before = union_size(subfamily);
  int union_after = union_size(image);
  return inter_before <= inter_after && inter_after <= params.t - 1 &&
         union_before == params.s + 1 && union_after == params.s;
}

std::optional<UnstableWitness> is_ij_unstable(const SetFamily& f, ShiftPair p,
                                              const ConditionParams& params) {
  if (!is_conditionally_intersecting(f, params))
    throw ArgumentError("instability is only defined for families meeting the condition");
  std::optional<UnstableWitness> found;
  // A witness has union exactly s+1, so cap the cluster walk there.
  walk_clusters(f.members(), params.d, params.s + 1, [&](const std::vector<int>& idx) {
    std::vector<ElementSet> sub;
    sub.reserve(idx.size());
    for (int i : idx) sub.push_back(f.member(static_cast<std::size_t>(i)));
    if (!check_unstable_characterization(sub, f, p, params)) return false;
    found = UnstableWitness{std::move(sub), p, params};
    return true;
  });
  return found;
}

UnstablePartition partition_unstable_family(std::span<const ElementSet> subfamily,
                                            const SetFamily& f, ShiftPair p) {
  require_subfamily(subfamily, f);
  // The partition does not depend on (s,t); verify the parameter-free core
  // of the witness property: the union must shrink by exactly one.
  std::vector<ElementSet> image = shift_image(subfamily, f, p);
  if (union_size(image) != union_size(subfamily) - 1)
    throw ArgumentError("subfamily is not an instability witness for this pair");

  UnstablePartition out;
  for (const ElementSet& a : subfamily) {
    bool has_i = a.contains(p.i), has_j = a.contains(p.j);
    if (has_j && !has_i && !f.contains(swapped(a, p.j, p.i))) {
      out.moved.push_back(a);
    } else if (has_i && !has_j) {
      out.with_i.push_back(a);
    } else if (!has_i && !has_j) {
      out.avoiding_both.push_back(a);
    } else {
      // A witness never holds a member with both elements, nor a j-member
      // whose swap stays inside the family; the union could not drop.
      throw std::logic_error("unstable witness with an unmovable j-member");
    }
  }
  return out;
}

}  // namespace setlab
