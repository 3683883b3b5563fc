#pragma once

#include <cstddef>
#include <vector>

#include "setlab/sets.hpp"

namespace setlab {

/// Largest ground size for which isomorph canonicalization runs all n!
/// relabelings by default.
inline constexpr int kDefaultCanonicalLimit = 8;

/// A finite family of distinct subsets of {1,...,n}. Members are kept
/// deduplicated and sorted in canonical order (cardinality, then mask).
class SetFamily {
 public:
  explicit SetFamily(int ground_size);
  SetFamily(int ground_size, std::vector<ElementSet> members);

  int ground_size() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<ElementSet>& members() const { return members_; }
  const ElementSet& member(std::size_t idx) const { return members_.at(idx); }

  bool contains(const ElementSet& s) const;
  SetFamily with(const ElementSet& s) const;
  SetFamily without(const ElementSet& s) const;

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.n_ == b.n_ && a.members_ == b.members_;
  }
  friend bool operator!=(const SetFamily& a, const SetFamily& b) { return !(a == b); }

  /// All k-subsets of {1,...,n}.
  static SetFamily full_level(int n, int k);
  /// All 2^n subsets, the empty set included.
  static SetFamily power_set(int n);
  /// All subsets of size at most u, the empty set included.
  static SetFamily up_to_size(int n, int u);

 private:
  int n_;
  std::vector<ElementSet> members_;
};

/// All k-subsets of {1,...,n}, in canonical order.
std::vector<ElementSet> level_sets(int n, int k);

/// All k-subsets of a fixed set, in canonical order.
std::vector<ElementSet> subsets_of(const ElementSet& s, int k);

/// Members of exactly the given size.
SetFamily slice_by_size(const SetFamily& f, int r);

/// The family of member complements.
SetFamily complement_family(const SetFamily& f);

/// All ell-subsets of {1,...,n} contained in at least one member.
/// Members smaller than ell contribute nothing.
SetFamily shadow(const SetFamily& f, int ell);

/// The lexicographically least relabeling of the family over all
/// permutations of the ground set. Exhaustive; refuses ground sizes
/// above `permutation_limit`.
SetFamily canonical_form(const SetFamily& f, int permutation_limit = kDefaultCanonicalLimit);

}  // namespace setlab
