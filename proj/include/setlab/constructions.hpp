#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "setlab/binomial.hpp"
#include "setlab/family.hpp"

namespace setlab {

/// All k-subsets containing the center element.
SetFamily star(int n, int k, int center);

/// Ground set split into k contiguous parts of near-equal size (larger
/// parts first); members are the transversals picking one element per part.
SetFamily h_k(int n, int k);

/// A partition of the ground set with one lower intersection threshold per
/// part. Parts are nonempty, disjoint, and cover everything.
struct PartitionSpec {
  std::vector<ElementSet> parts;
  std::vector<int> thresholds;

  PartitionSpec(std::vector<ElementSet> parts_, std::vector<int> thresholds_);
  int ground_size() const { return parts.front().ground_size(); }
  int threshold_sum() const;
};

/// All k-subsets meeting every part in at least its threshold. The
/// threshold sum may not exceed k, and there are at most k parts.
SetFamily g_r(int n, int k, const PartitionSpec& spec);

/// All k-subsets holding at least t+j elements of {1,...,t+2j}.
SetFamily f_j(int n, int k, int t, int j);

/// k-subsets containing {1..t} and meeting {t+1..k+1}, together with all
/// k-subsets of {1..k+1}.
SetFamily f_prime(int n, int k, int t);

/// n-2 pairs {z, center(z)} with both centers used, each outside element
/// once. Assignment maps every element other than the centers to one of them.
SetFamily twin_2_star(int n, int x, int y, const std::map<int, int>& assignment);

/// Structural recognizer for the shape above (two disjoint nonempty stars
/// covering the non-center elements exactly once).
bool is_twin_2_star(const SetFamily& f);

/// {A : x in A, A disjoint from B} plus B itself, for a k-set B avoiding x.
SetFamily conjecture41_family(int n, int k, int x, const ElementSet& b);

/// {B1, B2} plus every k-set through x and y that leaves the span of B1,B2.
/// B1, B2 are disjoint k-sets with x in B1 and y in B2.
SetFamily section4_g_family(int n, int k, const ElementSet& b1, const ElementSet& b2,
                            int x, int y);

/// Least ground size admitting d k-sets with empty common intersection.
int lemma54_min_n(int d, int k);

/// The cutoff s for which g_r (when it is not d-wise intersecting) meets
/// the condition at s but has a violating cluster at s+1.
int theorem56_s(int d, int k, const PartitionSpec& spec);

/// d distinct members of g_r with empty common intersection and union of
/// size exactly theorem56_s + 1. Postconditions are re-verified before
/// returning. Refuses specs whose g_r is d-wise intersecting.
std::vector<ElementSet> theorem56_witness(int d, int k, const PartitionSpec& spec);

/// Size ceiling for families over the full power set under the pairwise
/// condition at s: even s compares against a star slice plus all large
/// sets, odd s against all sets of size at least (s+1)/2.
std::uint64_t theorem62_bound(int n, int s);

enum class BoundCase { i, ii, iii };

/// Size ceiling for families of sets of size at most u under the pairwise
/// condition at s. Case i: u >= s-1, s even. Case ii: u >= s-1, s odd.
/// Case iii: u <= floor(s/2).
std::uint64_t theorem71_bound(int n, int s, int u, BoundCase which);

/// Same closed forms in the middle regime s/2 < u < s-1.
std::uint64_t theorem74_bound(int n, int s, int u);

struct KatonaCheck {
  bool holds;
  bool equality;
  std::uint64_t lhs;   // shadow size
  Rational rhs;        // exact lower bound
};

/// Shadow lower bound for a k-uniform family in which every two members
/// share at least t elements: |shadow_ell| >= C(2k-t,ell)/C(2k-t,k) * |F|.
KatonaCheck katona_bound_check(const SetFamily& f, int t, int ell);

}  // namespace setlab
