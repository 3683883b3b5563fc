#include "setlab/family.hpp"

#include <algorithm>
#include <numeric>

#include "setlab/errors.hpp"

namespace setlab {

SetFamily::SetFamily(int ground_size) : n_(ground_size) {
  if (n_ < 1 || n_ > kMaxGroundSize)
    throw ArgumentError("ground size must be between 1 and 64");
}

SetFamily::SetFamily(int ground_size, std::vector<ElementSet> members)
    : SetFamily(ground_size) {
  for (const ElementSet& s : members)
    if (s.ground_size() != n_)
      throw ArgumentError("member ground size does not match the family");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  members_ = std::move(members);
}

bool SetFamily::contains(const ElementSet& s) const {
  if (s.ground_size() != n_) throw ArgumentError("membership test across ground sizes");
  return std::binary_search(members_.begin(), members_.end(), s);
}

SetFamily SetFamily::with(const ElementSet& s) const {
  std::vector<ElementSet> m = members_;
  m.push_back(s);
  return SetFamily(n_, std::move(m));
}

SetFamily SetFamily::without(const ElementSet& s) const {
  std::vector<ElementSet> m;
  m.reserve(members_.size());
  for (const ElementSet& x : members_)
    if (x != s) m.push_back(x);
  return SetFamily(n_, std::move(m));
}

std::vector<ElementSet> subsets_of(const ElementSet& s, int k) {
  if (k < 0) throw ArgumentError("subset size must be nonnegative");
  std::vector<ElementSet> out;
  if (k > s.size()) return out;
  const std::vector<int> elems = s.elements();
  const int m = static_cast<int>(elems.size());
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    ElementSet t(s.ground_size());
    for (int i : idx) t = t.with(elems[static_cast<std::size_t>(i)]);
    out.push_back(t);
    // advance the combination
    int p = k - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == m - k + p) --p;
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < k; ++q)
      idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElementSet> level_sets(int n, int k) {
  ElementSet full = ElementSet::from_mask(n, ElementSet::ground_mask(n));
  return subsets_of(full, k);
}

SetFamily SetFamily::full_level(int n, int k) {
  if (k < 0 || k > n) throw ArgumentError("level outside 0..n");
  return SetFamily(n, level_sets(n, k));
}

SetFamily SetFamily::power_set(int n) {
  if (n < 1 || n > 24) throw ArgumentError("power set supported for n up to 24");
  std::vector<ElementSet> all;
  all.reserve(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    all.push_back(ElementSet::from_mask(n, m));
  return SetFamily(n, std::move(all));
}

SetFamily SetFamily::up_to_size(int n, int u) {
  if (u < 0 || u > n) throw ArgumentError("size bound outside 0..n");
  std::vector<ElementSet> all;
  for (int k = 0; k <= u; ++k) {
    std::vector<ElementSet> lvl = level_sets(n, k);
    all.insert(all.end(), lvl.begin(), lvl.end());
  }
  return SetFamily(n, std::move(all));
}

SetFamily slice_by_size(const SetFamily& f, int r) {
  std::vector<ElementSet> out;
  for (const ElementSet& s : f.members())
    if (s.size() == r) out.push_back(s);
  return SetFamily(f.ground_size(), std::move(out));
}

SetFamily complement_family(const SetFamily& f) {
  std::vector<ElementSet> out;
  out.reserve(f.size());
  for (const ElementSet& s : f.members()) out.push_back(s.complement());
  return SetFamily(f.ground_size(), std::move(out));
}

SetFamily shadow(const SetFamily& f, int ell) {
  if (ell < 0 || ell > f.ground_size())
    throw ArgumentError("shadow level outside 0..n");
  std::vector<ElementSet> out;
  for (const ElementSet& s : f.members()) {
    if (s.size() < ell) continue;
    std::vector<ElementSet> subs = subsets_of(s, ell);
    out.insert(out.end(), subs.begin(), subs.end());
  }
  return SetFamily(f.ground_size(), std::move(out));
}

namespace {

// Relabel every member through perm (perm[e-1] is the image of element e)
// and return the family's sorted member list.
std::vector<ElementSet> relabeled_members(const SetFamily& f, const std::vector<int>& perm) {
  std::vector<ElementSet> out;
  out.reserve(f.size());
  for (const ElementSet& s : f.members()) {
    ElementSet t(f.ground_size());
    for (int e : s.elements()) t = t.with(perm[static_cast<std::size_t>(e - 1)]);
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SetFamily canonical_form(const SetFamily& f, int permutation_limit) {
  const int n = f.ground_size();
  if (f.empty()) return f;
  if (permutation_limit < 1) throw ArgumentError("permutation limit must be positive");
  if (n > permutation_limit)
    throw CapabilityError("canonical form runs all n! relabelings and is capped at n = " +
                          std::to_string(permutation_limit));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<ElementSet> best = relabeled_members(f, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<ElementSet> cand = relabeled_members(f, perm);
    if (std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end()))
      best = std::move(cand);
  }
  return SetFamily(n, std::move(best));
}

}  // namespace setlab
