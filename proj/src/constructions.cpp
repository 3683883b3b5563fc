#include "setlab/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "setlab/predicates.hpp"

namespace setlab {

namespace {

void require_level(int n, int k) {
  if (n < 1 || n > kMaxGroundSize) throw ArgumentError("ground size must be between 1 and 64");
  if (k < 1 || k > n) throw ArgumentError("member size must be between 1 and n");
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

SetFamily star(int n, int k, int center) {
  require_level(n, k);
  if (center < 1 || center > n) throw ArgumentError("center outside the ground set");
  ElementSet rest = ElementSet(n, {center}).complement();
  std::vector<ElementSet> members;
  for (const ElementSet& tail : subsets_of(rest, k - 1))
    members.push_back(tail.with(center));
  return SetFamily(n, std::move(members));
}

SetFamily h_k(int n, int k) {
  require_level(n, k);
  // contiguous near-equal parts, the larger ones first
  int q = n / k, rem = n % k;
  std::vector<std::vector<int>> parts;
  int next = 1;
  for (int p = 0; p < k; ++p) {
    int len = q + (p < rem ? 1 : 0);
    std::vector<int> part(static_cast<std::size_t>(len));
    std::iota(part.begin(), part.end(), next);
    next += len;
    parts.push_back(std::move(part));
  }
  std::vector<ElementSet> members;
  std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
  while (true) {
    ElementSet m(n);
    for (int p = 0; p < k; ++p)
      m = m.with(parts[static_cast<std::size_t>(p)][pick[static_cast<std::size_t>(p)]]);
    members.push_back(m);
    int p = k - 1;
    while (p >= 0 && pick[static_cast<std::size_t>(p)] + 1 ==
                         parts[static_cast<std::size_t>(p)].size()) {
      pick[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) break;
    ++pick[static_cast<std::size_t>(p)];
  }
  return SetFamily(n, std::move(members));
}

PartitionSpec::PartitionSpec(std::vector<ElementSet> parts_, std::vector<int> thresholds_)
    : parts(std::move(parts_)), thresholds(std::move(thresholds_)) {
  if (parts.empty()) throw ArgumentError("partition needs at least one part");
  if (parts.size() != thresholds.size())
    throw ArgumentError("one threshold per part required");
  const int n = parts.front().ground_size();
  ElementSet seen(n);
  for (const ElementSet& p : parts) {
    if (p.ground_size() != n) throw ArgumentError("parts live over different ground sizes");
    if (p.empty()) throw ArgumentError("parts must be nonempty");
    if (seen.intersects(p)) throw ArgumentError("parts must be disjoint");
    seen = seen | p;
  }
  if (seen.size() != n) throw ArgumentError("parts must cover the whole ground set");
  for (int t : thresholds)
    if (t < 0) throw ArgumentError("thresholds must be nonnegative");
}

int PartitionSpec::threshold_sum() const {
  return std::accumulate(thresholds.begin(), thresholds.end(), 0);
}

namespace {

void require_spec_fits(int n, int k, const PartitionSpec& spec) {
  require_level(n, k);
  if (spec.ground_size() != n) throw ArgumentError("partition ground size mismatch");
  if (static_cast<int>(spec.parts.size()) > k)
    throw ArgumentError("at most k parts allowed");
  if (spec.threshold_sum() > k)
    throw ArgumentError("threshold sum may not exceed the member size");
}

}  // namespace

SetFamily g_r(int n, int k, const PartitionSpec& spec) {
  require_spec_fits(n, k, spec);
  std::vector<ElementSet> members;
  for (const ElementSet& a : level_sets(n, k)) {
    bool ok = true;
    for (std::size_t i = 0; i < spec.parts.size(); ++i)
      if ((a & spec.parts[i]).size() < spec.thresholds[i]) {
        ok = false;
        break;
      }
    if (ok) members.push_back(a);
  }
  return SetFamily(n, std::move(members));
}

SetFamily f_j(int n, int k, int t, int j) {
  require_level(n, k);
  if (t < 1 || j < 0) throw ArgumentError("need t >= 1 and j >= 0");
  if (t + 2 * j > n) throw ArgumentError("window t+2j exceeds the ground set");
  if (t + j > k) throw ArgumentError("quota t+j exceeds the member size");
  ElementSet window(n);
  for (int e = 1; e <= t + 2 * j; ++e) window = window.with(e);
  std::vector<ElementSet> members;
  for (const ElementSet& a : level_sets(n, k))
    if ((a & window).size() >= t + j) members.push_back(a);
  return SetFamily(n, std::move(members));
}

SetFamily f_prime(int n, int k, int t) {
  require_level(n, k);
  if (t < 1 || t > k) throw ArgumentError("need 1 <= t <= k");
  if (k + 1 > n) throw ArgumentError("need k+1 <= n");
  ElementSet head(n), tail(n);
  for (int e = 1; e <= t; ++e) head = head.with(e);
  for (int e = t + 1; e <= k + 1; ++e) tail = tail.with(e);
  std::vector<ElementSet> members;
  for (const ElementSet& a : level_sets(n, k))
    if (head.subset_of(a) && a.intersects(tail)) members.push_back(a);
  ElementSet block = head | tail;  // {1..k+1}
  for (int e = 1; e <= k + 1; ++e) members.push_back(block.without(e));
  return SetFamily(n, std::move(members));
}

SetFamily twin_2_star(int n, int x, int y, const std::map<int, int>& assignment) {
  if (n < 2 || n > kMaxGroundSize) throw ArgumentError("ground size must be between 2 and 64");
  if (x == y || x < 1 || x > n || y < 1 || y > n)
    throw ArgumentError("centers must be two distinct ground elements");
  if (static_cast<int>(assignment.size()) != n - 2)
    throw ArgumentError("assignment must cover every non-center element");
  bool used_x = false, used_y = false;
  std::vector<ElementSet> members;
  for (const auto& [z, c] : assignment) {
    if (z < 1 || z > n || z == x || z == y)
      throw ArgumentError("assignment keys must be the non-center elements");
    if (c != x && c != y) throw ArgumentError("assignment values must be a center");
    (c == x ? used_x : used_y) = true;
    members.push_back(ElementSet(n, {z, c}));
  }
  if (!used_x || !used_y)
    throw ArgumentError("both centers must be used; a one-center family is a plain star");
  return SetFamily(n, std::move(members));
}

bool is_twin_2_star(const SetFamily& f) {
  const int n = f.ground_size();
  if (static_cast<int>(f.size()) != n - 2 || n < 4) return false;
  for (const ElementSet& m : f.members())
    if (m.size() != 2) return false;
  for (int x = 1; x <= n; ++x) {
    for (int y = x + 1; y <= n; ++y) {
      ElementSet centers(n, {x, y});
      ElementSet covered(n);
      bool ok = true, used_x = false, used_y = false;
      for (const ElementSet& m : f.members()) {
        ElementSet hit = m & centers;
        if (hit.size() != 1) {
          ok = false;
          break;
        }
        (hit.contains(x) ? used_x : used_y) = true;
        ElementSet z = m - centers;
        if (z.intersects(covered)) {
          ok = false;  // some outside element used twice
          break;
        }
        covered = covered | z;
      }
      if (ok && used_x && used_y && covered == centers.complement()) return true;
    }
  }
  return false;
}

SetFamily conjecture41_family(int n, int k, int x, const ElementSet& b) {
  require_level(n, k);
  if (x < 1 || x > n) throw ArgumentError("focus element outside the ground set");
  if (b.ground_size() != n || b.size() != k)
    throw ArgumentError("blocker must be a k-subset of the same ground set");
  if (b.contains(x)) throw ArgumentError("blocker must avoid the focus element");
  std::vector<ElementSet> members{b};
  for (const ElementSet& a : level_sets(n, k))
    if (a.contains(x) && !a.intersects(b)) members.push_back(a);
  return SetFamily(n, std::move(members));
}

SetFamily section4_g_family(int n, int k, const ElementSet& b1, const ElementSet& b2,
                            int x, int y) {
  require_level(n, k);
  if (b1.ground_size() != n || b2.ground_size() != n || b1.size() != k || b2.size() != k)
    throw ArgumentError("blockers must be k-subsets of the same ground set");
  if (b1.intersects(b2)) throw ArgumentError("blockers must be disjoint");
  if (!b1.contains(x) || !b2.contains(y))
    throw ArgumentError("anchors must lie in their blockers");
  ElementSet outside = (b1 | b2).complement();
  std::vector<ElementSet> members{b1, b2};
  for (const ElementSet& a : level_sets(n, k))
    if (a.contains(x) && a.contains(y) && a.intersects(outside)) members.push_back(a);
  return SetFamily(n, std::move(members));
}

int lemma54_min_n(int d, int k) {
  if (d < 2 || k < 1) throw ArgumentError("need d >= 2 and k >= 1");
  return ceil_div(d * k, d - 1);
}

int theorem56_s(int d, int k, const PartitionSpec& spec) {
  if (d < 2) throw ArgumentError("need d >= 2");
  require_spec_fits(spec.ground_size(), k, spec);
  int per_part = 0;
  for (int x : spec.thresholds) per_part += ceil_div(d * x, d - 1);
  return std::max(lemma54_min_n(d, k) - 1, per_part - 1);
}

namespace {

// Indices of the `count` currently smallest sets, by (size, set index).
std::vector<int> smallest_sets(const std::vector<ElementSet>& sets, int count) {
  std::vector<int> order(sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sets[static_cast<std::size_t>(a)].size() < sets[static_cast<std::size_t>(b)].size();
  });
  order.resize(static_cast<std::size_t>(count));
  return order;
}

int distinct_count(std::vector<ElementSet> sets) {
  std::sort(sets.begin(), sets.end());
  int distinct = 1;
  for (std::size_t i = 1; i < sets.size(); ++i)
    if (!(sets[i] == sets[i - 1])) ++distinct;
  return distinct;
}

// Union each piece into one set. The pairing of sizes is pinned — larger
// pieces land on currently-smaller sets — but ties leave a choice, and the
// choice is spent on keeping the sets pairwise distinct.
void merge_pieces(std::vector<ElementSet>& sets, const std::vector<ElementSet>& pieces) {
  const int d = static_cast<int>(sets.size());
  auto apply = [&](const std::vector<int>& assign) {
    std::vector<ElementSet> merged = sets;
    for (int j = 0; j < d; ++j) {
      ElementSet& target = merged[static_cast<std::size_t>(assign[static_cast<std::size_t>(j)])];
      target = target | pieces[static_cast<std::size_t>(j)];
    }
    return merged;
  };
  auto respects_sizes = [&](const std::vector<int>& assign) {
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        if (pieces[static_cast<std::size_t>(p)].size() >
                pieces[static_cast<std::size_t>(q)].size() &&
            sets[static_cast<std::size_t>(assign[static_cast<std::size_t>(p)])].size() >
                sets[static_cast<std::size_t>(assign[static_cast<std::size_t>(q)])].size())
          return false;
    return true;
  };
  std::vector<int> assign(static_cast<std::size_t>(d));
  std::iota(assign.begin(), assign.end(), 0);
  std::vector<int> best;
  int best_distinct = -1;
  if (d <= 8) {
    do {
      if (!respects_sizes(assign)) continue;
      int got = distinct_count(apply(assign));
      if (got > best_distinct) {
        best_distinct = got;
        best = assign;
      }
    } while (std::next_permutation(assign.begin(), assign.end()));
  } else {
    // too many orderings to scan: fall back to the plain size pairing
    std::vector<int> set_order = smallest_sets(sets, d);
    std::vector<int> piece_order(static_cast<std::size_t>(d));
    std::iota(piece_order.begin(), piece_order.end(), 0);
    std::stable_sort(piece_order.begin(), piece_order.end(), [&](int p, int q) {
      return pieces[static_cast<std::size_t>(p)].size() >
             pieces[static_cast<std::size_t>(q)].size();
    });
    best.resize(static_cast<std::size_t>(d));
    for (int idx = 0; idx < d; ++idx)
      best[static_cast<std::size_t>(piece_order[static_cast<std::size_t>(idx)])] =
          set_order[static_cast<std::size_t>(idx)];
  }
  sets = apply(best);
}

}  // namespace

std::vector<ElementSet> theorem56_witness(int d, int k, const PartitionSpec& spec) {
  if (d < 2) throw ArgumentError("need d >= 2");
  const int n = spec.ground_size();
  require_spec_fits(n, k, spec);
  SetFamily family = g_r(n, k, spec);
  if (n < lemma54_min_n(d, k) || is_d_wise_t_intersecting(family, d, 1))
    throw CapabilityError(
        "witness construction needs a family that is not d-wise intersecting");

  const int r = static_cast<int>(spec.parts.size());
  std::vector<int> y(static_cast<std::size_t>(r));
  int need_lo = 0, cap_hi = 0;
  for (int i = 0; i < r; ++i) {
    y[static_cast<std::size_t>(i)] = ceil_div(d * spec.thresholds[static_cast<std::size_t>(i)], d - 1);
    if (spec.parts[static_cast<std::size_t>(i)].size() < y[static_cast<std::size_t>(i)])
      throw std::logic_error("part too small despite the intersecting check");
    need_lo += d * spec.thresholds[static_cast<std::size_t>(i)];
    cap_hi += (d - 1) * y[static_cast<std::size_t>(i)];
  }

  const bool parts_cover_quota = cap_hi >= d * k;
  // Split the total added size across parts: each a_i lands in
  // [d*x_i, (d-1)*y_i], greedily maximal when the parts carry the quota.
  std::vector<int> a(static_cast<std::size_t>(r));
  if (parts_cover_quota) {
    int remaining = d * k;
    int lo_rest = need_lo;
    for (int i = 0; i < r; ++i) {
      lo_rest -= d * spec.thresholds[static_cast<std::size_t>(i)];
      a[static_cast<std::size_t>(i)] =
          std::min((d - 1) * y[static_cast<std::size_t>(i)], remaining - lo_rest);
      remaining -= a[static_cast<std::size_t>(i)];
    }
    if (remaining != 0) throw std::logic_error("quota split failed");
  } else {
    for (int i = 0; i < r; ++i)
      a[static_cast<std::size_t>(i)] = (d - 1) * y[static_cast<std::size_t>(i)];
  }

  std::vector<ElementSet> sets(static_cast<std::size_t>(d), ElementSet(n));
  ElementSet drawn(n);  // everything placed so far
  for (int i = 0; i < r; ++i) {
    const int yi = y[static_cast<std::size_t>(i)];
    if (yi == 0) continue;
    std::vector<int> chosen = spec.parts[static_cast<std::size_t>(i)].elements();
    chosen.resize(static_cast<std::size_t>(yi));  // the yi smallest elements
    // Fill d pieces inside this part: each element goes to the d-1 smallest
    // pieces, the last element to however many the target a_i still needs.
    std::vector<ElementSet> pieces(static_cast<std::size_t>(d), ElementSet(n));
    for (int e = 0; e < yi; ++e) {
      int count = (e == yi - 1) ? a[static_cast<std::size_t>(i)] - (d - 1) * (yi - 1) : d - 1;
      if (count < 1 || count > d - 1) throw std::logic_error("piece fill count out of range");
      for (int idx : smallest_sets(pieces, count))
        pieces[static_cast<std::size_t>(idx)] =
            pieces[static_cast<std::size_t>(idx)].with(chosen[static_cast<std::size_t>(e)]);
      drawn = drawn.with(chosen[static_cast<std::size_t>(e)]);
    }
    merge_pieces(sets, pieces);
  }

  if (!parts_cover_quota) {
    // Top up from untouched elements, then trim the largest sets back to
    // total size d*k without dipping below any part threshold.
    auto total = [&] {
      int sum = 0;
      for (const ElementSet& s : sets) sum += s.size();
      return sum;
    };
    for (int e = 1; e <= n && total() < d * k; ++e) {
      if (drawn.contains(e)) continue;
      for (int idx : smallest_sets(sets, d - 1))
        sets[static_cast<std::size_t>(idx)] = sets[static_cast<std::size_t>(idx)].with(e);
      drawn = drawn.with(e);
    }
    if (total() < d * k) throw std::logic_error("ground set exhausted during top-up");
    while (total() > d * k) {
      int largest = smallest_sets(sets, d).back();
      ElementSet& sel = sets[static_cast<std::size_t>(largest)];
      // Largest element whose part stays above threshold; prefer one whose
      // removal does not collapse this set onto another.
      int victim = 0, colliding_victim = 0;
      for (int e : sel.elements()) {
        bool eligible = false;
        for (std::size_t p = 0; p < spec.parts.size(); ++p)
          if (spec.parts[p].contains(e) &&
              (sel & spec.parts[p]).size() > spec.thresholds[p])
            eligible = true;
        if (!eligible) continue;
        ElementSet trimmed = sel.without(e);
        bool collides = false;
        for (int j = 0; j < d; ++j)
          if (j != largest && sets[static_cast<std::size_t>(j)] == trimmed) collides = true;
        (collides ? colliding_victim : victim) = e;
      }
      if (victim == 0) victim = colliding_victim;
      if (victim == 0) throw std::logic_error("no removable element in the largest set");
      sel = sel.without(victim);
    }
  }

  const int s = theorem56_s(d, k, spec);
  std::sort(sets.begin(), sets.end());
  if (std::adjacent_find(sets.begin(), sets.end()) != sets.end()) {
    // Degenerate corner: every tie-break still collapses two sets onto the
    // same member. A valid cluster may exist regardless; take the first one
    // in canonical order instead.
    std::optional<ClusterWitness> w =
        find_violating_cluster(family, ConditionParams(d, s + 1, 1));
    if (!w)
      throw CapabilityError(
          "the family has no cluster of d distinct members at union size s+1");
    sets = w->sets;
    std::sort(sets.begin(), sets.end());
  }

  // The construction promises d distinct k-sets of the family with empty
  // meet and union of size exactly s+1; re-verify rather than trust.
  for (const ElementSet& w : sets) {
    if (w.size() != k) throw std::logic_error("witness member has the wrong size");
    if (!family.contains(w)) throw std::logic_error("witness member escaped the family");
  }
  for (std::size_t p = 0; p + 1 < sets.size(); ++p)
    if (sets[p] == sets[p + 1]) throw std::logic_error("witness members collide");
  if (intersection_size(sets) != 0) throw std::logic_error("witness meet is nonempty");
  if (union_size(sets) != s + 1) throw std::logic_error("witness union has the wrong size");
  return sets;
}

std::uint64_t theorem62_bound(int n, int s) {
  if (n < 1 || s < 1 || s > n) throw ArgumentError("need 1 <= s <= n");
  std::uint64_t total = 0;
  if (s % 2 == 0) {
    int k = s / 2;
    total = binomial(n - 1, k - 1);
    for (int i = k + 1; i <= n; ++i) total = checked_add(total, binomial(n, i));
  } else {
    int k = (s + 1) / 2;
    for (int i = k; i <= n; ++i) total = checked_add(total, binomial(n, i));
  }
  return total;
}

std::uint64_t theorem71_bound(int n, int s, int u, BoundCase which) {
  if (n < 1 || s < 1 || s > n) throw ArgumentError("need 1 <= s <= n");
  if (u < 0 || u > n) throw ArgumentError("need 0 <= u <= n");
  std::uint64_t total = 0;
  switch (which) {
    case BoundCase::i: {
      if (s % 2 != 0) throw ArgumentError("case i needs even s");
      if (u < s - 1) throw ArgumentError("case i needs u >= s-1");
      int k = s / 2;
      total = binomial(n - 1, k - 1);
      for (int i = k + 1; i <= u; ++i) total = checked_add(total, binomial(n, i));
      return total;
    }
    case BoundCase::ii: {
      if (s % 2 != 1) throw ArgumentError("case ii needs odd s");
      if (u < s - 1) throw ArgumentError("case ii needs u >= s-1");
      int k = (s + 1) / 2;
      for (int i = k; i <= u; ++i) total = checked_add(total, binomial(n, i));
      return total;
    }
    case BoundCase::iii: {
      if (u > s / 2) throw ArgumentError("case iii needs u <= floor(s/2)");
      for (int r = 1; r <= u; ++r) total = checked_add(total, binomial(n - 1, r - 1));
      return total;
    }
  }
  throw ArgumentError("unknown bound case");
}

std::uint64_t theorem74_bound(int n, int s, int u) {
  if (n < 1 || s < 1 || s > n) throw ArgumentError("need 1 <= s <= n");
  if (!(2 * u > s && u < s - 1))
    throw ArgumentError("middle regime needs s/2 < u < s-1");
  std::uint64_t total = 0;
  if (s % 2 == 0) {
    int k = s / 2;
    total = binomial(n - 1, k - 1);
    for (int i = k + 1; i <= u; ++i) total = checked_add(total, binomial(n, i));
  } else {
    int k = (s + 1) / 2;
    for (int i = k; i <= u; ++i) total = checked_add(total, binomial(n, i));
  }
  return total;
}

KatonaCheck katona_bound_check(const SetFamily& f, int t, int ell) {
  if (f.empty()) throw ArgumentError("shadow bound needs a nonempty family");
  const int k = f.member(0).size();
  for (const ElementSet& m : f.members())
    if (m.size() != k) throw ArgumentError("shadow bound needs a uniform family");
  if (t < 1 || t > k) throw ArgumentError("need 1 <= t <= k");
  if (ell < k - t || ell > k) throw ArgumentError("need k-t <= ell <= k");
  if (!is_d_wise_t_intersecting(f, 2, t))
    throw ArgumentError("family members must pairwise share t elements");

  KatonaCheck out;
  out.lhs = shadow(f, ell).size();
  out.rhs = Rational(checked_mul(binomial(2 * k - t, ell), f.size()),
                     binomial(2 * k - t, k));
  int cmp = compare_with_rational(out.lhs, out.rhs);
  out.holds = cmp >= 0;
  out.equality = cmp == 0;
  return out;
}

}  // namespace setlab
