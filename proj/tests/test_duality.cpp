#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <initializer_list>
#include <random>
#include <vector>

#include "setlab/duality.hpp"
#include "setlab/io.hpp"

using namespace setlab;

namespace {

ElementSet make(int n, std::initializer_list<int> elems) {
  ElementSet out(n);
  for (int e : elems) out = out.with(e);
  return out;
}

std::vector<ElementSet> sorted(std::vector<ElementSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<ElementSet> minus(std::vector<ElementSet> a, std::vector<ElementSet> b) {
  a = sorted(std::move(a));
  b = sorted(std::move(b));
  std::vector<ElementSet> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<ElementSet> joined(std::vector<ElementSet> a, std::vector<ElementSet> b) {
  a.insert(a.end(), b.begin(), b.end());
  return sorted(std::move(a));
}

// Assert every guarantee the map makes for one witness, and return the trace.
DualityTrace checked_forward(const std::vector<ElementSet>& witness, const SetFamily& f,
                             ShiftPair p, const ConditionParams& params) {
  DualityTrace tr = duality_forward(witness, f, p, params);
  ShiftPair rev(p.j, p.i);

  CHECK(tr.input == sorted(witness));
  CHECK(static_cast<int>(tr.output.size()) == params.d);
  for (const ElementSet& m : tr.output) CHECK(f.contains(m));
  CHECK(check_unstable_characterization(tr.output, f, rev, params));

  // the output is assembled exactly as stated: moved + avoiding_both +
  // (with_i - fixed) + swapped fixed
  CHECK(tr.output ==
        joined(joined(tr.partition.moved, tr.partition.avoiding_both),
               joined(minus(tr.partition.with_i, tr.reverse_fixed),
                      tr.reverse_fixed_swapped)));
  CHECK(!minus(tr.partition.with_i, tr.reverse_fixed).empty());

  // re-partitioning the output for the reversed pair recovers the three
  // classes predicted by the identities: the movable with_i members, the
  // old moved class plus the swaps, and the untouched avoiding class
  UnstablePartition back = partition_unstable_family(tr.output, f, rev);
  CHECK(sorted(back.moved) == minus(tr.partition.with_i, tr.reverse_fixed));
  CHECK(sorted(back.with_i) ==
        joined(tr.partition.moved, tr.reverse_fixed_swapped));
  CHECK(sorted(back.avoiding_both) == sorted(tr.partition.avoiding_both));

  // the two blocked classes mirror each other, making the map an involution
  CHECK(sorted(tr.output_fixed) == sorted(tr.reverse_fixed_swapped));
  CHECK(sorted(tr.output_fixed_swapped) == sorted(tr.reverse_fixed));
  CHECK(duality_inverse(tr.output, f, p, params) == tr.input);
  CHECK(duality_inverse(tr, f) == tr.input);

  CHECK((tr.output == tr.input) == tr.reverse_fixed.empty());
  return tr;
}

}  // namespace

TEST_CASE("three-member witness maps to itself") {
  SetFamily f(5, {make(5, {1, 3}), make(5, {2, 4}), make(5, {3, 5})});
  ConditionParams params(3, 4, 1);
  REQUIRE(is_conditionally_intersecting(f, params));

  std::vector<ElementSet> a = {make(5, {1, 3}), make(5, {2, 4}), make(5, {3, 5})};
  DualityTrace tr = checked_forward(a, f, ShiftPair(1, 2), params);

  CHECK(tr.partition.moved == std::vector<ElementSet>{make(5, {2, 4})});
  CHECK(tr.partition.with_i == std::vector<ElementSet>{make(5, {1, 3})});
  CHECK(tr.partition.avoiding_both == std::vector<ElementSet>{make(5, {3, 5})});
  CHECK(tr.reverse_fixed.empty());
  CHECK(tr.reverse_fixed_swapped.empty());
  CHECK(tr.output == tr.input);
  CHECK(tr.output_fixed.empty());

  // the output is itself unstable for the reversed pair, visible to the
  // whole-family scan as well
  std::optional<UnstableWitness> w = is_ij_unstable(f, ShiftPair(2, 1), params);
  REQUIRE(w.has_value());
  CHECK(sorted(w->subfamily) == tr.output);

  // a fixed point feeds straight back through the inverse
  CHECK(duality_inverse(a, f, ShiftPair(1, 2), params) == tr.input);
}

TEST_CASE("four-member witness is rearranged by its blocked swap") {
  int n = 6;
  ElementSet m23 = make(n, {2, 3}), m135 = make(n, {1, 3, 5}),
             m146 = make(n, {1, 4, 6}), m246 = make(n, {2, 4, 6}),
             m56 = make(n, {5, 6});
  SetFamily f(n, {m23, m135, m146, m246, m56});
  ConditionParams params(4, 5, 1);
  REQUIRE(is_conditionally_intersecting(f, params));

  std::vector<ElementSet> a = {m23, m135, m146, m56};
  DualityTrace tr = checked_forward(a, f, ShiftPair(1, 2), params);

  CHECK(sorted(tr.partition.moved) == std::vector<ElementSet>{m23});
  CHECK(sorted(tr.partition.with_i) == sorted({m135, m146}));
  CHECK(sorted(tr.partition.avoiding_both) == std::vector<ElementSet>{m56});
  CHECK(tr.reverse_fixed == std::vector<ElementSet>{m146});
  CHECK(tr.reverse_fixed_swapped == std::vector<ElementSet>{m246});
  CHECK(tr.output == sorted({m23, m135, m246, m56}));
  CHECK(tr.output != tr.input);
  CHECK(tr.output_fixed == std::vector<ElementSet>{m246});
  CHECK(tr.output_fixed_swapped == std::vector<ElementSet>{m146});

  // running the map from the other side swaps the roles of the two lists
  DualityTrace back = checked_forward(tr.output, f, ShiftPair(2, 1), params);
  CHECK(back.reverse_fixed == std::vector<ElementSet>{m246});
  CHECK(back.output == tr.input);
}

TEST_CASE("hypothesis failures refuse") {
  SetFamily f(5, {make(5, {1, 3}), make(5, {2, 4}), make(5, {3, 5})});
  ConditionParams params(3, 4, 1);
  std::vector<ElementSet> a = {make(5, {1, 3}), make(5, {2, 4}), make(5, {3, 5})};

  // wrong subfamily size for d
  std::vector<ElementSet> two = {make(5, {1, 3}), make(5, {2, 4})};
  CHECK_THROWS_AS(duality_forward(two, f, ShiftPair(1, 2), params), ArgumentError);
  // repeated member
  std::vector<ElementSet> dup = {make(5, {1, 3}), make(5, {1, 3}), make(5, {2, 4})};
  CHECK_THROWS_AS(duality_forward(dup, f, ShiftPair(1, 2), params), ArgumentError);
  // member outside the family
  std::vector<ElementSet> outside = {make(5, {1, 3}), make(5, {2, 4}), make(5, {2, 5})};
  CHECK_THROWS_AS(duality_forward(outside, f, ShiftPair(1, 2), params), ArgumentError);
  // not a witness for this pair: the union does not drop under (1,3)
  CHECK_THROWS_AS(duality_forward(a, f, ShiftPair(1, 3), params), ArgumentError);

  // a two-member witness exists for t = 2 but never carries an
  // avoiding-both member, so the map refuses it
  SetFamily g(4, {make(4, {1, 3}), make(4, {2, 4})});
  ConditionParams params2(2, 3, 2);
  std::vector<ElementSet> b = {make(4, {1, 3}), make(4, {2, 4})};
  REQUIRE(check_unstable_characterization(b, g, ShiftPair(1, 2), params2));
  CHECK_THROWS_AS(duality_forward(b, g, ShiftPair(1, 2), params2), CapabilityError);
  // same refusal through the inverse direction: the pair reverses first
  REQUIRE(check_unstable_characterization(b, g, ShiftPair(2, 1), params2));
  CHECK_THROWS_AS(duality_inverse(b, g, ShiftPair(1, 2), params2), CapabilityError);
}

TEST_CASE("exhaustive scan of pair pools round-trips every witness") {
  // every subfamily of the full 2-uniform levels on 4 and 5 points
  int witnesses = 0;
  for (int n = 4; n <= 5; ++n) {
    std::vector<ElementSet> pool = level_sets(n, 2);
    for (unsigned mask = 1; mask < (1u << pool.size()); ++mask) {
      if (std::popcount(mask) < 3) continue;
      std::vector<ElementSet> members;
      for (std::size_t b = 0; b < pool.size(); ++b)
        if (mask >> b & 1u) members.push_back(pool[b]);
      SetFamily f(n, members);
      for (int s = 3; s <= n; ++s) {
        ConditionParams params(3, s, 1);
        if (!is_conditionally_intersecting(f, params)) continue;
        for (int i = 1; i <= n; ++i)
          for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            ShiftPair p(i, j);
            for (std::size_t x = 0; x < members.size(); ++x)
              for (std::size_t y = x + 1; y < members.size(); ++y)
                for (std::size_t z = y + 1; z < members.size(); ++z) {
                  std::vector<ElementSet> sub = {members[x], members[y], members[z]};
                  if (!check_unstable_characterization(sub, f, p, params)) continue;
                  // with t = 1 a witness always has an avoiding-both
                  // member, so the map is total here
                  UnstablePartition part = partition_unstable_family(sub, f, p);
                  REQUIRE(!part.avoiding_both.empty());
                  DualityTrace tr = checked_forward(sub, f, p, params);
                  // three singleton classes leave the map no room to move
                  CHECK(tr.output == tr.input);
                  ++witnesses;
                }
          }
      }
    }
  }
  CHECK(witnesses > 100);
}

TEST_CASE("random larger families keep every identity") {
  // mixed 2- and 3-uniform pools on six points, sampled subfamilies,
  // four-member witnesses: the blocked class is nonempty often enough to
  // exercise genuine rearrangement
  std::vector<ElementSet> pool = level_sets(6, 2);
  for (const ElementSet& m : level_sets(6, 3)) pool.push_back(m);
  std::mt19937_64 rng(20260814);

  int witnesses = 0, rearranged = 0;
  for (int round = 0; round < 800; ++round) {
    std::vector<ElementSet> members;
    for (const ElementSet& m : pool)
      if (rng() % 4 == 0) members.push_back(m);
    if (members.size() < 4 || members.size() > 10) continue;
    std::sort(members.begin(), members.end());
    SetFamily f(6, members);
    for (int s = 4; s <= 5; ++s) {
      ConditionParams params(4, s, 1);
      if (!is_conditionally_intersecting(f, params)) continue;
      for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j) {
          if (i == j) continue;
          ShiftPair p(i, j);
          for (std::size_t w = 0; w < members.size(); ++w)
            for (std::size_t x = w + 1; x < members.size(); ++x) {
              if (union_size(std::vector<ElementSet>{members[w], members[x]}) > s + 1)
                continue;
              for (std::size_t y = x + 1; y < members.size(); ++y)
                for (std::size_t z = y + 1; z < members.size(); ++z) {
                  std::vector<ElementSet> sub = {members[w], members[x],
                                                 members[y], members[z]};
                  if (!check_unstable_characterization(sub, f, p, params)) continue;
                  DualityTrace tr = checked_forward(sub, f, p, params);
                  ++witnesses;
                  if (!tr.reverse_fixed.empty()) ++rearranged;
                }
            }
        }
    }
  }
  CHECK(witnesses > 50);
  CHECK(rearranged > 0);
}
