#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setlab/family.hpp"
#include "setlab/predicates.hpp"

namespace setlab {

inline constexpr int kDefaultVertexCap = 200;
inline constexpr std::size_t kDefaultCollectCap = 10000;

/// Candidate members plus the d-tuples among them that violate the
/// condition: union size <= s while intersection size <= t-1. Families
/// avoiding every conflict are exactly the condition-respecting ones.
struct ConflictStructure {
  int ground_size = 0;
  ConditionParams params{2, 0, 1};
  std::vector<ElementSet> vertices;          // deduplicated, sorted
  std::vector<std::vector<int>> conflicts;   // ascending vertex indices, sorted
};

/// Enumerates all violating d-tuples over the pool, pruning on partial
/// unions. Refuses pools larger than vertex_cap.
ConflictStructure build_conflicts(int n, const std::vector<ElementSet>& vertex_pool,
                                  const ConditionParams& params,
                                  int vertex_cap = kDefaultVertexCap);

/// Side constraints a solution family must satisfy on top of the
/// intersection condition.
struct SearchConstraints {
  bool require_stable = false;          // fixed by every lower-element shift
  bool require_nonintersecting = false; // must contain two disjoint members
  std::optional<int> max_member_size;   // keep only members of size <= u
};

struct SearchOptions {
  int threads = 0;  // 0: use SETLAB_THREADS if set, else 1
  std::string checkpoint_path;        // empty: no checkpointing
  std::uint64_t checkpoint_every_nodes = 50000;
  std::size_t collect_cap = kDefaultCollectCap;  // max extremal classes kept
  int canonical_limit = kDefaultCanonicalLimit;  // isomorphism dedup limit
  std::uint64_t node_budget = 0;      // 0: unlimited; else refuse past this
  std::vector<SetFamily> seed_families;  // candidate lower bounds, validated
};

/// Outcome of one exact search. `extremal` holds one representative per
/// isomorphism class of optimum solutions (canonical forms when the ground
/// set is within the canonicalization limit and the canonical relabeling
/// itself satisfies the constraints; otherwise the least raw solution).
struct SearchReport {
  std::string label;                 // instance name, e.g. "mubayi n=6 k=3 d=3"
  int ground_size = 0;
  std::size_t pool_size = 0;
  ConditionParams params{2, 0, 1};
  SearchConstraints constraints;
  int optimum = -1;                  // -1: no feasible family (empty pool)
  std::vector<SetFamily> extremal;   // sorted, duplicate-free
  bool truncated = false;            // extremal list hit collect_cap
  std::uint64_t nodes = 0;
  std::int64_t wall_ms = 0;
  std::string verdict;               // empty for raw searches
};

/// Exact maximum family size subject to the conflicts and constraints,
/// with every optimum solution collected up to isomorphism. Deterministic
/// apart from wall_ms, whatever the thread count.
SearchReport max_family(const ConflictStructure& structure,
                        const SearchConstraints& constraints = {},
                        const SearchOptions& options = {});

/// Stable JSON rendering with fields exactly
/// params, optimum, extremal, nodes, wall_ms, verdict (in that order).
std::string report_to_json(const SearchReport& report);

/// One line per report: label, optimum, node count, verdict.
std::string report_to_text(const SearchReport& report);

/// A named bound check ("mubayi", "stable-mubayi", "frankl", "prop42",
/// "conj41", "thm62", "thm71", "thm74") over a range of ground sizes.
struct VerifyRequest {
  std::string theorem;
  std::vector<int> ns;
  int k = 0;                // uniform member size (mubayi family of checks)
  int d = 0;                // cluster arity where the theorem leaves it free
  int s = 0;                // union ceiling (thm62/thm71/thm74)
  int u = 0;                // member-size ceiling (thm71/thm74)
  int vertex_cap = kDefaultVertexCap;
  SearchOptions options;
};

/// Runs the named check per ground size and fills verdicts:
/// PASS (optimum and extremal match the stated bound and equality case),
/// FAIL (a proved statement mismatches), OPEN (conjecture data recorded).
/// Out-of-regime parameters raise ArgumentError naming the hypothesis.
std::vector<SearchReport> verify_theorem(const VerifyRequest& request);

}  // namespace setlab
