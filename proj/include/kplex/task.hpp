#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "kplex/bitset.hpp"
#include "kplex/seed.hpp"

namespace kplex {

using Clock = std::chrono::steady_clock;

/// A seed subgraph with its pair table; shared read-only by every task of the
/// group. `pairs` is empty when vertex-pair pruning is off.
struct SeedContext {
  SeedSubgraph sg;
  std::optional<PairMatrix> pairs;
  const PairMatrix* pair_matrix() const { return pairs ? &*pairs : nullptr; }
};

/// The <P, C, X> triple over one seed subgraph plus its degree counters.
///
/// Counters are kept for every local vertex: dp[v] = |N(v) ∩ P| and
/// dpc[v] = |N(v) ∩ (P ∪ C)|. Outer vertices (those preceding the seed) only
/// ever sit in X and need dp_outer.
struct SearchState {
  std::vector<std::uint32_t> p;  // insertion order
  Bitset p_mask;
  Bitset c;
  Bitset x;
  std::vector<std::uint32_t> x_outer;  // indices into SeedSubgraph::excluded_before
  std::vector<std::uint32_t> dp;
  std::vector<std::uint32_t> dpc;
  std::vector<std::uint32_t> dp_outer;
  // Vertices added to P since the last refinement; their pair-table rows
  // still have to be applied to C and X.
  std::vector<std::uint32_t> fresh;

  /// Builds a state with counters computed from scratch.
  static SearchState make(const SeedSubgraph& sg, std::span<const std::uint32_t> p, const Bitset& c,
                          const Bitset& x, std::vector<std::uint32_t> x_outer);

  /// Number of members of P that v is not adjacent to; for v in P this
  /// includes v itself.
  std::uint32_t non_neighbors_in_p(std::uint32_t v) const {
    return static_cast<std::uint32_t>(p.size()) - dp[v];
  }

  bool x_empty() const { return x_outer.empty() && x.none(); }

  /// True when every counter equals its from-scratch value.
  bool counters_consistent(const SeedSubgraph& sg) const;
};

/// A self-contained unit of work: a search state plus a handle on its group.
struct Task {
  std::shared_ptr<const SeedContext> ctx;
  SearchState state;
  Clock::time_point created_at = Clock::now();
};

struct TaskGenConfig {
  int k = 1;
  int q = 1;
  bool use_initial_bound = true;
  bool use_pair_prune = true;
};

/// Size bound for a sub-task rooted at P_S = {seed} ∪ S with candidates
/// C_S: min(|P_S| + |K|, min_{v in P_S} deg(v) + k), where K is the support
/// greedy run with the seed as pivot and zero seed support.
int initial_bound(const SeedSubgraph& sg, std::span<const std::uint32_t> p_s, const Bitset& c_s, int k);

/// Enumerates S ⊆ two-hop block with |S| <= k-1 in set-enumeration order and
/// hands every surviving sub-task to `emit`. Returns the number emitted.
std::size_t generate_tasks(const std::shared_ptr<const SeedContext>& ctx, const TaskGenConfig& cfg,
                           const std::function<void(Task&&)>& emit);

}  // namespace kplex
