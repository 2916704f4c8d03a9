#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "kplex/task.hpp"

namespace kplex {

enum class Variant {
  ours,    // pivot re-picking with upper-bound pruning
  ours_p,  // branch on the non-neighbours of a pivot that lies in P
  basic,   // as `ours`, without initial-task bounding and pair pruning
};

struct BranchConfig {
  int k = 1;
  int q = 1;
  Variant variant = Variant::ours;
  bool use_ub = true;
  bool use_pair_prune = true;
  /// Per-task time budget; once exceeded, pending sub-branches are handed to
  /// the respawn callback instead of being explored in place.
  std::optional<std::chrono::nanoseconds> deadline;

  bool pair_prune_active() const { return use_pair_prune && variant != Variant::basic; }
  bool initial_bound_active() const { return use_ub && variant != Variant::basic; }
};

/// Throws std::invalid_argument unless k >= 1 and q >= 2k - 1.
void validate(const BranchConfig& cfg);

struct PivotChoice {
  enum class Origin { from_p, from_c };
  std::uint32_t vertex = 0;
  Origin origin = Origin::from_c;
};

/// Lines 2-3 of the search: keeps v in C (and in X) only if P ∪ {v} is a
/// k-plex and the pair table allows v next to every vertex in state.fresh.
/// Vertices leaving C update dpc; their IDs are appended to `removed` so the
/// caller can restore them. Clears state.fresh.
void refine_sets(const SeedSubgraph& sg, const PairMatrix* pairs, int k, SearchState& state,
                 std::vector<std::uint32_t>* removed = nullptr);

/// Minimum dpc over P ∪ C, then maximum non-neighbour count in P, then
/// members of P before members of C, then smallest local ID.
PivotChoice select_pivot(const SearchState& state);

/// Same rules restricted to the non-neighbours of `anchor` inside C.
std::optional<std::uint32_t> repick_pivot(const SeedSubgraph& sg, const SearchState& state, std::uint32_t anchor);

/// Size bound for k-plexes grown from P ∪ {pivot}:
/// min(|P| + sup(pivot) + |K|, deg(degree_vertex) + k), where K is the greedy
/// support-limited subset of the pivot's neighbours in C.
int compute_ub(const SeedSubgraph& sg, const SearchState& state, std::uint32_t pivot, std::uint32_t degree_vertex,
               int k);

/// True iff no member of X extends the k-plex `plex` (a subset of P ∪ C given
/// as a mask of `plex_size` vertices). Local X members whose pair-table row
/// against `filter_vertex` is false are skipped.
bool check_maximal(const SeedSubgraph& sg, const PairMatrix* pairs, const SearchState& state, const Bitset& plex,
                   std::size_t plex_size, std::optional<std::uint32_t> filter_vertex, int k);

struct BranchHooks {
  /// Receives each result as global (graph-internal) vertex IDs.
  std::function<void(std::span<const VertexId>)> emit;
  std::function<void(Task&&)> respawn;
};

/// Runs the branch-and-bound search for one task.
void branch(Task& task, const BranchConfig& cfg, const BranchHooks& hooks);

}  // namespace kplex
