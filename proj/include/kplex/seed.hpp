#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "kplex/bitset.hpp"
#include "kplex/graph.hpp"

namespace kplex {

enum class Hop : std::uint8_t { seed, one_hop, two_hop };

/// Dense view of the two-hop neighbourhood of one seed vertex, restricted to
/// vertices after the seed in η.
///
/// Local IDs are laid out as [seed | one-hop | two-hop]: the seed is 0, the
/// one-hop vertices (the initial candidate set C_S) occupy [1, two_hop_begin),
/// and two-hop vertices occupy [two_hop_begin, size()). Within each block the
/// order follows η.
///
/// Vertices that precede the seed in η but may still extend a result
/// ("outer" vertices) have no rows in `adj`; their adjacency into the local
/// block is kept separately in `outer_adj` (and transposed in `outer_adj_t`).
struct SeedSubgraph {
  VertexId seed_global = 0;
  std::vector<VertexId> verts;  // local -> global
  std::vector<Hop> hop;
  BitMatrix adj;
  std::vector<std::uint32_t> deg;  // degree inside the seed subgraph, frozen
  std::size_t two_hop_begin = 1;

  std::vector<VertexId> excluded_before;  // outer vertices, global IDs
  BitMatrix outer_adj;                    // outer index x local
  BitMatrix outer_adj_t;                  // local x outer index

  std::size_t size() const { return verts.size(); }
  std::size_t one_hop_count() const { return two_hop_begin - 1; }
  std::size_t two_hop_count() const { return verts.size() - two_hop_begin; }
  std::size_t outer_count() const { return excluded_before.size(); }

  /// Bit mask of the one-hop block.
  Bitset one_hop_mask() const;
};

/// Symmetric co-occurrence table: t(u, v) == false certifies that u and v
/// never appear together in a k-plex of size >= q grown from this seed.
struct PairMatrix {
  BitMatrix t;
  bool can_cooccur(std::size_t u, std::size_t v) const { return t.test(u, v); }
};

/// Common-neighbour thresholds for vertex-pair pruning. A pair is pruned when
/// its common-neighbour count inside the candidate block is strictly below the
/// returned value; a value <= 0 never prunes.
namespace pair_rule {
/// Both vertices two hops from the seed.
int two_hop(int k, int q, bool adjacent);
/// One two-hop vertex and one one-hop vertex.
int mixed(int k, int q, bool adjacent);
/// Both vertices one hop from the seed.
int one_hop(int k, int q, bool adjacent);
}  // namespace pair_rule

/// Reusable scratch space for building seed subgraphs over one graph. Not
/// thread-safe; keep one per worker.
class SeedBuilder {
 public:
  SeedBuilder(const Graph& g, const DegeneracyOrder& ord);

  /// Seed subgraph of the vertex at position `pos` of η, after second-order
  /// pruning to a fixpoint. Returns nullopt when fewer than q vertices remain
  /// or pos is past the last usable seed.
  std::optional<SeedSubgraph> build(std::size_t pos, int k, int q);

 private:
  const Graph& g_;
  const DegeneracyOrder& ord_;
  std::vector<std::int32_t> local_;   // global -> index in the current block, -1 if absent
  std::vector<std::uint32_t> count_;  // common-neighbour counts with the seed
  std::vector<char> seed_adj_;        // adjacency to the current seed
  std::vector<VertexId> touched_;
};

std::optional<SeedSubgraph> build_seed_subgraph(const Graph& g, const DegeneracyOrder& ord, std::size_t pos,
                                                int k, int q);

PairMatrix build_pair_matrix(const SeedSubgraph& sg, int k, int q);

}  // namespace kplex
