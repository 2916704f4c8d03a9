#pragma once

#include <span>
#include <vector>

#include "kplex/graph.hpp"

namespace kplex {

/// Canonical result list: each set sorted ascending, the list sorted
/// lexicographically, no duplicates.
using PlexSet = std::vector<std::vector<OriginalId>>;

/// Sorts every set and the list. Duplicates are kept so that callers can
/// detect them by comparing against a deduplicated copy.
void canonicalize(PlexSet& plexes);

/// Brute-force scan of all 2^n subsets; results use original IDs.
/// Throws std::length_error when n > 25.
PlexSet enumerate_naive(const Graph& g, int k, int q);

inline constexpr std::size_t kNaiveMaxVertices = 25;

/// Every member is adjacent to at least |members| - k of them.
bool is_kplex(const Graph& g, std::span<const VertexId> members, int k);

/// A k-plex that no single outside vertex extends. By heredity this is the
/// same as set-inclusion maximality.
bool is_maximal_kplex(const Graph& g, std::span<const VertexId> members, int k);

/// The induced subgraph is connected with diameter at most two.
bool has_diameter_at_most_two(const Graph& g, std::span<const VertexId> members);

}  // namespace kplex
