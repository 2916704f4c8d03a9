#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kplex {

using VertexId = std::uint32_t;
using OriginalId = std::uint64_t;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Immutable undirected simple graph in CSR form. Internal IDs are dense
/// [0, n); id_map translates them back to the IDs of the input file.
class Graph {
 public:
  Graph() = default;

  /// Builds from internal-ID edges; self-loops and duplicates are dropped.
  /// An empty id_map means the identity mapping.
  static Graph from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges,
                          std::vector<OriginalId> id_map = {});

  std::size_t n() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t m() const { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(VertexId u, VertexId v) const;

  OriginalId original_id(VertexId v) const { return id_map_[v]; }
  std::span<const OriginalId> id_map() const { return id_map_; }

  /// Each undirected edge once, as (u, v) with u < v, in ascending order.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<OriginalId> id_map_;
};

/// Peeling order η; rank is its inverse.
struct DegeneracyOrder {
  std::vector<VertexId> order;
  std::vector<std::size_t> rank;
  std::size_t degeneracy = 0;

  /// Wraps an arbitrary vertex permutation. `degeneracy` is set to the largest
  /// number of later neighbours, which equals D only for a true peeling order.
  static DegeneracyOrder from_order(const Graph& g, std::vector<VertexId> order);
};

/// Reads a whitespace-separated edge list. Lines starting with '#' or '%'
/// are comments; blank lines are ignored. Vertices get internal IDs in
/// first-appearance order.
Graph parse_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

/// Writes one "u v" line per edge using original IDs; an isolated vertex
/// is written as a self-loop line so that it survives a re-parse.
void write_edge_list(std::ostream& out, const Graph& g);

/// Maximal induced subgraph with minimum degree >= c, re-compacted.
Graph reduce_to_core(const Graph& g, std::size_t c);

/// Minimum-degree peeling; ties go to the smaller internal ID.
DegeneracyOrder degeneracy_order(const Graph& g);

}  // namespace kplex
