#pragma once

// Graph generators and engine shortcuts shared by the tests.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "kplex/graph.hpp"
#include "kplex/oracle.hpp"
#include "kplex/scheduler.hpp"

namespace kplex::testing {

using Edge = std::pair<VertexId, VertexId>;

inline Graph make_graph(std::size_t n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); }

inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

inline Graph complete(std::size_t n) { return erdos_renyi(n, 1.0, 0); }

inline Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v < n; ++v) edges.emplace_back(v, static_cast<VertexId>((v + 1) % n));
  return Graph::from_edges(n, edges);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

/// Sparse background with a few planted dense blocks whose edges are each
/// dropped with probability `drop`; large enough to exercise task splitting.
inline Graph planted(std::size_t n, double background, std::size_t blocks, std::size_t block_size, double drop,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution bg(background);
  std::bernoulli_distribution keep(1.0 - drop);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (bg(rng)) edges.emplace_back(u, v);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  for (std::size_t b = 0; b < blocks; ++b) {
    std::vector<VertexId> members;
    while (members.size() < block_size) {
      VertexId v = pick(rng);
      if (std::find(members.begin(), members.end(), v) == members.end()) members.push_back(v);
    }
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (keep(rng)) edges.emplace_back(members[i], members[j]);
  }
  return Graph::from_edges(n, edges);
}

/// The 7-vertex toy graph of the worked examples, with v_i stored as i-1.
/// Edges are pinned by the examples' stated adjacencies, non-adjacencies and
/// d(v3) = 2.
inline Graph toy_graph() {
  return Graph::from_edges(7, std::vector<Edge>{{0, 1}, {0, 4}, {0, 6}, {4, 6}, {1, 2}, {1, 4},
                                                {2, 3}, {1, 3}, {4, 5}, {5, 6}, {3, 5}},
                           {1, 2, 3, 4, 5, 6, 7});
}

struct EngineOptions {
  Variant variant = Variant::ours;
  bool use_ub = true;
  bool use_pair_prune = true;
  std::size_t threads = 1;
  std::optional<std::chrono::nanoseconds> timeout;
};

inline RunConfig make_config(int k, int q, const EngineOptions& o = {}) {
  RunConfig cfg;
  cfg.threads = o.threads;
  cfg.timeout = o.timeout;
  cfg.branch.k = k;
  cfg.branch.q = q;
  cfg.branch.variant = o.variant;
  cfg.branch.use_ub = o.use_ub;
  cfg.branch.use_pair_prune = o.use_pair_prune;
  return cfg;
}

inline PlexSet engine(const Graph& g, int k, int q, const EngineOptions& o = {}, RunStats* stats = nullptr) {
  return enumerate_plexes(g, make_config(k, q, o), stats);
}

inline bool has_duplicates(const PlexSet& canonical) {
  return std::adjacent_find(canonical.begin(), canonical.end()) != canonical.end();
}

/// Every combination of the engine's switches, minus threads and timeouts.
inline std::vector<EngineOptions> all_switches() {
  std::vector<EngineOptions> out;
  for (Variant v : {Variant::ours, Variant::ours_p, Variant::basic})
    for (bool ub : {true, false})
      for (bool pair : {true, false}) out.push_back({v, ub, pair, 1, std::nullopt});
  return out;
}

}  // namespace kplex::testing
