#include "kplex/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kplex {

void canonicalize(PlexSet& plexes) {
  for (auto& p : plexes) std::sort(p.begin(), p.end());
  std::sort(plexes.begin(), plexes.end());
}

namespace {

bool mask_is_kplex(std::span<const std::uint32_t> adj, std::uint32_t mask, int k) {
  const int size = std::popcount(mask);
  for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
    const int u = std::countr_zero(rest);
    if (std::popcount(adj[static_cast<std::size_t>(u)] & mask) < size - k) return false;
  }
  return true;
}

}  // namespace

PlexSet enumerate_naive(const Graph& g, int k, int q) {
  const std::size_t n = g.n();
  if (n > kNaiveMaxVertices)
    throw std::length_error("brute-force oracle supports at most " + std::to_string(kNaiveMaxVertices) +
                            " vertices, got " + std::to_string(n));
  std::vector<std::uint32_t> adj(n, 0);
  for (VertexId v = 0; v < n; ++v)
    for (VertexId w : g.neighbors(v)) adj[v] |= std::uint32_t{1} << w;

  PlexSet out;
  const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  for (std::uint64_t m = 1; m <= full; ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    if (std::popcount(mask) < q || !mask_is_kplex(adj, mask, k)) continue;
    bool maximal = true;
    for (std::uint32_t rest = full & ~mask; rest && maximal; rest &= rest - 1)
      if (mask_is_kplex(adj, mask | (rest & -rest), k)) maximal = false;
    if (!maximal) continue;
    std::vector<OriginalId> set;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1)
      set.push_back(g.original_id(static_cast<VertexId>(std::countr_zero(rest))));
    out.push_back(std::move(set));
  }
  canonicalize(out);
  return out;
}

bool is_kplex(const Graph& g, std::span<const VertexId> members, int k) {
  std::vector<VertexId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  const long size = static_cast<long>(sorted.size());
  for (VertexId u : sorted) {
    long inside = 0;
    for (VertexId w : g.neighbors(u)) inside += std::binary_search(sorted.begin(), sorted.end(), w) ? 1 : 0;
    if (inside < size - k) return false;
  }
  return true;
}

bool is_maximal_kplex(const Graph& g, std::span<const VertexId> members, int k) {
  if (!is_kplex(g, members, k)) return false;
  std::vector<char> in(g.n(), 0);
  for (VertexId u : members) in[u] = 1;
  std::vector<VertexId> extended(members.begin(), members.end());
  extended.push_back(0);
  for (VertexId v = 0; v < g.n(); ++v) {
    if (in[v]) continue;
    extended.back() = v;
    if (is_kplex(g, extended, k)) return false;
  }
  return true;
}

bool has_diameter_at_most_two(const Graph& g, std::span<const VertexId> members) {
  std::vector<char> in(g.n(), 0);
  for (VertexId u : members) in[u] = 1;
  std::vector<char> near(g.n(), 0);
  for (VertexId u : members) {
    std::fill(near.begin(), near.end(), 0);
    near[u] = 1;
    for (VertexId w : g.neighbors(u)) {
      if (!in[w]) continue;
      near[w] = 1;
      for (VertexId x : g.neighbors(w))
        if (in[x]) near[x] = 1;
    }
    for (VertexId v : members)
      if (!near[v]) return false;
  }
  return true;
}

}  // namespace kplex
