#include "kplex/seed.hpp"

#include <algorithm>

namespace kplex {

Bitset SeedSubgraph::one_hop_mask() const {
  Bitset mask(size());
  for (std::size_t u = 1; u < two_hop_begin; ++u) mask.set(u);
  return mask;
}

namespace pair_rule {

int two_hop(int k, int q, bool adjacent) {
  return adjacent ? q - k - 2 * std::max(k - 2, 0) : q - k - 2 * std::max(k - 3, 0);
}

// The adjacent case uses q - 2k - max{k-2,0}: counting |P+| <= k+1,
// sup(u1) <= k-2 and sup(u2) <= k-1 gives exactly this bound.
int mixed(int k, int q, bool adjacent) {
  return adjacent ? q - 2 * k - std::max(k - 2, 0) : q - k - std::max(k - 2, 0) - std::max(k - 2, 1);
}

int one_hop(int k, int q, bool adjacent) {
  return adjacent ? q - 3 * k : q - k - 2 * std::max(k - 1, 1);
}

}  // namespace pair_rule

SeedBuilder::SeedBuilder(const Graph& g, const DegeneracyOrder& ord)
    : g_(g), ord_(ord), local_(g.n(), -1), count_(g.n(), 0), seed_adj_(g.n(), 0) {}

std::optional<SeedSubgraph> SeedBuilder::build(std::size_t pos, int k, int q) {
  const std::size_t n = g_.n();
  if (q < 1 || n < static_cast<std::size_t>(q) || pos > n - static_cast<std::size_t>(q)) return std::nullopt;

  const VertexId seed = ord_.order[pos];
  const auto& rank = ord_.rank;
  const int one_hop_min = q - 2 * k;      // common neighbours needed by a one-hop vertex
  const int two_hop_min = q - 2 * k + 2;  // ... and by a two-hop vertex

  for (VertexId u : g_.neighbors(seed)) seed_adj_[u] = 1;

  // One-hop block: later neighbours, peeled until each keeps enough
  // common neighbours with the seed inside the block.
  std::vector<VertexId> one;
  for (VertexId u : g_.neighbors(seed))
    if (rank[u] > pos) one.push_back(u);
  for (std::size_t i = 0; i < one.size(); ++i) local_[one[i]] = static_cast<std::int32_t>(i);
  std::vector<std::uint32_t> inner(one.size(), 0);
  for (std::size_t i = 0; i < one.size(); ++i)
    for (VertexId w : g_.neighbors(one[i]))
      if (local_[w] >= 0) ++inner[i];
  std::vector<char> dropped(one.size(), 0);
  if (one_hop_min > 0) {
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < one.size(); ++i)
      if (static_cast<int>(inner[i]) < one_hop_min) {
        dropped[i] = 1;
        stack.push_back(i);
      }
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (VertexId w : g_.neighbors(one[i])) {
        std::int32_t j = local_[w];
        if (j < 0 || dropped[j]) continue;
        if (static_cast<int>(--inner[j]) < one_hop_min) {
          dropped[j] = 1;
          stack.push_back(static_cast<std::size_t>(j));
        }
      }
    }
  }
  for (VertexId u : one) local_[u] = -1;
  std::vector<VertexId> cand;
  for (std::size_t i = 0; i < one.size(); ++i)
    if (!dropped[i]) cand.push_back(one[i]);
  std::sort(cand.begin(), cand.end(), [&](VertexId a, VertexId b) { return rank[a] < rank[b]; });
  for (VertexId u : cand) local_[u] = 0;  // membership flag for the count pass

  // Count common neighbours (inside the surviving one-hop block) for every
  // vertex reachable through it. Later vertices at distance two whose only
  // paths run through earlier vertices get a count of zero and are dropped,
  // as are those the second-order bound rules out.
  for (VertexId u : cand)
    for (VertexId w : g_.neighbors(u)) {
      if (w == seed || local_[w] == 0) continue;
      if (count_[w]++ == 0) touched_.push_back(w);
    }

  std::vector<VertexId> two;
  std::vector<VertexId> outer;
  for (VertexId w : touched_) {
    const int c = static_cast<int>(count_[w]);
    if (seed_adj_[w]) {
      if (rank[w] < pos && c >= one_hop_min && one_hop_min > 0) outer.push_back(w);
    } else if (c >= two_hop_min) {
      (rank[w] > pos ? two : outer).push_back(w);
    }
  }
  if (one_hop_min <= 0)
    for (VertexId w : g_.neighbors(seed))
      if (rank[w] < pos) outer.push_back(w);

  for (VertexId w : touched_) count_[w] = 0;
  touched_.clear();
  for (VertexId u : cand) local_[u] = -1;
  for (VertexId u : g_.neighbors(seed)) seed_adj_[u] = 0;

  if (1 + cand.size() + two.size() < static_cast<std::size_t>(q)) return std::nullopt;

  auto by_rank = [&](VertexId a, VertexId b) { return rank[a] < rank[b]; };
  std::sort(two.begin(), two.end(), by_rank);
  std::sort(outer.begin(), outer.end(), by_rank);

  SeedSubgraph sg;
  sg.seed_global = seed;
  sg.verts.reserve(1 + cand.size() + two.size());
  sg.verts.push_back(seed);
  sg.verts.insert(sg.verts.end(), cand.begin(), cand.end());
  sg.two_hop_begin = sg.verts.size();
  sg.verts.insert(sg.verts.end(), two.begin(), two.end());
  const std::size_t size = sg.verts.size();
  sg.hop.assign(size, Hop::two_hop);
  sg.hop[0] = Hop::seed;
  for (std::size_t u = 1; u < sg.two_hop_begin; ++u) sg.hop[u] = Hop::one_hop;

  for (std::size_t i = 0; i < size; ++i) local_[sg.verts[i]] = static_cast<std::int32_t>(i);
  sg.adj = BitMatrix(size, size);
  sg.deg.assign(size, 0);
  for (std::size_t i = 0; i < size; ++i)
    for (VertexId w : g_.neighbors(sg.verts[i]))
      if (std::int32_t j = local_[w]; j >= 0) sg.adj.set(i, static_cast<std::size_t>(j));
  for (std::size_t i = 0; i < size; ++i) sg.deg[i] = static_cast<std::uint32_t>(sg.adj.row_count(i));

  sg.excluded_before = std::move(outer);
  const std::size_t e = sg.excluded_before.size();
  sg.outer_adj = BitMatrix(e, size);
  sg.outer_adj_t = BitMatrix(size, e);
  for (std::size_t x = 0; x < e; ++x)
    for (VertexId w : g_.neighbors(sg.excluded_before[x]))
      if (std::int32_t j = local_[w]; j >= 0) {
        sg.outer_adj.set(x, static_cast<std::size_t>(j));
        sg.outer_adj_t.set(static_cast<std::size_t>(j), x);
      }
  for (VertexId u : sg.verts) local_[u] = -1;
  return sg;
}

std::optional<SeedSubgraph> build_seed_subgraph(const Graph& g, const DegeneracyOrder& ord, std::size_t pos,
                                                int k, int q) {
  SeedBuilder builder(g, ord);
  return builder.build(pos, k, q);
}

PairMatrix build_pair_matrix(const SeedSubgraph& sg, int k, int q) {
  const std::size_t size = sg.size();
  PairMatrix pm{BitMatrix(size, size)};
  for (std::size_t u = 0; u < size; ++u) {
    auto row = pm.t.row(u);
    std::fill(row.begin(), row.end(), ~Word{0});
    if (size % kWordBits) row.back() &= (Word{1} << (size % kWordBits)) - 1;
  }

  // Only the one-hop block matters for common-neighbour counts, and it sits
  // at the front of every row.
  const Bitset cand = sg.one_hop_mask();
  const std::size_t prefix = words_for(sg.two_hop_begin);
  const auto cand_words = cand.words().subspan(0, prefix);

  for (std::size_t u1 = 1; u1 < size; ++u1) {
    const auto r1 = sg.adj.row(u1).subspan(0, prefix);
    for (std::size_t u2 = u1 + 1; u2 < size; ++u2) {
      const bool adjacent = sg.adj.test(u1, u2);
      const bool one1 = sg.hop[u1] == Hop::one_hop;
      const bool one2 = sg.hop[u2] == Hop::one_hop;
      int need;
      if (one1 && one2)
        need = pair_rule::one_hop(k, q, adjacent);
      else if (!one1 && !one2)
        need = pair_rule::two_hop(k, q, adjacent);
      else
        need = pair_rule::mixed(k, q, adjacent);
      if (need <= 0) continue;
      const auto common = and_count(r1, sg.adj.row(u2).subspan(0, prefix), cand_words);
      if (static_cast<int>(common) < need) {
        pm.t.reset(u1, u2);
        pm.t.reset(u2, u1);
      }
    }
  }
  return pm;
}

}  // namespace kplex
