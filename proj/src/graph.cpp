#include "kplex/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_map>

namespace kplex {

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges,
                        std::vector<OriginalId> id_map) {
  Graph g;
  std::vector<std::size_t> deg(n, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint outside [0, n)");
    if (u == v) continue;
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  std::vector<VertexId> raw(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    raw[fill[u]++] = v;
    raw[fill[v]++] = u;
  }
  // Sort each list and squeeze out duplicates, then re-pack.
  std::vector<std::size_t> offsets(n + 1, 0);
  std::size_t out = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    offsets[v] = out;
    for (auto it = first; it != last; ++it) raw[out++] = *it;
  }
  offsets[n] = out;
  raw.resize(out);
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(raw);
  if (id_map.empty()) {
    id_map.resize(n);
    for (std::size_t v = 0; v < n; ++v) id_map[v] = v;
  } else if (id_map.size() != n) {
    throw std::invalid_argument("id_map size does not match vertex count");
  }
  g.id_map_ = std::move(id_map);
  return g;
}

bool Graph::adjacent(VertexId u, VertexId v) const {
  auto a = neighbors(u);
  auto b = neighbors(v);
  if (a.size() > b.size()) return std::binary_search(b.begin(), b.end(), u);
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(m());
  for (VertexId u = 0; u < n(); ++u)
    for (VertexId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

DegeneracyOrder DegeneracyOrder::from_order(const Graph& g, std::vector<VertexId> order) {
  if (order.size() != g.n()) throw std::invalid_argument("order is not a permutation of the vertices");
  DegeneracyOrder d;
  d.rank.assign(g.n(), g.n());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= g.n() || d.rank[order[i]] != g.n())
      throw std::invalid_argument("order is not a permutation of the vertices");
    d.rank[order[i]] = i;
  }
  for (VertexId v = 0; v < g.n(); ++v) {
    std::size_t later = 0;
    for (VertexId u : g.neighbors(v))
      if (d.rank[u] > d.rank[v]) ++later;
    d.degeneracy = std::max(d.degeneracy, later);
  }
  d.order = std::move(order);
  return d;
}

namespace {

bool is_comment_or_blank(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  if (pos == std::string_view::npos) return true;
  return line[pos] == '#' || line[pos] == '%';
}

std::string_view next_token(std::string_view& rest) {
  auto begin = rest.find_first_not_of(" \t\r,");
  if (begin == std::string_view::npos) {
    rest = {};
    return {};
  }
  rest.remove_prefix(begin);
  auto end = rest.find_first_of(" \t\r,");
  auto tok = rest.substr(0, end);
  rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
  return tok;
}

OriginalId parse_id(std::string_view tok, std::size_t line_no) {
  if (tok.empty()) throw ParseError(line_no, "expected two vertex IDs");
  OriginalId value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line_no, "malformed vertex ID '" + std::string(tok) + "'");
  return value;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::unordered_map<OriginalId, VertexId> index;
  std::vector<OriginalId> id_map;
  std::vector<std::pair<VertexId, VertexId>> edges;
  auto intern = [&](OriginalId id) {
    auto [it, inserted] = index.try_emplace(id, static_cast<VertexId>(id_map.size()));
    if (inserted) id_map.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    std::string_view rest(line);
    OriginalId a = parse_id(next_token(rest), line_no);
    OriginalId b = parse_id(next_token(rest), line_no);
    // Trailing columns (weights, timestamps) are ignored.
    VertexId u = intern(a);
    VertexId v = intern(b);
    edges.emplace_back(u, v);
  }
  const std::size_t n = id_map.size();
  return Graph::from_edges(n, edges, std::move(id_map));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (VertexId u = 0; u < g.n(); ++u) {
    if (g.degree(u) == 0) {
      out << g.original_id(u) << ' ' << g.original_id(u) << '\n';
      continue;
    }
    for (VertexId v : g.neighbors(u))
      if (u < v) out << g.original_id(u) << ' ' << g.original_id(v) << '\n';
  }
}

Graph reduce_to_core(const Graph& g, std::size_t c) {
  const std::size_t n = g.n();
  if (c == 0 || n == 0) return g;
  std::vector<std::size_t> deg(n);
  std::vector<char> removed(n, 0);
  std::vector<VertexId> stack;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < c) {
      removed[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId u : g.neighbors(v)) {
      if (removed[u]) continue;
      if (--deg[u] < c) {
        removed[u] = 1;
        stack.push_back(u);
      }
    }
  }

  std::vector<VertexId> remap(n, 0);
  std::vector<OriginalId> id_map;
  for (VertexId v = 0; v < n; ++v) {
    if (removed[v]) continue;
    remap[v] = static_cast<VertexId>(id_map.size());
    id_map.push_back(g.original_id(v));
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    if (removed[u]) continue;
    for (VertexId v : g.neighbors(u))
      if (u < v && !removed[v]) edges.emplace_back(remap[u], remap[v]);
  }
  const std::size_t kept = id_map.size();
  return Graph::from_edges(kept, edges, std::move(id_map));
}

DegeneracyOrder degeneracy_order(const Graph& g) {
  const std::size_t n = g.n();
  DegeneracyOrder d;
  d.order.reserve(n);
  d.rank.assign(n, 0);
  std::vector<std::size_t> deg(n);
  std::vector<char> removed(n, 0);

  // Min-heap on (current degree, id) with lazy deletion of stale entries.
  using Entry = std::pair<std::size_t, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    heap.emplace(deg[v], v);
  }
  while (!heap.empty()) {
    auto [dv, v] = heap.top();
    heap.pop();
    if (removed[v] || dv != deg[v]) continue;
    removed[v] = 1;
    d.rank[v] = d.order.size();
    d.order.push_back(v);
    d.degeneracy = std::max(d.degeneracy, dv);
    for (VertexId u : g.neighbors(v)) {
      if (removed[u]) continue;
      heap.emplace(--deg[u], u);
    }
  }
  return d;
}

}  // namespace kplex
