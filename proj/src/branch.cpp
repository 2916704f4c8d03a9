#include "kplex/branch.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace kplex {

void validate(const BranchConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
  if (cfg.q < 2 * cfg.k - 1)
    throw std::invalid_argument("q must be at least 2k-1 = " + std::to_string(2 * cfg.k - 1) +
                                " so that every reported k-plex is connected (diameter <= 2)");
  if (cfg.deadline && cfg.deadline->count() <= 0) throw std::invalid_argument("task timeout must be positive");
}

namespace {

void drop_from_c(const SeedSubgraph& sg, SearchState& st, std::uint32_t v) {
  st.c.reset(v);
  sg.adj.for_each_in_row(v, [&](std::size_t w) { --st.dpc[w]; });
}

void restore_to_c(const SeedSubgraph& sg, SearchState& st, std::uint32_t v) {
  st.c.set(v);
  sg.adj.for_each_in_row(v, [&](std::size_t w) { ++st.dpc[w]; });
}

// Moves v from C into P; dpc is unchanged since v stays in P ∪ C.
void push_p(const SeedSubgraph& sg, SearchState& st, std::uint32_t v) {
  st.c.reset(v);
  st.p.push_back(v);
  st.p_mask.set(v);
  sg.adj.for_each_in_row(v, [&](std::size_t w) { ++st.dp[w]; });
  sg.outer_adj_t.for_each_in_row(v, [&](std::size_t o) { ++st.dp_outer[o]; });
}

void pop_p(const SeedSubgraph& sg, SearchState& st) {
  const std::uint32_t v = st.p.back();
  st.p.pop_back();
  st.p_mask.reset(v);
  st.c.set(v);
  sg.adj.for_each_in_row(v, [&](std::size_t w) { --st.dp[w]; });
  sg.outer_adj_t.for_each_in_row(v, [&](std::size_t o) { --st.dp_outer[o]; });
}

// P ∪ {v} is a k-plex iff v misses at most k-1 members of P and is adjacent
// to every saturated member.
bool can_join(const SeedSubgraph& sg, const SearchState& st, std::span<const std::uint32_t> saturated,
              std::uint32_t v, int k) {
  if (static_cast<int>(st.dp[v]) + k < static_cast<int>(st.p.size()) + 1) return false;
  for (auto u : saturated)
    if (!sg.adj.test(u, v)) return false;
  return true;
}

}  // namespace

void refine_sets(const SeedSubgraph& sg, const PairMatrix* pairs, int k, SearchState& st,
                 std::vector<std::uint32_t>* removed) {
  const int p_size = static_cast<int>(st.p.size());
  thread_local std::vector<std::uint32_t> saturated;
  saturated.clear();
  for (auto u : st.p)
    if (p_size - static_cast<int>(st.dp[u]) >= k) saturated.push_back(u);

  auto survives = [&](std::uint32_t v) {
    if (!can_join(sg, st, saturated, v, k)) return false;
    if (pairs)
      for (auto f : st.fresh)
        if (!pairs->can_cooccur(f, v)) return false;
    return true;
  };

  const auto c_words = st.c.words();
  for (std::size_t wi = 0; wi < c_words.size(); ++wi) {
    Word w = c_words[wi];
    while (w) {
      const auto v = static_cast<std::uint32_t>(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
      if (!survives(v)) {
        drop_from_c(sg, st, v);
        if (removed) removed->push_back(v);
      }
    }
  }
  auto x_words = st.x.words();
  for (std::size_t wi = 0; wi < x_words.size(); ++wi) {
    Word w = x_words[wi];
    while (w) {
      const auto v = static_cast<std::uint32_t>(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
      if (!survives(v)) x_words[wi] &= ~(Word{1} << (v % kWordBits));
    }
  }
  std::erase_if(st.x_outer, [&](std::uint32_t o) {
    if (static_cast<int>(st.dp_outer[o]) + k < p_size + 1) return true;
    for (auto u : saturated)
      if (!sg.outer_adj.test(o, u)) return true;
    return false;
  });
  st.fresh.clear();
}

namespace {

struct PivotKey {
  std::uint32_t dpc;
  std::uint32_t non_neighbors;
  bool in_p;
  std::uint32_t id;

  bool better_than(const PivotKey& o) const {
    if (dpc != o.dpc) return dpc < o.dpc;
    if (non_neighbors != o.non_neighbors) return non_neighbors > o.non_neighbors;
    if (in_p != o.in_p) return in_p;
    return id < o.id;
  }
};

}  // namespace

PivotChoice select_pivot(const SearchState& st) {
  std::optional<PivotKey> best;
  auto consider = [&](std::uint32_t v, bool in_p) {
    PivotKey key{st.dpc[v], st.non_neighbors_in_p(v), in_p, v};
    if (!best || key.better_than(*best)) best = key;
  };
  for (auto u : st.p) consider(u, true);
  st.c.for_each([&](std::size_t v) { consider(static_cast<std::uint32_t>(v), false); });
  assert(best);
  return {best->id, best->in_p ? PivotChoice::Origin::from_p : PivotChoice::Origin::from_c};
}

std::optional<std::uint32_t> repick_pivot(const SeedSubgraph& sg, const SearchState& st, std::uint32_t anchor) {
  std::optional<PivotKey> best;
  st.c.for_each([&](std::size_t v) {
    if (v == anchor || sg.adj.test(anchor, v)) return;
    PivotKey key{st.dpc[v], st.non_neighbors_in_p(static_cast<std::uint32_t>(v)), false,
                 static_cast<std::uint32_t>(v)};
    if (!best || key.better_than(*best)) best = key;
  });
  if (!best) return std::nullopt;
  return best->id;
}

int compute_ub(const SeedSubgraph& sg, const SearchState& st, std::uint32_t pivot, std::uint32_t degree_vertex,
               int k) {
  const int p_size = static_cast<int>(st.p.size());
  thread_local std::vector<int> support;
  support.resize(st.p.size());
  for (std::size_t i = 0; i < st.p.size(); ++i) support[i] = k - (p_size - static_cast<int>(st.dp[st.p[i]]));
  const int pivot_support = k - st.non_neighbors_in_p(pivot);

  int kept = 0;
  st.c.for_each([&](std::size_t w) {
    if (w == pivot || !sg.adj.test(pivot, w)) return;
    if (st.dp[w] == st.p.size()) {
      ++kept;
      return;
    }
    std::size_t best = st.p.size();
    for (std::size_t i = 0; i < st.p.size(); ++i)
      if (!sg.adj.test(st.p[i], w) && (best == st.p.size() || support[i] < support[best])) best = i;
    if (best == st.p.size()) {
      ++kept;
    } else if (support[best] > 0) {
      --support[best];
      ++kept;
    }
  });
  return std::min(p_size + pivot_support + kept, static_cast<int>(sg.deg[degree_vertex]) + k);
}

bool check_maximal(const SeedSubgraph& sg, const PairMatrix* pairs, const SearchState& st, const Bitset& plex,
                   std::size_t plex_size, std::optional<std::uint32_t> filter_vertex, int k) {
  const int need = static_cast<int>(plex_size) + 1 - k;
  std::vector<std::uint32_t> saturated;
  plex.for_each([&](std::size_t u) {
    if (static_cast<int>(plex_size - and_count(sg.adj.row(u), plex.words())) >= k)
      saturated.push_back(static_cast<std::uint32_t>(u));
  });

  bool maximal = true;
  st.x.for_each([&](std::size_t x) {
    if (!maximal) return;
    if (pairs && filter_vertex && !pairs->can_cooccur(*filter_vertex, x)) return;
    if (static_cast<int>(and_count(sg.adj.row(x), plex.words())) < need) return;
    for (auto u : saturated)
      if (!sg.adj.test(u, x)) return;
    maximal = false;
  });
  if (!maximal) return false;
  for (auto o : st.x_outer) {
    if (static_cast<int>(and_count(sg.outer_adj.row(o), plex.words())) < need) continue;
    bool extends = true;
    for (auto u : saturated)
      if (!sg.outer_adj.test(o, u)) {
        extends = false;
        break;
      }
    if (extends) return false;
  }
  return true;
}

namespace {

class Searcher {
 public:
  Searcher(Task& task, const BranchConfig& cfg, const BranchHooks& hooks)
      : task_(task), sg_(task.ctx->sg), pairs_(cfg.pair_prune_active() ? task.ctx->pair_matrix() : nullptr),
        cfg_(cfg), hooks_(hooks), st_(task.state) {}

  void run() { search(); }

 private:
  void search() {
#ifdef KPLEX_CHECK_INVARIANTS
    if (!st_.counters_consistent(sg_)) throw std::logic_error("search counters out of sync");
#endif
    const int k = cfg_.k;
    const std::optional<std::uint32_t> last_added =
        st_.fresh.empty() ? std::nullopt : std::optional<std::uint32_t>(st_.fresh.back());
    Bitset x_saved = st_.x;
    std::vector<std::uint32_t> x_outer_saved = st_.x_outer;
    std::vector<std::uint32_t> removed;
    refine_sets(sg_, pairs_, k, st_, &removed);

    body(last_added, removed);

    for (auto it = removed.rbegin(); it != removed.rend(); ++it) restore_to_c(sg_, st_, *it);
    st_.x = std::move(x_saved);
    st_.x_outer = std::move(x_outer_saved);
  }

  void body(std::optional<std::uint32_t> last_added, std::vector<std::uint32_t>& removed) {
    const int k = cfg_.k;
    const std::size_t p_size = st_.p.size();
    const std::size_t c_size = st_.c.count();
    if (c_size == 0) {
      if (st_.x_empty() && p_size >= static_cast<std::size_t>(cfg_.q)) emit(st_.p_mask);
      return;
    }

    const PivotChoice pivot = select_pivot(st_);
    if (static_cast<int>(st_.dpc[pivot.vertex]) >= static_cast<int>(p_size + c_size) - k) {
      // P ∪ C is itself a k-plex; nothing smaller below it can be maximal.
      if (p_size + c_size >= static_cast<std::size_t>(cfg_.q)) {
        Bitset plex = st_.p_mask;
        plex.or_with(st_.c.words());
        if (check_maximal(sg_, pairs_, st_, plex, p_size + c_size, last_added, k)) emit(plex);
      }
      return;
    }

    std::uint32_t v = pivot.vertex;
    if (pivot.origin == PivotChoice::Origin::from_p) {
      if (cfg_.variant == Variant::ours_p) {
        branch_on_non_neighbors(pivot.vertex);
        return;
      }
      auto repicked = repick_pivot(sg_, st_, pivot.vertex);
      // The failed k-plex test above guarantees a non-neighbour in C.
      if (!repicked) throw std::logic_error("pivot in P without non-neighbours in C");
      v = *repicked;
    }

    if (!cfg_.use_ub || compute_ub(sg_, st_, v, pivot.vertex, k) >= cfg_.q) {
      push_p(sg_, st_, v);
      st_.fresh.assign(1, v);
      descend();
      st_.fresh.clear();
      pop_p(sg_, st_);
    }
    drop_from_c(sg_, st_, v);
    removed.push_back(v);
    st_.x.set(v);
    descend();
  }

  // With the pivot u in P, every result takes at most sup(u) of u's
  // non-neighbours w_1..w_l from C. Branch i (1 <= i <= s) takes
  // w_1..w_{i-1} and excludes w_i; the last branch takes w_1..w_s.
  void branch_on_non_neighbors(std::uint32_t u) {
    const int k = cfg_.k;
    const int s = k - static_cast<int>(st_.non_neighbors_in_p(u));
    std::vector<std::uint32_t> ws;
    st_.c.for_each([&](std::size_t w) {
      if (!sg_.adj.test(u, w)) ws.push_back(static_cast<std::uint32_t>(w));
    });
    if (ws.empty()) throw std::logic_error("pivot in P without non-neighbours in C");
    // The failed k-plex test gives |P-non-neighbours| + l > k, so s < l.
    assert(s >= 0 && s < static_cast<int>(ws.size()));

    std::vector<std::uint32_t> added;
    bool feasible = true;
    for (int i = 0; i < s && feasible; ++i) {
      const std::uint32_t wi = ws[static_cast<std::size_t>(i)];
      drop_from_c(sg_, st_, wi);
      st_.x.set(wi);
      st_.fresh = added;
      descend();
      st_.fresh.clear();
      st_.x.reset(wi);
      restore_to_c(sg_, st_, wi);

      std::vector<std::uint32_t> saturated;
      for (auto p : st_.p)
        if (static_cast<int>(st_.non_neighbors_in_p(p)) >= k) saturated.push_back(p);
      if (!can_join(sg_, st_, saturated, wi, k)) {
        feasible = false;
        break;
      }
      push_p(sg_, st_, wi);
      added.push_back(wi);
    }
    if (feasible) {
      std::vector<std::uint32_t> dropped;
      for (std::size_t i = static_cast<std::size_t>(s); i < ws.size(); ++i) {
        drop_from_c(sg_, st_, ws[i]);
        dropped.push_back(ws[i]);
      }
      st_.fresh = added;
      descend();
      st_.fresh.clear();
      for (auto it = dropped.rbegin(); it != dropped.rend(); ++it) restore_to_c(sg_, st_, *it);
    }
    for (std::size_t i = 0; i < added.size(); ++i) pop_p(sg_, st_);
  }

  void descend() {
    if (cfg_.deadline && Clock::now() - task_.created_at > *cfg_.deadline) {
      hooks_.respawn(Task{task_.ctx, st_, Clock::now()});
      return;
    }
    search();
  }

  void emit(const Bitset& mask) {
    buffer_.clear();
    mask.for_each([&](std::size_t u) { buffer_.push_back(sg_.verts[u]); });
    hooks_.emit(buffer_);
  }

  Task& task_;
  const SeedSubgraph& sg_;
  const PairMatrix* pairs_;
  const BranchConfig& cfg_;
  const BranchHooks& hooks_;
  SearchState& st_;
  std::vector<VertexId> buffer_;
};

}  // namespace

void branch(Task& task, const BranchConfig& cfg, const BranchHooks& hooks) { Searcher(task, cfg, hooks).run(); }

}  // namespace kplex
