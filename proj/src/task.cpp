#include "kplex/task.hpp"

#include "kplex/branch.hpp"

#include <algorithm>
#include <limits>

namespace kplex {

SearchState SearchState::make(const SeedSubgraph& sg, std::span<const std::uint32_t> p, const Bitset& c,
                              const Bitset& x, std::vector<std::uint32_t> x_outer) {
  const std::size_t size = sg.size();
  SearchState st;
  st.p.assign(p.begin(), p.end());
  st.p_mask = Bitset(size);
  for (auto u : p) st.p_mask.set(u);
  st.c = c;
  st.x = x;
  st.x_outer = std::move(x_outer);
  st.dp.assign(size, 0);
  st.dpc.assign(size, 0);
  st.dp_outer.assign(sg.outer_count(), 0);
  Bitset pc = st.p_mask;
  pc.or_with(c.words());
  for (std::size_t v = 0; v < size; ++v) {
    st.dp[v] = static_cast<std::uint32_t>(and_count(sg.adj.row(v), st.p_mask.words()));
    st.dpc[v] = static_cast<std::uint32_t>(and_count(sg.adj.row(v), pc.words()));
  }
  for (std::size_t o = 0; o < sg.outer_count(); ++o)
    st.dp_outer[o] = static_cast<std::uint32_t>(and_count(sg.outer_adj.row(o), st.p_mask.words()));
  return st;
}

bool SearchState::counters_consistent(const SeedSubgraph& sg) const {
  Bitset pc = p_mask;
  pc.or_with(c.words());
  for (std::size_t v = 0; v < sg.size(); ++v) {
    if (dp[v] != and_count(sg.adj.row(v), p_mask.words())) return false;
    if (dpc[v] != and_count(sg.adj.row(v), pc.words())) return false;
  }
  for (std::size_t o = 0; o < sg.outer_count(); ++o)
    if (dp_outer[o] != and_count(sg.outer_adj.row(o), p_mask.words())) return false;
  if (p.size() != p_mask.count()) return false;
  for (auto u : p)
    if (!p_mask.test(u)) return false;
  return true;
}

int initial_bound(const SeedSubgraph& sg, std::span<const std::uint32_t> p_s, const Bitset& c_s, int k) {
  int degree_bound = std::numeric_limits<int>::max();
  for (auto v : p_s) degree_bound = std::min(degree_bound, static_cast<int>(sg.deg[v]) + k);

  // Supports of the members of P_S; the seed is adjacent to every candidate,
  // so its own support never gates anything.
  const int p_size = static_cast<int>(p_s.size());
  std::vector<int> support(p_s.size());
  for (std::size_t i = 0; i < p_s.size(); ++i) {
    int adjacent = 0;
    for (auto w : p_s) adjacent += sg.adj.test(p_s[i], w) ? 1 : 0;
    support[i] = k - (p_size - adjacent);
  }

  int kept = 0;
  c_s.for_each([&](std::size_t w) {
    if (!sg.adj.test(0, w)) return;
    std::size_t best = p_s.size();
    for (std::size_t i = 0; i < p_s.size(); ++i)
      if (!sg.adj.test(p_s[i], w) && (best == p_s.size() || support[i] < support[best])) best = i;
    if (best == p_s.size()) {
      ++kept;
    } else if (support[best] > 0) {
      --support[best];
      ++kept;
    }
  });
  return std::min(p_size + kept, degree_bound);
}

namespace {

class SubsetEnumerator {
 public:
  SubsetEnumerator(const std::shared_ptr<const SeedContext>& ctx, const TaskGenConfig& cfg,
                   const std::function<void(Task&&)>& emit)
      : ctx_(ctx), sg_(ctx->sg), pairs_(cfg.use_pair_prune ? ctx->pair_matrix() : nullptr), cfg_(cfg),
        emit_(emit) {
    p_.push_back(0);
    for (std::size_t o = 0; o < sg_.outer_count(); ++o) outer_.push_back(static_cast<std::uint32_t>(o));
  }

  std::size_t run() {
    Bitset ext(sg_.size());
    for (std::size_t u = sg_.two_hop_begin; u < sg_.size(); ++u) ext.set(u);
    visit(ext, sg_.one_hop_mask());
    return emitted_;
  }

 private:
  void visit(const Bitset& ext, const Bitset& cand) {
    emit_subtask(cand);
    if (static_cast<int>(p_.size()) >= cfg_.k) return;  // |S| = k - 1 already
    ext.for_each([&](std::size_t u) {
      if (!extends_plex(static_cast<std::uint32_t>(u))) return;
      Bitset next_ext = ext;
      Bitset next_cand = cand;
      // Only later two-hop vertices may extend S further.
      for (std::size_t w = sg_.two_hop_begin; w <= u; ++w) next_ext.reset(w);
      if (pairs_) {
        next_ext.and_with(pairs_->t.row(u));
        next_cand.and_with(pairs_->t.row(u));
      }
      p_.push_back(static_cast<std::uint32_t>(u));
      visit(next_ext, next_cand);
      p_.pop_back();
    });
  }

  bool extends_plex(std::uint32_t u) const {
    const int size = static_cast<int>(p_.size()) + 1;
    int u_adj = 0;
    for (auto a : p_) {
      const bool adj = sg_.adj.test(a, u);
      u_adj += adj ? 1 : 0;
      int a_adj = adj ? 1 : 0;
      for (auto b : p_) a_adj += sg_.adj.test(a, b) ? 1 : 0;
      if (size - a_adj > cfg_.k) return false;
    }
    return size - u_adj <= cfg_.k;
  }

  void emit_subtask(const Bitset& cand) {
    Bitset x(sg_.size());
    for (std::size_t u = sg_.two_hop_begin; u < sg_.size(); ++u) x.set(u);
    for (std::size_t i = 1; i < p_.size(); ++i) x.reset(p_[i]);
    SearchState st = SearchState::make(sg_, p_, cand, x, outer_);
    // Drop C and X members that cannot join P_S at all; the bound then
    // works on the vertices that can.
    refine_sets(sg_, nullptr, cfg_.k, st);
    if (cfg_.use_initial_bound && initial_bound(sg_, p_, st.c, cfg_.k) < cfg_.q) return;
    emit_(Task{ctx_, std::move(st), Clock::now()});
    ++emitted_;
  }

  const std::shared_ptr<const SeedContext>& ctx_;
  const SeedSubgraph& sg_;
  const PairMatrix* pairs_;
  const TaskGenConfig& cfg_;
  const std::function<void(Task&&)>& emit_;
  std::vector<std::uint32_t> p_;
  std::vector<std::uint32_t> outer_;
  std::size_t emitted_ = 0;
};

}  // namespace

std::size_t generate_tasks(const std::shared_ptr<const SeedContext>& ctx, const TaskGenConfig& cfg,
                           const std::function<void(Task&&)>& emit) {
  return SubsetEnumerator(ctx, cfg, emit).run();
}

}  // namespace kplex
