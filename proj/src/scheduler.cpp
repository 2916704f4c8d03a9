#include "kplex/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <deque>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "kplex/oracle.hpp"
#include "kplex/seed.hpp"

namespace kplex {

void validate(const RunConfig& cfg) {
  if (cfg.threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (cfg.timeout && cfg.timeout->count() <= 0) throw std::invalid_argument("timeout must be positive when enabled");
  validate(cfg.branch);
}

namespace {

constexpr std::size_t kFlushThreshold = 1 << 16;

struct alignas(64) Worker {
  std::mutex mutex;
  std::deque<Task> queue;
  std::uint64_t plexes = 0;
  std::uint64_t created = 0;
  std::uint64_t completed = 0;
  std::uint64_t stolen = 0;
  // LIST-mode results, flattened; `ends` marks where each one stops.
  std::vector<VertexId> flat;
  std::vector<std::size_t> ends;
};

class Runner {
 public:
  Runner(const Graph& g, const DegeneracyOrder& ord, const RunConfig& cfg, const PlexSink& sink)
      : g_(g), ord_(ord), cfg_(cfg), sink_(sink), workers_(cfg.threads), barrier_(static_cast<std::ptrdiff_t>(cfg.threads)) {
    branch_cfg_ = cfg.branch;
    branch_cfg_.deadline = cfg.timeout;
    gen_cfg_ = TaskGenConfig{branch_cfg_.k, branch_cfg_.q, branch_cfg_.initial_bound_active(),
                             branch_cfg_.pair_prune_active()};
    const auto q = static_cast<std::size_t>(branch_cfg_.q);
    seeds_ = g.n() >= q ? g.n() - q + 1 : 0;
    stages_ = (seeds_ + cfg.threads - 1) / cfg.threads;
  }

  RunStats operator()() {
    const auto start = Clock::now();
    if (cfg_.threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < cfg_.threads; ++t) pool.emplace_back([this, t] { work(t); });
    }
    if (error_) std::rethrow_exception(error_);

    RunStats stats;
    for (auto& w : workers_) {
      stats.plex_count += w.plexes;
      stats.tasks_created += w.created;
      stats.tasks_completed += w.completed;
      stats.tasks_stolen += w.stolen;
    }
    stats.stages = stages_;
    stats.wall_time = Clock::now() - start;
    return stats;
  }

 private:
  void work(std::size_t t) {
    try {
      SeedBuilder builder(g_, ord_);
      Worker& self = workers_[t];
      BranchHooks hooks;
      if (cfg_.mode == OutputMode::list) {
        hooks.emit = [&](std::span<const VertexId> plex) {
          self.flat.insert(self.flat.end(), plex.begin(), plex.end());
          self.ends.push_back(self.flat.size());
          ++self.plexes;
          if (self.flat.size() >= kFlushThreshold) flush(self);
        };
      } else {
        hooks.emit = [&](std::span<const VertexId>) { ++self.plexes; };
      }
      hooks.respawn = [&](Task&& task) { push(self, std::move(task)); };

      for (std::size_t stage = 0; stage < stages_; ++stage) {
        const std::size_t pos = stage * cfg_.threads + t;
        if (pos < seeds_ && !abort_.load(std::memory_order_relaxed)) generate(builder, self, pos);
        generated_.fetch_add(1, std::memory_order_acq_rel);
        drain(t, hooks, (stage + 1) * cfg_.threads);
        barrier_.arrive_and_wait();
      }
      flush(self);
    } catch (...) {
      {
        std::lock_guard lock(error_mutex_);
        if (!error_) error_ = std::current_exception();
      }
      abort_.store(true);
      barrier_.arrive_and_drop();
    }
  }

  void generate(SeedBuilder& builder, Worker& self, std::size_t pos) {
    auto sg = builder.build(pos, branch_cfg_.k, branch_cfg_.q);
    if (!sg) return;
    auto ctx = std::make_shared<SeedContext>();
    ctx->sg = std::move(*sg);
    if (gen_cfg_.use_pair_prune) ctx->pairs = build_pair_matrix(ctx->sg, branch_cfg_.k, branch_cfg_.q);
    generate_tasks(std::shared_ptr<const SeedContext>(std::move(ctx)), gen_cfg_,
                   [&](Task&& task) { push(self, std::move(task)); });
  }

  void push(Worker& self, Task&& task) {
    pending_.fetch_add(1, std::memory_order_acq_rel);
    ++self.created;
    std::lock_guard lock(self.mutex);
    self.queue.push_back(std::move(task));
  }

  std::optional<Task> take(std::size_t t) {
    Worker& self = workers_[t];
    {
      std::lock_guard lock(self.mutex);
      if (!self.queue.empty()) {
        Task task = std::move(self.queue.back());
        self.queue.pop_back();
        return task;
      }
    }
    for (std::size_t i = 1; i < workers_.size(); ++i) {
      Worker& victim = workers_[(t + i) % workers_.size()];
      std::lock_guard lock(victim.mutex);
      if (!victim.queue.empty()) {
        Task task = std::move(victim.queue.front());
        victim.queue.pop_front();
        ++self.stolen;
        return task;
      }
    }
    return std::nullopt;
  }

  // Runs tasks until every worker has finished generating for this stage and
  // no task is queued or running anywhere.
  void drain(std::size_t t, const BranchHooks& hooks, std::size_t generated_target) {
    Worker& self = workers_[t];
    while (!abort_.load(std::memory_order_relaxed)) {
      if (auto task = take(t)) {
        branch(*task, branch_cfg_, hooks);
        ++self.completed;
        task.reset();
        pending_.fetch_sub(1, std::memory_order_acq_rel);
        continue;
      }
      if (generated_.load(std::memory_order_acquire) >= generated_target &&
          pending_.load(std::memory_order_acquire) == 0)
        return;
      std::this_thread::yield();
    }
  }

  void flush(Worker& self) {
    if (self.ends.empty()) return;
    {
      std::lock_guard lock(sink_mutex_);
      std::size_t begin = 0;
      for (std::size_t end : self.ends) {
        std::span<const VertexId> plex(self.flat.data() + begin, end - begin);
        sorted_.assign(plex.begin(), plex.end());
        std::sort(sorted_.begin(), sorted_.end());
        sink_(sorted_);
        begin = end;
      }
    }
    self.flat.clear();
    self.ends.clear();
  }

  const Graph& g_;
  const DegeneracyOrder& ord_;
  const RunConfig& cfg_;
  const PlexSink& sink_;
  BranchConfig branch_cfg_;
  TaskGenConfig gen_cfg_;
  std::size_t seeds_ = 0;
  std::size_t stages_ = 0;

  std::vector<Worker> workers_;
  std::barrier<> barrier_;
  std::atomic<std::size_t> generated_{0};
  std::atomic<std::int64_t> pending_{0};
  std::atomic<bool> abort_{false};

  std::mutex sink_mutex_;
  std::vector<VertexId> sorted_;
  std::mutex error_mutex_;
  std::exception_ptr error_;
};

}  // namespace

RunStats run(const Graph& g, const DegeneracyOrder& ord, const RunConfig& cfg, const PlexSink& sink) {
  validate(cfg);
  if (ord.order.size() != g.n()) throw std::invalid_argument("ordering does not match the graph");
  return Runner(g, ord, cfg, sink)();
}

RunStats run_pipeline(const Graph& g, const RunConfig& cfg, const OriginalSink& sink) {
  validate(cfg);
  const auto start = Clock::now();
  const int k = cfg.branch.k;
  const int q = cfg.branch.q;
  const Graph core = reduce_to_core(g, static_cast<std::size_t>(std::max(q - k, 0)));
  const DegeneracyOrder ord = degeneracy_order(core);
  std::vector<OriginalId> ids;
  RunStats stats = run(core, ord, cfg, [&](std::span<const VertexId> plex) {
    ids.clear();
    for (VertexId v : plex) ids.push_back(core.original_id(v));
    std::sort(ids.begin(), ids.end());
    sink(ids);
  });
  stats.wall_time = Clock::now() - start;  // preprocessing included, loading not
  return stats;
}

std::vector<std::vector<OriginalId>> enumerate_plexes(const Graph& g, RunConfig cfg, RunStats* stats) {
  cfg.mode = OutputMode::list;
  PlexSet out;
  RunStats s = run_pipeline(g, cfg, [&](std::span<const OriginalId> plex) { out.emplace_back(plex.begin(), plex.end()); });
  canonicalize(out);
  if (stats) *stats = s;
  return out;
}

}  // namespace kplex
