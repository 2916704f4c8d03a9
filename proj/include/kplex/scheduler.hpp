#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kplex/branch.hpp"
#include "kplex/graph.hpp"

namespace kplex {

enum class OutputMode { list, count };

inline constexpr std::chrono::nanoseconds kDefaultTimeout{100'000};  // 0.1 ms

struct RunConfig {
  std::size_t threads = 1;
  /// Per-task budget before a task is split; nullopt disables splitting.
  std::optional<std::chrono::nanoseconds> timeout = kDefaultTimeout;
  BranchConfig branch;
  OutputMode mode = OutputMode::list;
};

struct RunStats {
  std::uint64_t plex_count = 0;
  std::uint64_t tasks_created = 0;
  std::uint64_t tasks_completed = 0;
  std::uint64_t tasks_stolen = 0;
  std::uint64_t stages = 0;
  std::chrono::nanoseconds wall_time{0};
};

/// Receives one result at a time (never concurrently) as internal IDs of the
/// graph passed to run(), in ascending order.
using PlexSink = std::function<void(std::span<const VertexId>)>;

/// Throws std::invalid_argument on an unusable configuration.
void validate(const RunConfig& cfg);

/// Enumerates every maximal k-plex of size >= q of `g`, whose vertices must
/// already be ordered by `ord` (and ideally reduced to the (q-k)-core).
/// In COUNT mode the sink is never called.
RunStats run(const Graph& g, const DegeneracyOrder& ord, const RunConfig& cfg, const PlexSink& sink);

/// Receives results in original IDs, sorted ascending.
using OriginalSink = std::function<void(std::span<const OriginalId>)>;

/// Core reduction, ordering and run() on a raw input graph.
RunStats run_pipeline(const Graph& g, const RunConfig& cfg, const OriginalSink& sink);

/// All results in original IDs, canonicalized (sorted sets, sorted list).
std::vector<std::vector<OriginalId>> enumerate_plexes(const Graph& g, RunConfig cfg, RunStats* stats = nullptr);

}  // namespace kplex
