#pragma once

#include <functional>
#include <optional>

#include "cyclenum/cycle_sink.hpp"
#include "cyclenum/search_stats.hpp"
#include "cyclenum/seq_enum.hpp"
#include "cyclenum/task_runtime.hpp"

namespace cyclenum {

enum class Granularity { coarse, fine };

struct ParallelConfig {
  unsigned threads = 1;
  Granularity granularity = Granularity::coarse;
  Algo algorithm = Algo::johnson;
  // Calls at recursion depth >= cutoff_depth run inline instead of becoming
  // stealable tasks; 0 disables inlining (every call is a task).
  int cutoff_depth = 0;
  std::uint64_t seed = 0x5eed5eedULL;  // steal-schedule randomization
};

/// One task per anchor edge, each running the full sequential search.
void coarse_enumerate(const TemporalGraph& g, Timestamp delta, const ParallelConfig& cfg,
                      CycleSink& sink, SearchStats& stats, const EnumOptions& opts = {});

/// Scripted-schedule test hooks for the fine-grained engines. on_push fires
/// on the owning worker right after a vertex is appended to a lineage path.
struct JohnsonStealPoint {
  JohnsonState& state;
  TaskDeque& deque;
  WorkerPool& pool;
  unsigned worker;
};
struct FineHooks {
  std::function<void(JohnsonStealPoint&)> on_johnson_push;
};

/// Every recursive call is a task; stolen tasks transfer (pi, blk, blist)
/// via copy-on-steal with recursive unblocking of the removed suffix.
void fine_johnson_enumerate(const TemporalGraph& g, Timestamp delta, const ParallelConfig& cfg,
                            CycleSink& sink, SearchStats& stats, const EnumOptions& opts = {},
                            FineHooks* hooks = nullptr);

/// Every recursive call and every path-extension computation is a task;
/// children inherit (pi, blk) copies, parents never read them back.
void fine_read_tarjan_enumerate(const TemporalGraph& g, Timestamp delta,
                                const ParallelConfig& cfg, CycleSink& sink, SearchStats& stats,
                                const EnumOptions& opts = {});

/// Production steal protocol against one worker, exposed for scripted
/// schedules: takes the oldest resident Johnson task, copying the victim
/// state under its guard before removal, exactly as a pool thief would.
/// Declines when the oldest task is not a lineage task.
struct StolenJohnson {
  std::unique_ptr<JohnsonState> state;
  Task task;
};
std::optional<StolenJohnson> steal_oldest_johnson(JohnsonStealPoint& point,
                                                  StatShard& thief_stats);

/// Drains a stolen Johnson task to completion on its own single-worker
/// context, emitting into `sink` shard `shard`.
void run_stolen_johnson(StolenJohnson stolen, const TemporalGraph& g, CycleSink& sink,
                        SearchStats& stats, unsigned shard, int cutoff_depth = 0);

/// Independent indexed work distributed over the pool (preprocessing).
void parallel_for_indexed(unsigned threads, std::uint64_t count, SearchStats& stats,
                          const std::function<void(std::uint64_t, unsigned)>& fn,
                          std::uint64_t seed = 0);

}  // namespace cyclenum
