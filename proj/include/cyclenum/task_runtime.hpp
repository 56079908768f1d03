#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cyclenum/rt_search.hpp"
#include "cyclenum/search_stats.hpp"
#include "cyclenum/seq_enum.hpp"
#include "cyclenum/temporal_graph.hpp"

namespace cyclenum {

struct JohnsonState;
struct RtState;

enum class TaskKind : std::uint8_t {
  anchor,        // start a search lineage for one anchor edge
  johnson_edge,  // examine one admissible edge from a path prefix
  rt_call,       // enumerate path-extension seeds at a frontier
  rt_extension,  // compute and walk one path extension
  temporal_hop,  // examine one edge bundle from a temporal path prefix
  preproc,       // independent indexed work (cycle unions, tests)
};

/// A unit of work. Lineage tasks reference the creating thread's search state
/// and record the state position (path length, blocked-set mark, generation)
/// at creation time. Stolen lineage tasks are repointed to a fresh state copy
/// at steal time, so a task in a deque always refers to live state.
struct Task {
  TaskKind kind = TaskKind::preproc;
  void* state = nullptr;  // JohnsonState* / RtState* / engine-defined
  std::uint32_t snapshot_len = 0;
  std::uint32_t blk_mark = 0;
  std::uint64_t generation = 0;
  bool stolen = false;
  AdjEntry edge{};          // johnson_edge / rt_extension seed
  std::uint32_t group = 0;  // temporal_hop: group index
  EdgeId anchor = 0;        // anchor payload
  std::uint64_t index = 0;  // preproc payload
};

/// Per-worker deque. The owner pushes and pops at the back (depth-first);
/// thieves take from the front, which holds the oldest, shallowest tasks.
/// The steal hook runs under the deque lock *before* the task is removed, so
/// a victim can never unwind state out from under a task that is being
/// copied: while a lineage task sits in its owner's deque, the owner works
/// strictly above the task's snapshot position.
class TaskDeque {
 public:
  void push(Task t) {
    std::lock_guard<std::mutex> lock(mu_);
    tasks_.push_back(t);
  }
  void push_batch(const Task* ts, std::size_t count) {
    std::lock_guard<std::mutex> lock(mu_);
    for (std::size_t i = 0; i < count; ++i) tasks_.push_back(ts[i]);
  }
  std::optional<Task> pop() {
    std::lock_guard<std::mutex> lock(mu_);
    if (tasks_.empty()) return std::nullopt;
    Task t = tasks_.back();
    tasks_.pop_back();
    return t;
  }
  /// `prepare` may repoint the task at a fresh state copy; it runs with the
  /// deque locked and the task still resident. Returning false declines the
  /// steal and leaves the task in place.
  std::optional<Task> steal(const std::function<bool(Task&)>& prepare) {
    std::lock_guard<std::mutex> lock(mu_);
    if (tasks_.empty()) return std::nullopt;
    Task& slot = tasks_.front();
    if (!prepare(slot)) return std::nullopt;
    Task t = slot;
    tasks_.pop_front();
    return t;
  }
  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return tasks_.size();
  }

 private:
  mutable std::mutex mu_;
  std::deque<Task> tasks_;
};

/// Mutable search state of one Johnson lineage: the (pi, blk, blist) triple.
/// Owner-mutated under `guard`; stealers copy under `guard`. The level frames
/// are owner bookkeeping and are not part of the stolen snapshot.
struct JohnsonState {
  JohnsonState(GraphView v, VertexId root, EdgeId anchor_edge, std::size_t n)
      : view(v), v0(root), anchor(anchor_edge), blk(n), blist(n), on_path(n) {
    verts.reserve(n + 1);
    edges.reserve(n + 1);
  }

  GraphView view;
  VertexId v0;
  EdgeId anchor;

  std::vector<VertexId> verts;
  std::vector<EdgeId> edges;
  BlockedSet blk;
  UnblockList blist;
  BlockedSet on_path;  // tracked for cycle emission sanity; Johnson keeps path in blk too

  std::mutex guard;
  std::uint64_t generation = 0;  // bumped on every unwind; ABA tripwire for tasks

  struct Frame {
    VertexId v;
    std::uint32_t spawned = 0;
    std::uint32_t popped = 0;
    bool found = false;
  };
  std::vector<Frame> frames;  // frames[i] is the level at path length base + i
};

/// Read-Tarjan lineage state: current path plus the undo-logged blocked set.
struct RtState {
  RtState(GraphView v, VertexId root, EdgeId anchor_edge, std::size_t n)
      : view(v), v0(root), anchor(anchor_edge), on_path(n), blk(n), scratch(n) {
    verts.reserve(n + 1);
    edges.reserve(n + 1);
  }

  GraphView view;
  VertexId v0;
  EdgeId anchor;

  std::vector<VertexId> verts;
  std::vector<EdgeId> edges;
  BlockedSet on_path;
  UndoBlockedSet blk;

  std::mutex guard;
  std::uint64_t generation = 0;

  // Lineage floor: a thief's copy never unwinds below the stolen task's
  // position; anchor-rooted lineages bottom out at the anchor pair.
  std::uint32_t base_len = 2;
  std::uint32_t base_mark = 0;

  VisitScratch scratch;  // owner-only DFS scratch
};

/// Snapshot transfer for a stolen Johnson task: truncate the path to the
/// task's creation length, deep-copy blk/blist, then recursively unblock the
/// vertices the victim appended after the task was created (reverse order).
/// Caller holds victim.guard. The victim is not modified.
std::unique_ptr<JohnsonState> copy_on_steal_johnson(const JohnsonState& victim, const Task& task,
                                                    StatShard& st);

/// Snapshot transfer for a stolen Read-Tarjan task: truncate the path and
/// rewind a copy of the blocked set to the task's mark. Same-thread children
/// reuse the owner's structures (restore on pop) and copy nothing.
std::unique_ptr<RtState> copy_on_steal_rt(const RtState& victim, const Task& task, StatShard& st);

/// Work-stealing pool: p workers, child-stealing deques (owner LIFO, thieves
/// FIFO), randomized victim selection, busy-time accounting per worker.
class WorkerPool {
 public:
  struct Config {
    unsigned threads = 1;
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  };

  /// Executes `execute(task, worker_id)` for every task until the spawn
  /// count drains to zero. `on_idle_lineage(worker_id)` runs whenever a
  /// worker's own deque empties, before it turns to stealing; engines retire
  /// their current lineage there. `prepare_steal(task, thief_id)` runs under
  /// the victim's deque lock.
  struct Job {
    std::function<void(Task&, unsigned)> execute;
    std::function<void(unsigned)> on_idle_lineage;
    std::function<void(Task&, unsigned)> prepare_steal;
  };

  explicit WorkerPool(Config cfg, SearchStats& stats);

  /// Seeds the initial tasks round-robin across worker deques and runs the
  /// job to completion on cfg.threads workers (the caller is worker 0).
  void run(const std::vector<Task>& initial, Job job);

  /// Spawn from inside a task (worker-local deque).
  void spawn(unsigned worker, const Task& t) {
    in_flight_.fetch_add(1, std::memory_order_relaxed);
    deques_[worker].push(t);
  }
  void spawn_batch(unsigned worker, const Task* ts, std::size_t count) {
    in_flight_.fetch_add(count, std::memory_order_relaxed);
    deques_[worker].push_batch(ts, count);
  }

  /// A task removed and completed outside the pool (scripted schedules).
  void note_external_completion() { in_flight_.fetch_sub(1, std::memory_order_release); }

  TaskDeque& deque(unsigned worker) { return deques_[worker]; }
  unsigned threads() const { return cfg_.threads; }

 private:
  void worker_loop(unsigned id, const Job& job);

  Config cfg_;
  SearchStats& stats_;
  std::vector<TaskDeque> deques_;
  std::atomic<std::int64_t> in_flight_{0};
};

/// Environment knob: default worker count from CYCLENUM_THREADS, falling back
/// to the given value when unset or invalid.
unsigned thread_count_from_env(unsigned fallback);

}  // namespace cyclenum
