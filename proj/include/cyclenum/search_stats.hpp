#pragma once

#include <cstdint>
#include <vector>

#include "cyclenum/temporal_graph.hpp"

namespace cyclenum {

/// Counters for one worker thread. All monotone.
struct StatShard {
  std::uint64_t edge_visits = 0;
  std::uint64_t vertex_visits = 0;
  std::uint64_t maximal_paths = 0;  // s: dead-end simple paths (Tiernan)
  std::uint64_t tasks_executed = 0;
  std::uint64_t tasks_stolen = 0;
  std::uint64_t copy_on_steal_ops = 0;
  std::uint64_t copy_bytes = 0;
  std::uint64_t unblock_propagations = 0;
  std::int64_t busy_ns = 0;

  // Filled only when per-vertex tracking is on (small fixtures).
  std::vector<std::uint64_t> per_vertex_visits;
  std::vector<std::uint64_t> per_vertex_unblocks;

  void visit_vertex(VertexId v) {
    ++vertex_visits;
    if (!per_vertex_visits.empty()) ++per_vertex_visits[v];
  }
  void count_unblock(VertexId v) {
    ++unblock_propagations;
    if (!per_vertex_unblocks.empty()) ++per_vertex_unblocks[v];
  }

  void merge_from(const StatShard& o) {
    edge_visits += o.edge_visits;
    vertex_visits += o.vertex_visits;
    maximal_paths += o.maximal_paths;
    tasks_executed += o.tasks_executed;
    tasks_stolen += o.tasks_stolen;
    copy_on_steal_ops += o.copy_on_steal_ops;
    copy_bytes += o.copy_bytes;
    unblock_propagations += o.unblock_propagations;
    busy_ns += o.busy_ns;
    for (std::size_t v = 0; v < per_vertex_visits.size() && v < o.per_vertex_visits.size(); ++v)
      per_vertex_visits[v] += o.per_vertex_visits[v];
    for (std::size_t v = 0; v < per_vertex_unblocks.size() && v < o.per_vertex_unblocks.size(); ++v)
      per_vertex_unblocks[v] += o.per_vertex_unblocks[v];
  }
};

/// Per-thread sharded counters; merge at the end of a run. The busy-time sum
/// is the measured work W_p, the driver records the wall time T_p.
class SearchStats {
 public:
  explicit SearchStats(unsigned threads = 1) : shards_(threads) {}

  void enable_vertex_tracking(std::size_t n) {
    for (auto& s : shards_) {
      s.per_vertex_visits.assign(n, 0);
      s.per_vertex_unblocks.assign(n, 0);
    }
  }

  unsigned thread_count() const { return static_cast<unsigned>(shards_.size()); }
  StatShard& shard(unsigned thread) { return shards_[thread]; }
  const StatShard& shard(unsigned thread) const { return shards_[thread]; }

  StatShard merged() const {
    StatShard total;
    bool track = !shards_.empty() && !shards_[0].per_vertex_visits.empty();
    if (track) {
      total.per_vertex_visits.assign(shards_[0].per_vertex_visits.size(), 0);
      total.per_vertex_unblocks.assign(shards_[0].per_vertex_unblocks.size(), 0);
    }
    for (const auto& s : shards_) {
      total.edge_visits += s.edge_visits;
      total.vertex_visits += s.vertex_visits;
      total.maximal_paths += s.maximal_paths;
      total.tasks_executed += s.tasks_executed;
      total.tasks_stolen += s.tasks_stolen;
      total.copy_on_steal_ops += s.copy_on_steal_ops;
      total.copy_bytes += s.copy_bytes;
      total.unblock_propagations += s.unblock_propagations;
      total.busy_ns += s.busy_ns;
      if (track) {
        for (std::size_t v = 0; v < s.per_vertex_visits.size(); ++v)
          total.per_vertex_visits[v] += s.per_vertex_visits[v];
        for (std::size_t v = 0; v < s.per_vertex_unblocks.size(); ++v)
          total.per_vertex_unblocks[v] += s.per_vertex_unblocks[v];
      }
    }
    return total;
  }

  /// W_p: sum of per-thread busy times.
  std::int64_t total_busy_ns() const {
    std::int64_t sum = 0;
    for (const auto& s : shards_) sum += s.busy_ns;
    return sum;
  }

  std::vector<std::int64_t> per_thread_busy_ns() const {
    std::vector<std::int64_t> out;
    out.reserve(shards_.size());
    for (const auto& s : shards_) out.push_back(s.busy_ns);
    return out;
  }

  /// T_p: wall time of the enclosing run, recorded by the driver.
  std::int64_t wall_ns = 0;

 private:
  std::vector<StatShard> shards_;
};

}  // namespace cyclenum
