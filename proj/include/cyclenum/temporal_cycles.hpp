#pragma once

#include <cstdint>
#include <vector>

#include "cyclenum/cycle_sink.hpp"
#include "cyclenum/parallel_enum.hpp"
#include "cyclenum/search_stats.hpp"
#include "cyclenum/seq_enum.hpp"
#include "cyclenum/temporal_graph.hpp"

namespace cyclenum {

/// Per-vertex timestamp thresholds generalizing the blocked set: an edge
/// (u -> v, t) is explorable only while t < ct(v). Unvisited vertices sit at
/// +infinity; blocking lowers the threshold, unblocking raises it.
class ClosingTimes {
 public:
  ClosingTimes() = default;
  explicit ClosingTimes(std::size_t n) : ct_(n, kMaxTimestamp) {}

  Timestamp at(VertexId v) const { return ct_[v]; }
  void set(VertexId v, Timestamp t) { ct_[v] = t; }
  std::size_t size() const { return ct_.size(); }
  std::size_t byte_size() const { return ct_.size() * sizeof(Timestamp); }

 private:
  std::vector<Timestamp> ct_;
};

/// Conditional unblock lists for temporal search: an entry (v, t) in list(w)
/// re-opens v once w's closing time rises past t.
class TemporalUnblockLists {
 public:
  struct Entry {
    VertexId v;
    Timestamp threshold;
  };

  TemporalUnblockLists() = default;
  explicit TemporalUnblockLists(std::size_t n) : lists_(n) {}

  /// Keeps the minimum threshold per waiting vertex.
  void note(VertexId w, VertexId v, Timestamp t) {
    for (auto& e : lists_[w])
      if (e.v == v) {
        if (t < e.threshold) e.threshold = t;
        return;
      }
    lists_[w].push_back({v, t});
  }

  std::vector<Entry>& list(VertexId w) { return lists_[w]; }
  const std::vector<Entry>& list(VertexId w) const { return lists_[w]; }

  std::size_t entry_count() const {
    std::size_t total = 0;
    for (const auto& l : lists_) total += l.size();
    return total;
  }

 private:
  std::vector<std::vector<Entry>> lists_;
};

/// A vertex sequence with one admissible timestamp set per hop; it stands for
/// every concrete path whose per-hop timestamps ascend.
struct PathBundle {
  std::vector<VertexId> vertices;               // k+1 vertices
  std::vector<std::vector<Timestamp>> hop_ts;   // k ascending timestamp sets
};

/// Every strictly (or weakly) ascending assignment of one timestamp per hop.
std::vector<std::vector<Timestamp>> expand_bundle(const PathBundle& b, bool strict = true);

/// Number of such assignments, via the prefix-sum dynamic program the
/// enumerator uses for counting without expansion.
std::uint64_t bundle_assignment_count(const PathBundle& b, bool strict = true);

enum class Direction { forward, backward };

/// Vertices connected to `source` by time-respecting paths. Forward: paths
/// out of source whose first edge is strictly after t0 (at or after in
/// non-strict mode). Backward: vertices that can reach source, using edges
/// strictly after t0. All edges stay at or below window_end.
BlockedSet temporal_reachability(const TemporalGraph& g, VertexId source, Timestamp t0,
                                 Timestamp window_end, Direction dir, bool strict = true);

/// Superset of all vertices on temporal cycles through the anchor within its
/// window: forward reachability of the anchor head intersected with backward
/// reachability of its tail, plus both endpoints.
struct CycleUnion {
  BlockedSet members;
  std::size_t population = 0;
};
CycleUnion cycle_union(const TemporalGraph& g, EdgeId anchor, Timestamp delta,
                       bool strict = true);

struct TemporalOptions {
  bool closing_times = true;
  bool bundles = true;
  bool cycle_unions = true;
  bool strict = true;           // strictly ascending timestamps
  bool bundle_weighted = false; // count one per bundle instead of expanding
};

/// Enumerates every temporal cycle of every [t, t+delta] window exactly once,
/// anchored at its minimum-(ts, id) edge. Granularity and thread count come
/// from cfg; {threads = 1, coarse} is the sequential mode.
void temporal_enumerate(const TemporalGraph& g, Timestamp delta, const ParallelConfig& cfg,
                        CycleSink& sink, SearchStats& stats, const TemporalOptions& topts = {},
                        const EnumOptions& opts = {});

/// One sequential anchored temporal search (used per task by the coarse
/// driver and directly by tests).
void temporal_search_anchor(const TemporalGraph& g, EdgeId anchor, Timestamp delta,
                            const TemporalOptions& topts, const EnumOptions& opts,
                            CycleSink& sink, SearchStats& stats, unsigned shard);

}  // namespace cyclenum
