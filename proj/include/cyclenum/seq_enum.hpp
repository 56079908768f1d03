#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cyclenum/cycle_sink.hpp"
#include "cyclenum/search_stats.hpp"
#include "cyclenum/temporal_graph.hpp"

namespace cyclenum {

enum class Algo { tiernan, johnson, read_tarjan };

/// Bitmap over vertex ids.
class BlockedSet {
 public:
  BlockedSet() = default;
  explicit BlockedSet(std::size_t n) : bits_((n + 63) / 64, 0) {}

  bool test(VertexId v) const { return (bits_[v >> 6] >> (v & 63)) & 1; }
  void set(VertexId v) { bits_[v >> 6] |= std::uint64_t(1) << (v & 63); }
  void clear(VertexId v) { bits_[v >> 6] &= ~(std::uint64_t(1) << (v & 63)); }
  void reset() { std::fill(bits_.begin(), bits_.end(), 0); }

  std::size_t byte_size() const { return bits_.size() * sizeof(std::uint64_t); }
  const std::vector<std::uint64_t>& words() const { return bits_; }

 private:
  std::vector<std::uint64_t> bits_;
};

/// Blist: per-vertex lists of vertices to release when the key vertex is
/// unblocked. A vertex appears at most once in any one list.
class UnblockList {
 public:
  UnblockList() = default;
  explicit UnblockList(std::size_t n) : lists_(n) {}

  void add(VertexId w, VertexId v) {
    auto& lst = lists_[w];
    for (auto u : lst)
      if (u == v) return;
    lst.push_back(v);
  }

  std::vector<VertexId>& list(VertexId w) { return lists_[w]; }
  const std::vector<VertexId>& list(VertexId w) const { return lists_[w]; }

  std::size_t entry_count() const {
    std::size_t total = 0;
    for (const auto& l : lists_) total += l.size();
    return total;
  }

  void clear_all() {
    for (auto& l : lists_) l.clear();
  }

 private:
  std::vector<std::vector<VertexId>> lists_;
};

/// The current simple path of a search, with O(1) membership.
class Path {
 public:
  Path() = default;
  explicit Path(std::size_t n) : on_path_(n) {}

  void push(VertexId v, EdgeId via) {
    verts_.push_back(v);
    edges_.push_back(via);
    on_path_.set(v);
  }
  void push_root(VertexId v) {
    verts_.push_back(v);
    on_path_.set(v);
  }
  void pop() {
    on_path_.clear(verts_.back());
    verts_.pop_back();
    if (!edges_.empty() && edges_.size() == verts_.size()) edges_.pop_back();
  }

  bool contains(VertexId v) const { return on_path_.test(v); }
  std::size_t length() const { return verts_.size(); }
  VertexId back() const { return verts_.back(); }
  std::span<const VertexId> vertices() const { return verts_; }
  std::span<const EdgeId> edges() const { return edges_; }
  const BlockedSet& membership() const { return on_path_; }

 private:
  std::vector<VertexId> verts_;
  std::vector<EdgeId> edges_;  // edges_[i] joins verts_[i] -> verts_[i+1]
  BlockedSet on_path_;
};

/// Removes v from blk and cascades through blist until a fixed point.
/// Unblocking a vertex that is not blocked is a no-op.
void recursive_unblock(VertexId v, BlockedSet& blk, UnblockList& blist,
                       StatShard* stats = nullptr);

struct EnumOptions {
  bool allow_self_loops = false;
  // Anchor sharding for manual multi-process runs: keep anchors with
  // id % shard_count == shard_index. shard_count <= 1 keeps everything.
  unsigned shard_index = 0;
  unsigned shard_count = 1;
};

/// Brute-force search: every simple path is extended until it dies or closes.
/// Also counts maximal simple paths (the s statistic).
void tiernan_from_edge(const GraphView& view, EdgeId anchor, CycleSink& sink, SearchStats& stats,
                       unsigned shard = 0);

/// Johnson's algorithm with blocked set and delayed recursive unblocking.
void johnson_from_edge(const GraphView& view, EdgeId anchor, CycleSink& sink, SearchStats& stats,
                       unsigned shard = 0);

/// Read-Tarjan: per-call path extensions found by DFS, alternate extensions
/// branching the recursion, a fresh blocked set per extension computation.
void read_tarjan_from_edge(const GraphView& view, EdgeId anchor, CycleSink& sink,
                           SearchStats& stats, unsigned shard = 0);

/// Anchored sweep over all edges: every simple cycle of every [t, t+delta]
/// window is reported exactly once, from its minimum-(ts, id) edge.
void enumerate_all(const TemporalGraph& g, Timestamp delta, Algo algo, CycleSink& sink,
                   SearchStats& stats, const EnumOptions& opts = {});

/// One anchored search with the window and lex bound derived from the anchor.
/// Skips anchors that cannot lie on any cycle (see anchor_viable).
void run_anchor_simple(const TemporalGraph& g, EdgeId anchor, Timestamp delta, Algo algo,
                       CycleSink& sink, SearchStats& stats, unsigned shard,
                       const EnumOptions& opts);

/// Cycle-start prescan: true when the anchor's source is reachable from its
/// destination inside the anchored view, i.e. some cycle through the anchor
/// exists. Edge examinations are charged to the shard's work counter.
bool anchor_viable(const TemporalGraph& g, EdgeId anchor, Timestamp delta, StatShard& st);

/// Shared by drivers: emits a self-loop anchor as a length-1 cycle when
/// allowed; returns true when the anchor needs no further search.
inline bool handle_self_loop_anchor(const TemporalGraph& g, EdgeId anchor, CycleSink& sink,
                                    unsigned shard, const EnumOptions& opts) {
  const auto& rec = g.edge(anchor);
  if (rec.src != rec.dst) return false;
  if (opts.allow_self_loops) {
    VertexId v[1] = {rec.src};
    EdgeId e[1] = {anchor};
    sink.emit(shard, v, e);
  }
  return true;
}

}  // namespace cyclenum
