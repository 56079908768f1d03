#pragma once

#include <cstdint>
#include <vector>

#include "cyclenum/search_stats.hpp"
#include "cyclenum/seq_enum.hpp"
#include "cyclenum/temporal_graph.hpp"

namespace cyclenum {

/// Blocked set with an undo log and rewind marks. Read-Tarjan allocates a
/// fresh blocked set per path-extension computation; structuring it as an
/// undo scope gives the same semantics without copying, and a thief can
/// reconstruct the set as of any live mark from a copy plus the log suffix.
class UndoBlockedSet {
 public:
  UndoBlockedSet() = default;
  explicit UndoBlockedSet(std::size_t n) : bits_(n) {}

  bool test(VertexId v) const { return bits_.test(v); }

  void block(VertexId v) {
    if (!bits_.test(v)) {
      bits_.set(v);
      log_.push_back(v);
    }
  }

  std::uint32_t mark() const { return static_cast<std::uint32_t>(log_.size()); }

  void rewind(std::uint32_t mark) {
    while (log_.size() > mark) {
      bits_.clear(log_.back());
      log_.pop_back();
    }
  }

  /// Copy of this set as it was when `mark` was taken.
  UndoBlockedSet snapshot(std::uint32_t mark) const {
    UndoBlockedSet out = *this;
    out.rewind(mark);
    return out;
  }

  std::size_t copy_byte_size() const {
    return bits_.byte_size() + log_.size() * sizeof(VertexId);
  }

 private:
  BlockedSet bits_;
  std::vector<VertexId> log_;
};

/// Epoch-stamped scratch visited set; clearing is O(1) per search.
class VisitScratch {
 public:
  VisitScratch() = default;
  explicit VisitScratch(std::size_t n) : stamp_(n, 0) {}

  void begin() {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    touched_.clear();
  }
  bool visited(VertexId v) const { return stamp_[v] == epoch_; }
  void mark(VertexId v) {
    stamp_[v] = epoch_;
    touched_.push_back(v);
  }
  const std::vector<VertexId>& touched() const { return touched_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<VertexId> touched_;
  std::uint32_t epoch_ = 0;
};

/// DFS from `seed.to` toward `target`, avoiding vertices on the current path
/// and blocked vertices. On success fills `ext` with the edge sequence
/// seed..target and blocks nothing; on failure blocks every vertex the DFS
/// touched (the touched set is closed under admissible successors, so all of
/// it is dead for this path prefix). The caller has already examined and
/// accepted the seed edge itself.
bool rt_find_extension(const GraphView& view, AdjEntry seed, VertexId target,
                       const BlockedSet& on_path, UndoBlockedSet& blk, VisitScratch& scratch,
                       std::vector<AdjEntry>& ext, StatShard& st);

}  // namespace cyclenum
