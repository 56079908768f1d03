#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclenum {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Timestamp = std::int64_t;

constexpr Timestamp kMaxTimestamp = std::numeric_limits<Timestamp>::max();
constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Inclusive time window [start, end].
struct TimeWindow {
  Timestamp start = 0;
  Timestamp end = 0;

  Timestamp size() const { return end - start; }
  bool contains(Timestamp t) const { return start <= t && t <= end; }
};

/// Window end for an anchored search, saturating instead of overflowing.
inline Timestamp saturating_add(Timestamp t, Timestamp delta) {
  if (delta > kMaxTimestamp - t) return kMaxTimestamp;
  return t + delta;
}

struct EdgeRecord {
  VertexId src = 0;
  VertexId dst = 0;
  Timestamp ts = 0;
};

/// Lexicographic (timestamp, edge id) key. Edge ids are assigned in ascending
/// (timestamp, input order), so this key totally orders the edge set.
struct LexKey {
  Timestamp ts = 0;
  EdgeId id = 0;

  friend bool operator<(const LexKey& a, const LexKey& b) {
    return a.ts != b.ts ? a.ts < b.ts : a.id < b.id;
  }
  friend bool operator<=(const LexKey& a, const LexKey& b) { return !(b < a); }
  friend bool operator==(const LexKey& a, const LexKey& b) {
    return a.ts == b.ts && a.id == b.id;
  }
};

struct AdjEntry {
  VertexId to = 0;
  Timestamp ts = 0;
  EdgeId id = 0;

  LexKey key() const { return {ts, id}; }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LoadOptions {
  char delimiter = '\0';  // '\0' means any run of whitespace
  bool has_header = false;
};

/// Immutable directed temporal multigraph in CSR form.
///
/// Adjacency lists (both directions) are sorted ascending by (timestamp,
/// edge id). Edge ids are a permutation of 0..e-1 assigned in ascending
/// (timestamp, input order). A secondary grouped adjacency collects parallel
/// edges per (src, dst) pair for bundled temporal search.
class TemporalGraph {
 public:
  struct Group {
    VertexId to = 0;
    std::uint32_t begin = 0;  // indices into grouped_out_ entries
    std::uint32_t end = 0;
  };

  TemporalGraph() = default;

  /// Build from records whose endpoints are already dense in [0, vertex_count).
  static TemporalGraph from_edges(std::vector<EdgeRecord> edges, std::size_t vertex_count);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const EdgeRecord& edge(EdgeId e) const { return edges_[e]; }

  std::span<const AdjEntry> out(VertexId v) const {
    return {out_entries_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
  }
  std::span<const AdjEntry> in(VertexId v) const {
    return {in_entries_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
  }

  std::span<const Group> out_groups(VertexId v) const {
    return {groups_.data() + group_offsets_[v], group_offsets_[v + 1] - group_offsets_[v]};
  }
  std::span<const AdjEntry> group_entries(const Group& g) const {
    return {grouped_out_.data() + g.begin, static_cast<std::size_t>(g.end - g.begin)};
  }

  Timestamp min_ts() const { return edges_.empty() ? 0 : edges_.front().ts; }
  Timestamp max_ts() const { return edges_.empty() ? 0 : edges_.back().ts; }

  /// Original vertex label for a dense id (identity when built from_edges).
  std::int64_t external_id(VertexId v) const {
    return external_ids_.empty() ? static_cast<std::int64_t>(v) : external_ids_[v];
  }

  friend TemporalGraph load_edge_list(std::istream& is, const LoadOptions& opts);

 private:
  void build_indexes();

  std::size_t n_ = 0;
  std::vector<EdgeRecord> edges_;  // indexed by EdgeId, sorted by (ts, input order)
  std::vector<std::uint32_t> out_offsets_{0};
  std::vector<AdjEntry> out_entries_;
  std::vector<std::uint32_t> in_offsets_{0};
  std::vector<AdjEntry> in_entries_;  // AdjEntry::to holds the source vertex
  std::vector<std::uint32_t> group_offsets_{0};
  std::vector<Group> groups_;
  std::vector<AdjEntry> grouped_out_;
  std::vector<std::int64_t> external_ids_;
};

TemporalGraph load_edge_list(std::istream& is, const LoadOptions& opts = {});
TemporalGraph load_edge_list_file(const std::string& path, const LoadOptions& opts = {});

/// Writes one "src dst ts" line per edge, in edge id order, using original labels.
void write_edge_list(const TemporalGraph& g, std::ostream& os);

/// Read-only window- and anchor-restricted adjacency view.
///
/// An entry is admissible iff its timestamp lies in [window.start, window.end]
/// and its (ts, id) key is not below `min_key`. For anchored searches the
/// anchor edge carries the minimum key of any cycle reported from it.
class GraphView {
 public:
  GraphView(const TemporalGraph& g, TimeWindow w)
      : g_(&g), window_(w), min_key_{w.start, 0} {}
  GraphView(const TemporalGraph& g, TimeWindow w, LexKey min_key)
      : g_(&g), window_(w), min_key_(min_key) {}

  const TemporalGraph& graph() const { return *g_; }
  TimeWindow window() const { return window_; }
  LexKey min_key() const { return min_key_; }

  bool admissible(const AdjEntry& e) const {
    return e.ts <= window_.end && min_key_ <= e.key();
  }

  /// Admissible slice of the out adjacency of v, ascending by (ts, id).
  std::span<const AdjEntry> out(VertexId v) const { return slice(g_->out(v)); }
  std::span<const AdjEntry> in(VertexId v) const { return slice(g_->in(v)); }

 private:
  std::span<const AdjEntry> slice(std::span<const AdjEntry> all) const;

  const TemporalGraph* g_;
  TimeWindow window_;
  LexKey min_key_;
};

}  // namespace cyclenum
