#pragma once

// Test-side brute-force oracles, independent of the library's anchored search
// machinery. A cycle is reported as its canonical edge-id sequence (rotated so
// the minimum (ts, id) edge comes first). enumerate_all must produce exactly
// the set of cycles whose timestamp spread fits in one window of size delta.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cyclenum/cycle_sink.hpp"
#include "cyclenum/temporal_graph.hpp"

namespace oracle {

using cyclenum::AdjEntry;
using cyclenum::CycleRecord;
using cyclenum::EdgeId;
using cyclenum::TemporalGraph;
using cyclenum::Timestamp;
using cyclenum::VertexId;

inline CycleRecord canonicalize(const TemporalGraph& g, std::vector<VertexId> verts,
                                std::vector<EdgeId> edges) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    auto ki = g.edge(edges[i]).ts, kb = g.edge(edges[best]).ts;
    if (ki < kb || (ki == kb && edges[i] < edges[best])) best = i;
  }
  std::rotate(verts.begin(), verts.begin() + best, verts.end());
  std::rotate(edges.begin(), edges.begin() + best, edges.end());
  return CycleRecord{std::move(verts), std::move(edges)};
}

/// All simple cycles (as edge sequences) whose timestamps fit in some window
/// of size delta, i.e. max_ts - min_ts <= delta. Exponential; small n only.
inline std::vector<CycleRecord> simple_cycles(const TemporalGraph& g, Timestamp delta,
                                              bool allow_self_loops = false,
                                              bool temporal_only = false,
                                              bool strict_ascent = true) {
  std::vector<CycleRecord> found;
  const std::size_t n = g.vertex_count();
  std::vector<char> on_path(n, 0);
  std::vector<VertexId> verts;
  std::vector<EdgeId> edges;

  auto spread_ok = [&](EdgeId extra) {
    Timestamp lo = g.edge(extra).ts, hi = lo;
    for (EdgeId e : edges) {
      lo = std::min(lo, g.edge(e).ts);
      hi = std::max(hi, g.edge(e).ts);
    }
    return delta == cyclenum::kMaxTimestamp || hi - lo <= delta;
  };
  auto ascending_ok = [&](const std::vector<EdgeId>& cyc) {
    for (std::size_t i = 1; i < cyc.size(); ++i) {
      Timestamp prev = g.edge(cyc[i - 1]).ts, cur = g.edge(cyc[i]).ts;
      if (strict_ascent ? cur <= prev : cur < prev) return false;
    }
    return true;
  };

  // To see each cycle once, only start from its minimum-(ts, id) edge and
  // check at emission that no smaller edge slipped in.
  for (EdgeId start = 0; start < g.edge_count(); ++start) {
    const auto& srec = g.edge(start);
    if (srec.src == srec.dst) {
      if (allow_self_loops) found.push_back(CycleRecord{{srec.src}, {start}});
      continue;
    }
    const VertexId v0 = srec.src;
    on_path[v0] = on_path[srec.dst] = 1;
    verts = {v0, srec.dst};
    edges = {start};

    auto rec = [&](auto&& self, VertexId at) -> void {
      for (const AdjEntry& e : g.out(at)) {
        if (e.ts < srec.ts || (e.ts == srec.ts && e.id < start)) continue;  // not the min edge
        if (!spread_ok(e.id)) continue;
        if (e.to == v0) {
          edges.push_back(e.id);
          if (!temporal_only || ascending_ok(edges)) found.push_back(CycleRecord{verts, edges});
          edges.pop_back();
        } else if (!on_path[e.to]) {
          on_path[e.to] = 1;
          verts.push_back(e.to);
          edges.push_back(e.id);
          self(self, e.to);
          edges.pop_back();
          verts.pop_back();
          on_path[e.to] = 0;
        }
      }
    };
    rec(rec, srec.dst);
    on_path[v0] = on_path[srec.dst] = 0;
  }
  return found;
}

/// Strictly (or weakly) ascending temporal cycles with spread <= delta.
inline std::vector<CycleRecord> temporal_cycles(const TemporalGraph& g, Timestamp delta,
                                                bool strict = true) {
  std::vector<CycleRecord> out;
  for (auto& c : simple_cycles(g, delta, false, true, strict)) out.push_back(std::move(c));
  return out;
}

inline std::vector<CycleRecord> sorted(std::vector<CycleRecord> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace oracle
