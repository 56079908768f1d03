#include "cyclenum/seq_enum.hpp"

#include <stdexcept>

#include "cyclenum/rt_search.hpp"

namespace cyclenum {

void recursive_unblock(VertexId v, BlockedSet& blk, UnblockList& blist, StatShard* stats) {
  if (!blk.test(v)) return;
  std::vector<VertexId> work{v};
  while (!work.empty()) {
    VertexId u = work.back();
    work.pop_back();
    if (!blk.test(u)) continue;
    blk.clear(u);
    if (stats) stats->count_unblock(u);
    auto& lst = blist.list(u);
    for (VertexId w : lst) work.push_back(w);
    lst.clear();
  }
}

namespace {

struct LevelFrame {
  VertexId v;
  const AdjEntry* cur;
  const AdjEntry* end;
  bool flag;  // Johnson: cycle found below; Tiernan: path extended
};

LevelFrame make_frame(const GraphView& view, VertexId v) {
  auto sp = view.out(v);
  return {v, sp.data(), sp.data() + sp.size(), false};
}

}  // namespace

void tiernan_from_edge(const GraphView& view, EdgeId anchor, CycleSink& sink, SearchStats& stats,
                       unsigned shard) {
  auto& st = stats.shard(shard);
  const auto& arec = view.graph().edge(anchor);
  const VertexId v0 = arec.src;
  Path pi(view.graph().vertex_count());
  pi.push_root(v0);
  st.visit_vertex(v0);
  pi.push(arec.dst, anchor);
  st.visit_vertex(arec.dst);

  std::vector<LevelFrame> stack{make_frame(view, arec.dst)};
  std::vector<EdgeId> edge_buf;
  while (!stack.empty()) {
    auto& f = stack.back();
    if (f.cur != f.end) {
      AdjEntry e = *(f.cur++);
      ++st.edge_visits;
      if (e.to == v0) {
        edge_buf.assign(pi.edges().begin(), pi.edges().end());
        edge_buf.push_back(e.id);
        sink.emit(shard, pi.vertices(), edge_buf);
      } else if (!pi.contains(e.to)) {
        f.flag = true;
        pi.push(e.to, e.id);
        st.visit_vertex(e.to);
        stack.push_back(make_frame(view, e.to));
      }
      continue;
    }
    if (!f.flag) ++st.maximal_paths;
    stack.pop_back();
    pi.pop();
  }
}

void johnson_from_edge(const GraphView& view, EdgeId anchor, CycleSink& sink, SearchStats& stats,
                       unsigned shard) {
  auto& st = stats.shard(shard);
  const auto& g = view.graph();
  const auto& arec = g.edge(anchor);
  const VertexId v0 = arec.src;

  Path pi(g.vertex_count());
  BlockedSet blk(g.vertex_count());
  UnblockList blist(g.vertex_count());

  pi.push_root(v0);
  blk.set(v0);
  st.visit_vertex(v0);
  pi.push(arec.dst, anchor);
  blk.set(arec.dst);
  st.visit_vertex(arec.dst);

  std::vector<LevelFrame> stack{make_frame(view, arec.dst)};
  std::vector<EdgeId> edge_buf;
  while (!stack.empty()) {
    auto& f = stack.back();
    if (f.cur != f.end) {
      AdjEntry e = *(f.cur++);
      ++st.edge_visits;
      if (e.to == v0) {
        edge_buf.assign(pi.edges().begin(), pi.edges().end());
        edge_buf.push_back(e.id);
        sink.emit(shard, pi.vertices(), edge_buf);
        f.flag = true;
      } else if (!blk.test(e.to)) {
        pi.push(e.to, e.id);
        blk.set(e.to);
        st.visit_vertex(e.to);
        stack.push_back(make_frame(view, e.to));
      }
      continue;
    }
    LevelFrame done = f;
    stack.pop_back();
    pi.pop();
    if (done.flag) {
      recursive_unblock(done.v, blk, blist, &st);
    } else {
      // Delayed unblocking: done.v is released when any neighbor unblocks.
      for (AdjEntry e : view.out(done.v)) blist.add(e.to, done.v);
    }
    if (!stack.empty()) stack.back().flag |= done.flag;
  }
}

bool rt_find_extension(const GraphView& view, AdjEntry seed, VertexId target,
                       const BlockedSet& on_path, UndoBlockedSet& blk, VisitScratch& scratch,
                       std::vector<AdjEntry>& ext, StatShard& st) {
  struct DfsFrame {
    AdjEntry edge;
    const AdjEntry* cur;
    const AdjEntry* end;
  };
  scratch.begin();
  std::vector<DfsFrame> stack;
  auto push = [&](AdjEntry e) {
    scratch.mark(e.to);
    st.visit_vertex(e.to);
    auto sp = view.out(e.to);
    stack.push_back({e, sp.data(), sp.data() + sp.size()});
  };
  push(seed);
  while (!stack.empty()) {
    auto& f = stack.back();
    if (f.cur == f.end) {
      stack.pop_back();
      continue;
    }
    AdjEntry e = *(f.cur++);
    ++st.edge_visits;
    if (e.to == target) {
      ext.clear();
      for (const auto& fr : stack) ext.push_back(fr.edge);
      ext.push_back(e);
      return true;
    }
    if (on_path.test(e.to) || blk.test(e.to) || scratch.visited(e.to)) continue;
    push(e);
  }
  for (VertexId v : scratch.touched()) blk.block(v);
  return false;
}

namespace {

struct RtCallFrame {
  std::uint32_t base_len;
  std::uint32_t blk_mark;
  std::vector<AdjEntry> seeds;
  std::size_t next_seed = 0;
};

std::vector<AdjEntry> rt_collect_seeds(const GraphView& view, VertexId frontier, VertexId v0,
                                       const Path& pi, const UndoBlockedSet& blk, StatShard& st) {
  std::vector<AdjEntry> seeds;
  for (AdjEntry e : view.out(frontier)) {
    ++st.edge_visits;
    if (e.to == v0) {
      seeds.push_back(e);
      continue;
    }
    if (pi.contains(e.to) || blk.test(e.to)) continue;
    seeds.push_back(e);
  }
  return seeds;
}

}  // namespace

void read_tarjan_from_edge(const GraphView& view, EdgeId anchor, CycleSink& sink,
                           SearchStats& stats, unsigned shard) {
  auto& st = stats.shard(shard);
  const auto& g = view.graph();
  const auto& arec = g.edge(anchor);
  const VertexId v0 = arec.src;
  const std::size_t n = g.vertex_count();

  Path pi(n);
  pi.push_root(v0);
  st.visit_vertex(v0);
  pi.push(arec.dst, anchor);
  st.visit_vertex(arec.dst);

  UndoBlockedSet blk(n);
  VisitScratch scratch(n);
  std::vector<AdjEntry> ext;
  std::vector<AdjEntry> alt;
  std::vector<EdgeId> edge_buf;

  std::vector<RtCallFrame> calls;
  calls.push_back({static_cast<std::uint32_t>(pi.length()), blk.mark(),
                   rt_collect_seeds(view, arec.dst, v0, pi, blk, st)});

  while (!calls.empty()) {
    auto& call = calls.back();
    while (pi.length() > call.base_len) pi.pop();
    blk.rewind(call.blk_mark);
    if (call.next_seed == call.seeds.size()) {
      calls.pop_back();
      continue;
    }
    AdjEntry seed = call.seeds[call.next_seed++];

    if (seed.to == v0) {
      ext.assign(1, seed);
    } else if (!rt_find_extension(view, seed, v0, pi.membership(), blk, scratch, ext, st)) {
      continue;
    }

    // Walk the extension; at each appended vertex look for an alternate
    // extension. The first alternate hands the rest over to a child call.
    bool spawned = false;
    for (std::size_t j = 0; j + 1 < ext.size() && !spawned; ++j) {
      AdjEntry step = ext[j];
      pi.push(step.to, step.id);
      const AdjEntry next = ext[j + 1];
      bool alternate = false;
      for (AdjEntry f : view.out(step.to)) {
        ++st.edge_visits;
        if (f.id == next.id) continue;
        if (f.to == v0) {
          alternate = true;
          break;
        }
        if (pi.contains(f.to) || blk.test(f.to)) continue;
        if (rt_find_extension(view, f, v0, pi.membership(), blk, scratch, alt, st)) {
          alternate = true;
          break;
        }
      }
      if (alternate) {
        calls.push_back({static_cast<std::uint32_t>(pi.length()), blk.mark(),
                         rt_collect_seeds(view, step.to, v0, pi, blk, st)});
        spawned = true;
      }
    }
    if (!spawned) {
      edge_buf.assign(pi.edges().begin(), pi.edges().end());
      edge_buf.push_back(ext.back().id);
      sink.emit(shard, pi.vertices(), edge_buf);
    }
  }
}

bool anchor_viable(const TemporalGraph& g, EdgeId anchor, Timestamp delta, StatShard& st) {
  const auto& rec = g.edge(anchor);
  GraphView view(g, {rec.ts, saturating_add(rec.ts, delta)}, {rec.ts, anchor});
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexId> work{rec.dst};
  seen[rec.dst] = 1;
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    for (const AdjEntry& e : view.out(v)) {
      ++st.edge_visits;
      if (e.to == rec.src) return true;
      if (!seen[e.to]) {
        seen[e.to] = 1;
        work.push_back(e.to);
      }
    }
  }
  return false;
}

void run_anchor_simple(const TemporalGraph& g, EdgeId anchor, Timestamp delta, Algo algo,
                       CycleSink& sink, SearchStats& stats, unsigned shard,
                       const EnumOptions& opts) {
  if (handle_self_loop_anchor(g, anchor, sink, shard, opts)) return;
  if (!anchor_viable(g, anchor, delta, stats.shard(shard))) return;
  const auto& rec = g.edge(anchor);
  GraphView view(g, {rec.ts, saturating_add(rec.ts, delta)}, {rec.ts, anchor});
  switch (algo) {
    case Algo::tiernan:
      tiernan_from_edge(view, anchor, sink, stats, shard);
      break;
    case Algo::johnson:
      johnson_from_edge(view, anchor, sink, stats, shard);
      break;
    case Algo::read_tarjan:
      read_tarjan_from_edge(view, anchor, sink, stats, shard);
      break;
  }
}

void enumerate_all(const TemporalGraph& g, Timestamp delta, Algo algo, CycleSink& sink,
                   SearchStats& stats, const EnumOptions& opts) {
  if (delta < 0) throw std::invalid_argument("window size must be non-negative");
  for (EdgeId a = 0; a < g.edge_count(); ++a) {
    if (opts.shard_count > 1 && a % opts.shard_count != opts.shard_index) continue;
    run_anchor_simple(g, a, delta, algo, sink, stats, 0, opts);
  }
}

}  // namespace cyclenum
