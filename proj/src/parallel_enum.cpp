#include "cyclenum/parallel_enum.hpp"

#include <cassert>
#include <stdexcept>

#include "cyclenum/rt_search.hpp"

namespace cyclenum {

namespace {

bool anchor_in_shard(EdgeId a, const EnumOptions& opts) {
  return opts.shard_count <= 1 || a % opts.shard_count == opts.shard_index;
}

std::vector<Task> anchor_tasks(const TemporalGraph& g, const EnumOptions& opts) {
  std::vector<Task> tasks;
  tasks.reserve(g.edge_count());
  for (EdgeId a = 0; a < g.edge_count(); ++a) {
    if (!anchor_in_shard(a, opts)) continue;
    Task t;
    t.kind = TaskKind::anchor;
    t.anchor = a;
    tasks.push_back(t);
  }
  return tasks;
}

void check_shards(const ParallelConfig& cfg, const SearchStats& stats) {
  if (stats.thread_count() < cfg.threads)
    throw std::invalid_argument("stats must carry one shard per worker");
}

// ---------------------------------------------------------------------------
// Fine-grained Johnson engine.
//
// A worker owns at most one lineage at a time: its deque holds that lineage's
// edge tasks on top of any remaining anchor tasks, and LIFO popping drains
// the lineage depth-first before the next anchor surfaces. Unwinding below a
// level happens only after every deeper task has been popped or stolen, and
// a steal copies state before the task leaves the deque, so a resident
// task's path prefix is never destroyed under it.
// ---------------------------------------------------------------------------

class JohnsonEngine {
 public:
  JohnsonEngine(const TemporalGraph& g, Timestamp delta, CycleSink& sink, SearchStats& stats,
                const EnumOptions& opts, int cutoff, WorkerPool& pool, FineHooks* hooks)
      : g_(g),
        delta_(delta),
        sink_(sink),
        stats_(stats),
        opts_(opts),
        cutoff_(cutoff),
        pool_(pool),
        hooks_(hooks),
        ctx_(pool.threads()) {}

  void execute(Task& t, unsigned w) {
    switch (t.kind) {
      case TaskKind::anchor:
        retire(w);
        start_anchor(t.anchor, w);
        break;
      case TaskKind::johnson_edge: {
        auto* s = static_cast<JohnsonState*>(t.state);
        if (t.stolen) {
          retire(w);
          ctx_[w].lin.reset(s);
        }
        assert(ctx_[w].lin.get() == s);
        exec_edge(*s, t.snapshot_len, t.edge, w);
        break;
      }
      default:
        assert(false);
    }
    drain_local(w);
  }

  /// Lineage teardown: remaining level ends, then the base frame, mirroring
  /// the tail of the sequential search.
  void retire(unsigned w) {
    auto& c = ctx_[w];
    if (!c.lin) return;
    auto& st = stats_.shard(w);
    unwind_to(*c.lin, base_level(*c.lin), st);
    if (!c.lin->frames.empty()) pop_level(*c.lin, st);
    c.lin.reset();
  }

  void prepare_steal(Task& t, unsigned thief) {
    if (t.kind != TaskKind::johnson_edge) return;
    auto* victim = static_cast<JohnsonState*>(t.state);
    std::lock_guard<std::mutex> lock(victim->guard);
    assert(victim->verts.size() >= t.snapshot_len);
    assert(victim->generation >= t.generation);
    t.state = copy_on_steal_johnson(*victim, t, stats_.shard(thief)).release();
  }

 private:
  struct LocalItem {
    std::uint32_t level;
    AdjEntry edge;
  };
  struct Ctx {
    std::unique_ptr<JohnsonState> lin;
    std::vector<LocalItem> local;
    std::vector<Task> scratch;
    std::vector<EdgeId> edge_buf;
  };

  static std::uint32_t base_level(const JohnsonState& s) {
    return static_cast<std::uint32_t>(s.verts.size() - s.frames.size() + 1);
  }

  void start_anchor(EdgeId a, unsigned w) {
    auto& st = stats_.shard(w);
    if (handle_self_loop_anchor(g_, a, sink_, w, opts_)) return;
    if (!anchor_viable(g_, a, delta_, st)) return;
    const auto& rec = g_.edge(a);
    GraphView view(g_, {rec.ts, saturating_add(rec.ts, delta_)}, {rec.ts, a});
    auto& c = ctx_[w];
    c.lin = std::make_unique<JohnsonState>(view, rec.src, a, g_.vertex_count());
    auto& s = *c.lin;
    s.verts = {rec.src, rec.dst};
    s.edges = {a};
    s.blk.set(rec.src);
    s.blk.set(rec.dst);
    s.on_path.set(rec.src);
    s.on_path.set(rec.dst);
    st.visit_vertex(rec.src);
    st.visit_vertex(rec.dst);
    s.frames.push_back({rec.dst, 0, 0, false});
    fan_out(s, 2, rec.dst, w);
    notify_push(s, w);
  }

  /// Child work for every admissible edge of the just-pushed vertex, in
  /// reverse so LIFO pops examine edges in ascending (ts, id) order.
  void fan_out(JohnsonState& s, std::uint32_t level, VertexId v, unsigned w) {
    auto adj = s.view.out(v);
    s.frames.back().spawned = static_cast<std::uint32_t>(adj.size());
    if (adj.empty()) return;
    auto& c = ctx_[w];
    const int depth = static_cast<int>(level) - 2;
    if (cutoff_ > 0 && depth >= cutoff_) {
      for (std::size_t i = adj.size(); i-- > 0;) c.local.push_back({level, adj[i]});
      return;
    }
    c.scratch.clear();
    for (std::size_t i = adj.size(); i-- > 0;) {
      Task t;
      t.kind = TaskKind::johnson_edge;
      t.state = &s;
      t.snapshot_len = level;
      t.generation = s.generation;
      t.edge = adj[i];
      c.scratch.push_back(t);
    }
    pool_.spawn_batch(w, c.scratch.data(), c.scratch.size());
  }

  void exec_edge(JohnsonState& s, std::uint32_t level, AdjEntry e, unsigned w) {
    auto& st = stats_.shard(w);
    unwind_to(s, level, st);
    assert(s.verts.size() == level);
    ++s.frames.back().popped;
    ++st.edge_visits;
    if (e.to == s.v0) {
      auto& buf = ctx_[w].edge_buf;
      buf.assign(s.edges.begin(), s.edges.end());
      buf.push_back(e.id);
      sink_.emit(w, s.verts, buf);
      s.frames.back().found = true;
      return;
    }
    if (s.blk.test(e.to)) return;
    {
      std::lock_guard<std::mutex> lock(s.guard);
      s.verts.push_back(e.to);
      s.edges.push_back(e.id);
      s.blk.set(e.to);
      s.on_path.set(e.to);
    }
    st.visit_vertex(e.to);
    s.frames.push_back({e.to, 0, 0, false});
    fan_out(s, level + 1, e.to, w);
    notify_push(s, w);
  }

  /// Level end for the deepest frame: classic unblock-or-blist. A level with
  /// stolen tasks counts as "cycle found below": the thief's outcome is
  /// unknown to the victim and unblocking is always sound.
  void pop_level(JohnsonState& s, StatShard& st) {
    JohnsonState::Frame f = s.frames.back();
    s.frames.pop_back();
    const bool found = f.found || f.spawned > f.popped;
    std::lock_guard<std::mutex> lock(s.guard);
    VertexId v = s.verts.back();
    s.verts.pop_back();
    if (!s.edges.empty() && s.edges.size() == s.verts.size()) s.edges.pop_back();
    s.on_path.clear(v);
    ++s.generation;
    if (found) {
      recursive_unblock(v, s.blk, s.blist, &st);
    } else {
      for (AdjEntry e : s.view.out(v)) s.blist.add(e.to, v);
    }
    if (!s.frames.empty()) s.frames.back().found |= found;
  }

  void unwind_to(JohnsonState& s, std::uint32_t level, StatShard& st) {
    while (s.verts.size() > level && !s.frames.empty()) pop_level(s, st);
  }

  void drain_local(unsigned w) {
    auto& c = ctx_[w];
    while (!c.local.empty()) {
      LocalItem item = c.local.back();
      c.local.pop_back();
      exec_edge(*c.lin, item.level, item.edge, w);
    }
  }

  void notify_push(JohnsonState& s, unsigned w) {
    if (hooks_ && hooks_->on_johnson_push) {
      JohnsonStealPoint p{s, pool_.deque(w), pool_, w};
      hooks_->on_johnson_push(p);
    }
  }

  const TemporalGraph& g_;
  Timestamp delta_;
  CycleSink& sink_;
  SearchStats& stats_;
  EnumOptions opts_;
  int cutoff_;
  WorkerPool& pool_;
  FineHooks* hooks_;
  std::vector<Ctx> ctx_;
};

// ---------------------------------------------------------------------------
// Fine-grained Read-Tarjan engine. Tasks are recursive calls (seed
// enumeration at a frontier) and path-extension computations. Same-thread
// children reuse the owner's path and undo-logged blocked set, restored when
// the next task pops; stolen children receive copies. Nothing flows from
// children back to parents, so the total work is schedule independent.
// ---------------------------------------------------------------------------

class RtEngine {
 public:
  RtEngine(const TemporalGraph& g, Timestamp delta, CycleSink& sink, SearchStats& stats,
           const EnumOptions& opts, int cutoff, WorkerPool& pool)
      : g_(g),
        delta_(delta),
        sink_(sink),
        stats_(stats),
        opts_(opts),
        cutoff_(cutoff),
        pool_(pool),
        ctx_(pool.threads()) {}

  void execute(Task& t, unsigned w) {
    switch (t.kind) {
      case TaskKind::anchor:
        retire(w);
        start_anchor(t.anchor, w);
        break;
      case TaskKind::rt_call:
      case TaskKind::rt_extension: {
        auto* s = static_cast<RtState*>(t.state);
        if (t.stolen) {
          retire(w);
          ctx_[w].lin.reset(s);
        }
        assert(ctx_[w].lin.get() == s);
        if (t.kind == TaskKind::rt_call)
          exec_call(*s, t.snapshot_len, t.blk_mark, w);
        else
          exec_extension(*s, t.snapshot_len, t.blk_mark, t.edge, w);
        break;
      }
      default:
        assert(false);
    }
    drain_local(w);
  }

  void retire(unsigned w) {
    auto& c = ctx_[w];
    if (!c.lin) return;
    unwind_to(*c.lin, c.lin->base_len, c.lin->base_mark);
    c.lin.reset();
  }

  void prepare_steal(Task& t, unsigned thief) {
    if (t.kind != TaskKind::rt_call && t.kind != TaskKind::rt_extension) return;
    auto* victim = static_cast<RtState*>(t.state);
    std::lock_guard<std::mutex> lock(victim->guard);
    assert(victim->verts.size() >= t.snapshot_len);
    t.state = copy_on_steal_rt(*victim, t, stats_.shard(thief)).release();
  }

 private:
  struct LocalItem {
    TaskKind kind;
    std::uint32_t level;
    std::uint32_t mark;
    AdjEntry seed;
  };
  struct Ctx {
    std::unique_ptr<RtState> lin;
    std::vector<LocalItem> local;
    std::vector<Task> scratch;
    std::vector<AdjEntry> ext, alt, seeds;
    std::vector<EdgeId> edge_buf;
  };

  void start_anchor(EdgeId a, unsigned w) {
    auto& st = stats_.shard(w);
    if (handle_self_loop_anchor(g_, a, sink_, w, opts_)) return;
    if (!anchor_viable(g_, a, delta_, st)) return;
    const auto& rec = g_.edge(a);
    GraphView view(g_, {rec.ts, saturating_add(rec.ts, delta_)}, {rec.ts, a});
    auto& c = ctx_[w];
    c.lin = std::make_unique<RtState>(view, rec.src, a, g_.vertex_count());
    auto& s = *c.lin;
    s.verts = {rec.src, rec.dst};
    s.edges = {a};
    s.on_path.set(rec.src);
    s.on_path.set(rec.dst);
    st.visit_vertex(rec.src);
    st.visit_vertex(rec.dst);
    exec_call(s, 2, 0, w);
  }

  void exec_call(RtState& s, std::uint32_t level, std::uint32_t mark, unsigned w) {
    auto& st = stats_.shard(w);
    unwind_to(s, level, mark);
    const VertexId frontier = s.verts[level - 1];
    auto& seeds = ctx_[w].seeds;
    seeds.clear();
    for (AdjEntry e : s.view.out(frontier)) {
      ++st.edge_visits;
      if (e.to != s.v0 && (s.on_path.test(e.to) || s.blk.test(e.to))) continue;
      seeds.push_back(e);
    }
    spawn_extensions(s, level, mark, seeds, w);
  }

  void exec_extension(RtState& s, std::uint32_t level, std::uint32_t mark, AdjEntry seed,
                      unsigned w) {
    auto& st = stats_.shard(w);
    unwind_to(s, level, mark);
    auto& c = ctx_[w];
    c.ext.clear();
    if (seed.to == s.v0) {
      c.ext.push_back(seed);
    } else if (!rt_find_extension(s.view, seed, s.v0, s.on_path, s.blk, s.scratch, c.ext, st)) {
      block_touched(s);
      return;
    }
    // Walk the extension; the first alternate extension hands the remainder
    // over to a child call at the current path position.
    bool spawned = false;
    for (std::size_t j = 0; j + 1 < c.ext.size() && !spawned; ++j) {
      AdjEntry step = c.ext[j];
      {
        std::lock_guard<std::mutex> lock(s.guard);
        s.verts.push_back(step.to);
        s.edges.push_back(step.id);
        s.on_path.set(step.to);
      }
      const AdjEntry next = c.ext[j + 1];
      bool alternate = false;
      for (AdjEntry f : s.view.out(step.to)) {
        ++st.edge_visits;
        if (f.id == next.id) continue;
        if (f.to == s.v0) {
          alternate = true;
          break;
        }
        if (s.on_path.test(f.to) || s.blk.test(f.to)) continue;
        if (rt_find_extension(s.view, f, s.v0, s.on_path, s.blk, s.scratch, c.alt, st)) {
          alternate = true;
          break;
        }
        block_touched(s);
      }
      if (alternate) {
        spawn_call(s, static_cast<std::uint32_t>(s.verts.size()), s.blk.mark(), w);
        spawned = true;
      }
    }
    if (!spawned) {
      auto& buf = c.edge_buf;
      buf.assign(s.edges.begin(), s.edges.end());
      buf.push_back(c.ext.back().id);
      sink_.emit(w, s.verts, buf);
    }
  }

  void block_touched(RtState& s) {
    std::lock_guard<std::mutex> lock(s.guard);
    for (VertexId v : s.scratch.touched()) s.blk.block(v);
  }

  void spawn_extensions(RtState& s, std::uint32_t level, std::uint32_t mark,
                        const std::vector<AdjEntry>& seeds, unsigned w) {
    if (seeds.empty()) return;
    auto& c = ctx_[w];
    const int depth = static_cast<int>(level) - 2;
    if (cutoff_ > 0 && depth >= cutoff_) {
      for (std::size_t i = seeds.size(); i-- > 0;)
        c.local.push_back({TaskKind::rt_extension, level, mark, seeds[i]});
      return;
    }
    c.scratch.clear();
    for (std::size_t i = seeds.size(); i-- > 0;) {
      Task t;
      t.kind = TaskKind::rt_extension;
      t.state = &s;
      t.snapshot_len = level;
      t.blk_mark = mark;
      t.generation = s.generation;
      t.edge = seeds[i];
      c.scratch.push_back(t);
    }
    pool_.spawn_batch(w, c.scratch.data(), c.scratch.size());
  }

  void spawn_call(RtState& s, std::uint32_t level, std::uint32_t mark, unsigned w) {
    auto& c = ctx_[w];
    const int depth = static_cast<int>(level) - 2;
    if (cutoff_ > 0 && depth >= cutoff_) {
      c.local.push_back({TaskKind::rt_call, level, mark, AdjEntry{}});
      return;
    }
    Task t;
    t.kind = TaskKind::rt_call;
    t.state = &s;
    t.snapshot_len = level;
    t.blk_mark = mark;
    t.generation = s.generation;
    pool_.spawn(w, t);
  }

  void unwind_to(RtState& s, std::uint32_t level, std::uint32_t mark) {
    std::lock_guard<std::mutex> lock(s.guard);
    while (s.verts.size() > level) {
      s.on_path.clear(s.verts.back());
      s.verts.pop_back();
      if (!s.edges.empty() && s.edges.size() == s.verts.size()) s.edges.pop_back();
      ++s.generation;
    }
    s.blk.rewind(mark);
  }

  void drain_local(unsigned w) {
    auto& c = ctx_[w];
    while (!c.local.empty()) {
      LocalItem item = c.local.back();
      c.local.pop_back();
      if (item.kind == TaskKind::rt_call)
        exec_call(*c.lin, item.level, item.mark, w);
      else
        exec_extension(*c.lin, item.level, item.mark, item.seed, w);
    }
  }

  const TemporalGraph& g_;
  Timestamp delta_;
  CycleSink& sink_;
  SearchStats& stats_;
  EnumOptions opts_;
  int cutoff_;
  WorkerPool& pool_;
  std::vector<Ctx> ctx_;
};

}  // namespace

void coarse_enumerate(const TemporalGraph& g, Timestamp delta, const ParallelConfig& cfg,
                      CycleSink& sink, SearchStats& stats, const EnumOptions& opts) {
  if (delta < 0) throw std::invalid_argument("window size must be non-negative");
  check_shards(cfg, stats);
  sink.ensure_shards(cfg.threads);
  WorkerPool pool({cfg.threads, cfg.seed}, stats);
  WorkerPool::Job job;
  job.execute = [&](Task& t, unsigned w) {
    run_anchor_simple(g, t.anchor, delta, cfg.algorithm, sink, stats, w, opts);
  };
  pool.run(anchor_tasks(g, opts), job);
}

void fine_johnson_enumerate(const TemporalGraph& g, Timestamp delta, const ParallelConfig& cfg,
                            CycleSink& sink, SearchStats& stats, const EnumOptions& opts,
                            FineHooks* hooks) {
  if (delta < 0) throw std::invalid_argument("window size must be non-negative");
  check_shards(cfg, stats);
  sink.ensure_shards(cfg.threads);
  WorkerPool pool({cfg.threads, cfg.seed}, stats);
  JohnsonEngine engine(g, delta, sink, stats, opts, cfg.cutoff_depth, pool, hooks);
  WorkerPool::Job job;
  job.execute = [&](Task& t, unsigned w) { engine.execute(t, w); };
  job.on_idle_lineage = [&](unsigned w) { engine.retire(w); };
  job.prepare_steal = [&](Task& t, unsigned thief) { engine.prepare_steal(t, thief); };
  pool.run(anchor_tasks(g, opts), job);
}

void fine_read_tarjan_enumerate(const TemporalGraph& g, Timestamp delta,
                                const ParallelConfig& cfg, CycleSink& sink, SearchStats& stats,
                                const EnumOptions& opts) {
  if (delta < 0) throw std::invalid_argument("window size must be non-negative");
  check_shards(cfg, stats);
  sink.ensure_shards(cfg.threads);
  WorkerPool pool({cfg.threads, cfg.seed}, stats);
  RtEngine engine(g, delta, sink, stats, opts, cfg.cutoff_depth, pool);
  WorkerPool::Job job;
  job.execute = [&](Task& t, unsigned w) { engine.execute(t, w); };
  job.on_idle_lineage = [&](unsigned w) { engine.retire(w); };
  job.prepare_steal = [&](Task& t, unsigned thief) { engine.prepare_steal(t, thief); };
  pool.run(anchor_tasks(g, opts), job);
}

std::optional<StolenJohnson> steal_oldest_johnson(JohnsonStealPoint& point,
                                                  StatShard& thief_stats) {
  std::unique_ptr<JohnsonState> fresh;
  auto taken = point.deque.steal([&](Task& slot) {
    if (slot.kind != TaskKind::johnson_edge) return false;
    auto* s = static_cast<JohnsonState*>(slot.state);
    std::lock_guard<std::mutex> lock(s->guard);
    fresh = copy_on_steal_johnson(*s, slot, thief_stats);
    slot.state = fresh.get();
    slot.stolen = true;
    return true;
  });
  if (!taken || !fresh) return std::nullopt;
  point.pool.note_external_completion();
  ++thief_stats.tasks_stolen;
  return StolenJohnson{std::move(fresh), *taken};
}

void run_stolen_johnson(StolenJohnson stolen, const TemporalGraph& g, CycleSink& sink,
                        SearchStats& stats, unsigned shard, int cutoff_depth) {
  sink.ensure_shards(1);
  SearchStats local(1);
  WorkerPool pool({1, 0}, local);
  JohnsonEngine engine(g, 0, sink, local, {}, cutoff_depth, pool, nullptr);
  WorkerPool::Job job;
  job.execute = [&](Task& t, unsigned w) { engine.execute(t, w); };
  job.on_idle_lineage = [&](unsigned w) { engine.retire(w); };
  Task t = stolen.task;
  t.state = stolen.state.release();
  t.stolen = true;
  pool.run({t}, job);
  stats.shard(shard).merge_from(local.shard(0));
}

void parallel_for_indexed(unsigned threads, std::uint64_t count, SearchStats& stats,
                          const std::function<void(std::uint64_t, unsigned)>& fn,
                          std::uint64_t seed) {
  WorkerPool pool({threads, seed ? seed : 0x9e3779b97f4a7c15ull}, stats);
  std::vector<Task> initial;
  initial.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Task t;
    t.kind = TaskKind::preproc;
    t.index = i;
    initial.push_back(t);
  }
  WorkerPool::Job job;
  job.execute = [&](Task& t, unsigned w) { fn(t.index, w); };
  pool.run(initial, job);
}

}  // namespace cyclenum
