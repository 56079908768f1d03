#include "cyclenum/task_runtime.hpp"

#include <chrono>
#include <cstdlib>
#include <random>
#include <thread>

namespace cyclenum {

std::unique_ptr<JohnsonState> copy_on_steal_johnson(const JohnsonState& victim, const Task& task,
                                                    StatShard& st) {
  const std::size_t n = victim.blk.words().size() * 64;
  auto fresh = std::make_unique<JohnsonState>(victim.view, victim.v0, victim.anchor, n);
  const std::uint32_t keep = task.snapshot_len;
  fresh->verts.assign(victim.verts.begin(), victim.verts.begin() + keep);
  fresh->edges.assign(victim.edges.begin(), victim.edges.begin() + (keep - 1));
  fresh->blk = victim.blk;
  fresh->blist = victim.blist;
  for (VertexId v : fresh->verts) fresh->on_path.set(v);

  std::size_t bytes = fresh->verts.size() * sizeof(VertexId) +
                      fresh->edges.size() * sizeof(EdgeId) + fresh->blk.byte_size() +
                      fresh->blist.entry_count() * sizeof(VertexId);

  // Π1 \ Π2, restored in reverse path order.
  for (std::size_t i = victim.verts.size(); i-- > keep;)
    recursive_unblock(victim.verts[i], fresh->blk, fresh->blist, &st);

  fresh->frames.push_back({fresh->verts.back()});
  ++st.copy_on_steal_ops;
  st.copy_bytes += bytes;
  return fresh;
}

std::unique_ptr<RtState> copy_on_steal_rt(const RtState& victim, const Task& task, StatShard& st) {
  const std::size_t n = victim.on_path.words().size() * 64;
  auto fresh = std::make_unique<RtState>(victim.view, victim.v0, victim.anchor, n);
  const std::uint32_t keep = task.snapshot_len;
  fresh->verts.assign(victim.verts.begin(), victim.verts.begin() + keep);
  fresh->edges.assign(victim.edges.begin(), victim.edges.begin() + (keep - 1));
  for (VertexId v : fresh->verts) fresh->on_path.set(v);
  fresh->blk = victim.blk.snapshot(task.blk_mark);
  fresh->base_len = task.snapshot_len;
  fresh->base_mark = task.blk_mark;

  ++st.copy_on_steal_ops;
  st.copy_bytes += fresh->verts.size() * sizeof(VertexId) +
                   fresh->edges.size() * sizeof(EdgeId) + fresh->blk.copy_byte_size();
  return fresh;
}

WorkerPool::WorkerPool(Config cfg, SearchStats& stats)
    : cfg_(cfg), stats_(stats), deques_(cfg.threads) {}

void WorkerPool::run(const std::vector<Task>& initial, Job job) {
  for (std::size_t i = 0; i < initial.size(); ++i) {
    in_flight_.fetch_add(1, std::memory_order_relaxed);
    deques_[i % cfg_.threads].push(initial[i]);
  }
  std::vector<std::thread> workers;
  workers.reserve(cfg_.threads - 1);
  for (unsigned id = 1; id < cfg_.threads; ++id)
    workers.emplace_back([this, id, &job] { worker_loop(id, job); });
  worker_loop(0, job);
  for (auto& w : workers) w.join();
}

void WorkerPool::worker_loop(unsigned id, const Job& job) {
  using clock = std::chrono::steady_clock;
  std::mt19937_64 rng(cfg_.seed + 0x9e3779b97f4a7c15ull * (id + 1));
  auto& shard = stats_.shard(id);

  bool busy = false;
  clock::time_point busy_start{};
  auto set_busy = [&](bool now) {
    if (now == busy) return;
    if (now)
      busy_start = clock::now();
    else
      shard.busy_ns +=
          std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - busy_start).count();
    busy = now;
  };

  bool lineage_open = true;  // own deque may hold lineage work
  while (true) {
    std::optional<Task> t = deques_[id].pop();
    if (!t) {
      if (lineage_open) {
        if (job.on_idle_lineage) job.on_idle_lineage(id);
        lineage_open = false;
      }
      // Steal the oldest task of a random victim; lineage state is copied
      // under the victim's locks before the task leaves the deque.
      for (unsigned attempt = 0; !t && attempt < 2 * cfg_.threads; ++attempt) {
        unsigned victim = rng() % cfg_.threads;
        if (victim == id) continue;
        t = deques_[victim].steal([&](Task& slot) {
          if (job.prepare_steal) job.prepare_steal(slot, id);
          slot.stolen = true;
          return true;
        });
      }
      if (t) {
        ++shard.tasks_stolen;
      } else {
        set_busy(false);
        if (in_flight_.load(std::memory_order_acquire) == 0) break;
        std::this_thread::yield();
        continue;
      }
    }
    set_busy(true);
    lineage_open = true;
    ++shard.tasks_executed;
    job.execute(*t, id);
    in_flight_.fetch_sub(1, std::memory_order_release);
  }
  if (lineage_open && job.on_idle_lineage) job.on_idle_lineage(id);
  set_busy(false);
}

unsigned thread_count_from_env(unsigned fallback) {
  const char* env = std::getenv("CYCLENUM_THREADS");
  if (!env) return fallback;
  long v = std::strtol(env, nullptr, 10);
  if (v < 1 || v > 4096) return fallback;
  return static_cast<unsigned>(v);
}

}  // namespace cyclenum
