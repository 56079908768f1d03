#include <atomic>
#include <random>
#include <set>

#include "cyclenum/parallel_enum.hpp"
#include "cyclenum/synthetic.hpp"
#include "cyclenum/task_runtime.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cyclenum;

TEST_CASE("independent tasks execute exactly once across four workers") {
  const std::uint64_t n = 1000;
  std::vector<std::atomic<int>> hits(n);
  for (auto& h : hits) h.store(0);
  SearchStats stats(4);
  parallel_for_indexed(4, n, stats, [&](std::uint64_t i, unsigned) { hits[i].fetch_add(1); });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK(stats.merged().tasks_executed == n);
}

TEST_CASE("single worker never steals and drains depth-first") {
  auto g = generate_synthetic(SyntheticKind::worst_case, {.n = 7});
  CycleSink sink;
  SearchStats stats(1);
  fine_johnson_enumerate(g, 0, {.threads = 1, .granularity = Granularity::fine}, sink, stats);
  CHECK(sink.count() == 32);
  CHECK(stats.merged().tasks_stolen == 0);
  CHECK(stats.merged().copy_on_steal_ops == 0);
}

TEST_CASE("deque steals the oldest task while the owner pops the newest") {
  TaskDeque dq;
  for (std::uint64_t i = 0; i < 4; ++i) {
    Task t;
    t.kind = TaskKind::preproc;
    t.index = i;
    dq.push(t);
  }
  auto stolen = dq.steal([](Task&) { return true; });
  REQUIRE(stolen);
  CHECK(stolen->index == 0);
  auto popped = dq.pop();
  REQUIRE(popped);
  CHECK(popped->index == 3);
}

namespace {

/// Drives the fine Johnson engine on one worker until the victim's path
/// matches `trigger`, then runs `action` once at that instant.
template <typename Action>
void at_path(const TemporalGraph& g, const std::vector<VertexId>& trigger, CycleSink& sink,
             SearchStats& stats, Action action) {
  bool fired = false;
  FineHooks hooks;
  hooks.on_johnson_push = [&](JohnsonStealPoint& p) {
    if (fired || p.state.verts != trigger) return;
    fired = true;
    action(p);
  };
  fine_johnson_enumerate(g, 0, {.threads = 1, .granularity = Granularity::fine}, sink, stats, {},
                         &hooks);
  CHECK(fired);
}

std::set<VertexId> blocked_off_path(const JohnsonState& s, std::size_t n) {
  std::set<VertexId> out;
  for (VertexId v = 0; v < n; ++v)
    if (s.blk.test(v) && !s.on_path.test(v)) out.insert(v);
  return out;
}

}  // namespace

TEST_CASE("copy-on-steal reproduces the two-thread blocked-set handoff") {
  using namespace fixture;
  auto g = steal_fixture_graph();
  CycleSink sink(CycleSink::Mode::collect);
  SearchStats stats(1);
  StatShard thief;

  at_path(g, {v0, v1, w1, w2, w3}, sink, stats, [&](JohnsonStealPoint& p) {
    // Victim state at the moment of the steal: the whole dead pocket blocked.
    for (VertexId b : {b1, b2, b3, b4}) CHECK(p.state.blk.test(b));

    auto stolen = steal_oldest_johnson(p, thief);
    REQUIRE(stolen);
    CHECK(stolen->task.snapshot_len == 2);
    auto& s = *stolen->state;

    // The stealer resumes from the two-vertex prefix...
    CHECK(s.verts == std::vector<VertexId>{v0, v1});
    // ...with w1, w2, w3 recursively unblocked, which releases b1 and b2,
    // while b3 and b4 stay blocked.
    CHECK(blocked_off_path(s, g.vertex_count()) == std::set<VertexId>{b3, b4});
    for (VertexId v : {w1, w2, w3, b1, b2}) CHECK_FALSE(s.blk.test(v));
    // Subset of the victim's current blocked set.
    for (std::size_t i = 0; i < s.blk.words().size(); ++i)
      CHECK((s.blk.words()[i] & ~p.state.blk.words()[i]) == 0);
    // The victim is untouched.
    CHECK(p.state.verts.size() == 5);
    for (VertexId b : {b1, b2, b3, b4}) CHECK(p.state.blk.test(b));

    // Per-steal transfer is O(n+e) words.
    CHECK(thief.copy_on_steal_ops == 1);
    CHECK(thief.copy_bytes <= 32 * 8 * (g.vertex_count() + g.edge_count()));

    // Drain the stolen subtree: it finds the cycle through b1, b2.
    run_stolen_johnson(std::move(*stolen), g, sink, stats, 0);
  });

  // Two cycles through v0 plus the w1,b1,b2 triangle from its own anchor.
  auto cycles = oracle::sorted(sink.take_cycles());
  auto expect = oracle::sorted(oracle::simple_cycles(g, 0));
  REQUIRE(expect.size() == 3);
  CHECK(cycles == expect);
  bool long_cycle = false;
  for (auto& c : cycles)
    long_cycle |= c.vertices == std::vector<VertexId>{v0, v1, u1, b1, b2, w1, w2, w3};
  CHECK(long_cycle);
}

TEST_CASE("stealing right after creation is a pure deep copy") {
  using namespace fixture;
  auto g = steal_fixture_graph();
  CycleSink sink;
  SearchStats stats(1);
  StatShard thief;
  // Path [v0, v1]: both level-2 tasks were just created, nothing explored.
  at_path(g, {v0, v1}, sink, stats, [&](JohnsonStealPoint& p) {
    auto stolen = steal_oldest_johnson(p, thief);
    REQUIRE(stolen);
    auto& s = *stolen->state;
    CHECK(s.verts == p.state.verts);
    CHECK(thief.unblock_propagations == 0);  // Π1 == Π2, nothing to restore
    for (std::size_t i = 0; i < s.blk.words().size(); ++i)
      CHECK(s.blk.words()[i] == p.state.blk.words()[i]);
    run_stolen_johnson(std::move(*stolen), g, sink, stats, 0);
  });
  CHECK(sink.count() == 3);
}

TEST_CASE("steals at random path points stay sound on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto g = generate_synthetic(SyntheticKind::random_temporal,
                                {.n = 8, .p_edge = 0.35, .max_ts = 9, .seed = rng()});
    auto expect = oracle::sorted(oracle::simple_cycles(g, 6));
    std::size_t steal_at = 1 + trial % 4;

    CycleSink sink(CycleSink::Mode::collect);
    SearchStats stats(1);
    StatShard thief;
    std::size_t pushes = 0;
    std::vector<StolenJohnson> pending;
    FineHooks hooks;
    hooks.on_johnson_push = [&](JohnsonStealPoint& p) {
      if (++pushes % steal_at != 0) return;
      auto stolen = steal_oldest_johnson(p, thief);
      if (!stolen) return;
      auto& s = *stolen->state;
      // Π2 is a prefix of Π1; the copied blocked set never exceeds the
      // victim's and keeps every prefix vertex blocked.
      REQUIRE(s.verts.size() <= p.state.verts.size());
      for (std::size_t i = 0; i < s.verts.size(); ++i) CHECK(s.verts[i] == p.state.verts[i]);
      for (std::size_t i = 0; i < s.blk.words().size(); ++i)
        CHECK((s.blk.words()[i] & ~p.state.blk.words()[i]) == 0);
      for (VertexId v : s.verts) CHECK(s.blk.test(v));
      run_stolen_johnson(std::move(*stolen), g, sink, stats, 0);
    };
    fine_johnson_enumerate(g, 6, {.threads = 1, .granularity = Granularity::fine}, sink, stats,
                           {}, &hooks);
    CHECK(oracle::sorted(sink.take_cycles()) == expect);
    if (thief.copy_on_steal_ops > 0)
      CHECK(thief.copy_bytes <=
            thief.copy_on_steal_ops * 32 * 8 * (g.vertex_count() + g.edge_count()));
  }
}

TEST_CASE("thread count env knob stays within bounds") {
  CHECK(thread_count_from_env(3) >= 1);
}
