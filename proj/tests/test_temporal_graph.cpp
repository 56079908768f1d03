#include <random>
#include <sstream>

#include "cyclenum/synthetic.hpp"
#include "cyclenum/temporal_graph.hpp"
#include "doctest.h"

using namespace cyclenum;

TEST_CASE("load_edge_list transcribes a two-edge graph") {
  std::istringstream in("0 1 2\n1 0 7\n");
  auto g = load_edge_list(in);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 2);
  auto a0 = g.out(0);
  REQUIRE(a0.size() == 1);
  CHECK(a0[0].to == 1);
  CHECK(a0[0].ts == 2);
  auto a1 = g.out(1);
  REQUIRE(a1.size() == 1);
  CHECK(a1[0].to == 0);
  CHECK(a1[0].ts == 7);
}

TEST_CASE("edge ids ascend by timestamp regardless of input order") {
  std::istringstream in("5 9 10\n9 5 3\n");
  auto g = load_edge_list(in);
  CHECK(g.edge_count() == 2);
  CHECK(g.edge(0).ts == 3);
  CHECK(g.edge(1).ts == 10);
  // Dense remapping keeps first-appearance order; labels map back.
  CHECK(g.external_id(0) == 5);
  CHECK(g.external_id(1) == 9);
  CHECK(g.edge(0).src == 1);  // original label 9
}

TEST_CASE("duplicate triples are kept as distinct edges") {
  std::istringstream in("0 1 5\n0 1 5\n");
  auto g = load_edge_list(in);
  CHECK(g.edge_count() == 2);
  CHECK(g.out(0).size() == 2);
  CHECK(g.out(0)[0].id != g.out(0)[1].id);
}

TEST_CASE("comments, blank lines and delimiters") {
  std::istringstream in("# comment\n% other comment\n\n1,2,3\n2,1,4\n");
  auto g = load_edge_list(in, LoadOptions{',', false});
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("header line is skipped when requested") {
  std::istringstream in("src dst ts\n0 1 1\n");
  auto g = load_edge_list(in, LoadOptions{'\0', true});
  CHECK(g.edge_count() == 1);
}

TEST_CASE("malformed input reports the line number") {
  std::istringstream in("0 1 2\n0 x 3\n");
  CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("line 2"), ParseError);
  std::istringstream neg("0 1 -4\n");
  CHECK_THROWS_AS(load_edge_list(neg), ParseError);
  std::istringstream missing("0 1\n");
  CHECK_THROWS_AS(load_edge_list(missing), ParseError);
}

TEST_CASE("empty input gives the empty graph") {
  std::istringstream in("");
  auto g = load_edge_list(in);
  CHECK(g.vertex_count() == 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("window_view yields exactly the in-window edges in (ts, id) order") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = generate_synthetic(SyntheticKind::random_temporal,
                                {.n = 8, .p_edge = 0.4, .max_ts = 15, .seed = rng()});
    Timestamp lo = std::uniform_int_distribution<Timestamp>(0, 15)(rng);
    Timestamp hi = std::uniform_int_distribution<Timestamp>(lo, 16)(rng);
    GraphView view(g, {lo, hi});
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      std::vector<EdgeId> expect;
      for (const auto& e : g.out(v))
        if (lo <= e.ts && e.ts <= hi) expect.push_back(e.id);
      std::vector<EdgeId> got;
      LexKey prev{-1, 0};
      for (const auto& e : view.out(v)) {
        got.push_back(e.id);
        CHECK(prev < e.key());
        prev = e.key();
      }
      CHECK(got == expect);
    }
  }
}

TEST_CASE("window fixture: one cycle window then two cycle window") {
  auto g = window_fixture_graph();
  GraphView narrow(g, {2, 7});
  CHECK(narrow.out(0).size() == 1);
  CHECK(narrow.out(1).size() == 1);
  CHECK(narrow.out(2).empty());
  GraphView late(g, {10, 15});
  CHECK(late.out(0).empty());
  CHECK(late.out(1).size() == 1);
  CHECK(late.out(2).size() == 2);
  // Whole-range view equals the full graph.
  GraphView full(g, {0, g.max_ts()});
  std::size_t total = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) total += full.out(v).size();
  CHECK(total == g.edge_count());
}

TEST_CASE("edge list round-trips up to timestamp-consistent relabeling") {
  auto g = generate_synthetic(SyntheticKind::random_temporal,
                              {.n = 10, .p_edge = 0.3, .max_ts = 9, .seed = 5});
  std::ostringstream out;
  write_edge_list(g, out);
  std::istringstream in(out.str());
  auto h = load_edge_list(in);
  REQUIRE(h.vertex_count() == g.vertex_count());
  REQUIRE(h.edge_count() == g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    CHECK(g.external_id(g.edge(e).src) == h.external_id(h.edge(e).src));
    CHECK(g.external_id(g.edge(e).dst) == h.external_id(h.edge(e).dst));
    CHECK(g.edge(e).ts == h.edge(e).ts);
  }
}

TEST_CASE("in and out adjacency carry the same edge set") {
  auto g = generate_synthetic(SyntheticKind::random_temporal,
                              {.n = 9, .p_edge = 0.35, .max_ts = 6, .seed = 17});
  std::vector<int> seen(g.edge_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (const auto& e : g.out(v)) {
      CHECK(e.to < g.vertex_count());
      ++seen[e.id];
    }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (const auto& e : g.in(v)) ++seen[e.id];
  for (auto c : seen) CHECK(c == 2);
}

TEST_CASE("grouped adjacency covers the same entries per neighbor") {
  auto g = generate_synthetic(SyntheticKind::random_temporal,
                              {.n = 7, .p_edge = 0.5, .max_ts = 4, .seed = 23});
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::size_t total = 0;
    for (const auto& grp : g.out_groups(v)) {
      auto entries = g.group_entries(grp);
      total += entries.size();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        CHECK(entries[i].to == grp.to);
        if (i) CHECK(entries[i - 1].key() < entries[i].key());
      }
    }
    CHECK(total == g.out(v).size());
  }
}

TEST_CASE("random generator is deterministic per seed") {
  SyntheticParams p{.n = 12, .p_edge = 0.25, .max_ts = 30, .seed = 7};
  auto a = generate_synthetic(SyntheticKind::random_temporal, p);
  auto b = generate_synthetic(SyntheticKind::random_temporal, p);
  REQUIRE(a.edge_count() == b.edge_count());
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    CHECK(a.edge(e).src == b.edge(e).src);
    CHECK(a.edge(e).dst == b.edge(e).dst);
    CHECK(a.edge(e).ts == b.edge(e).ts);
  }
}
