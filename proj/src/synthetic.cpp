#include "cyclenum/synthetic.hpp"

#include <random>
#include <stdexcept>

namespace cyclenum {

namespace {

TemporalGraph worst_case(std::size_t n) {
  if (n < 3) throw std::invalid_argument("worst-case graph needs n >= 3");
  std::vector<EdgeRecord> edges;
  auto v = [](std::size_t i) { return static_cast<VertexId>(i); };
  edges.push_back({v(0), v(1), 0});
  for (std::size_t i = 1; i < n; ++i) {
    edges.push_back({v(i), v(0), 0});
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({v(i), v(j), 0});
  }
  return TemporalGraph::from_edges(std::move(edges), n);
}

TemporalGraph fig3a(std::size_t m, std::size_t k) {
  if (m < 1 || k < 1) throw std::invalid_argument("fig3a needs m >= 1 and k >= 1");
  const VertexId v0 = 0, v1 = 1, v2 = 2;
  auto w = [&](std::size_t i) { return static_cast<VertexId>(2 + i); };          // 1-based
  auto u = [&](std::size_t i) { return static_cast<VertexId>(2 + m + i); };      // 1-based
  auto b = [&](std::size_t j) { return static_cast<VertexId>(2 + 2 * m + j); };  // 1-based
  std::vector<EdgeRecord> edges;
  edges.push_back({v0, v1, 0});
  edges.push_back({v1, v0, 0});
  edges.push_back({v1, v2, 0});
  edges.push_back({v2, w(1), 0});
  edges.push_back({v2, u(1), 0});
  // Chain edges come before the dead-chain feeders so each wi/ui tries its
  // chain successor first.
  for (std::size_t i = 1; i < m; ++i) edges.push_back({w(i), w(i + 1), 0});
  edges.push_back({w(m), v0, 0});
  for (std::size_t i = 1; i < m; ++i) edges.push_back({u(i), u(i + 1), 0});
  edges.push_back({u(m), v0, 0});
  for (std::size_t i = 1; i <= m; ++i) edges.push_back({w(i), b(1), 0});
  for (std::size_t i = 1; i <= m; ++i) edges.push_back({u(i), b(1), 0});
  for (std::size_t j = 1; j < k; ++j) edges.push_back({b(j), b(j + 1), 0});
  return TemporalGraph::from_edges(std::move(edges), 3 + 2 * m + k);
}

TemporalGraph fig5a(std::size_t m) {
  if (m < 1) throw std::invalid_argument("fig5a needs m >= 1");
  const VertexId v0 = 0, v1 = 1, v2 = 6;
  auto u = [&](std::size_t i) { return static_cast<VertexId>(1 + i); };          // u1..u4
  auto b = [&](std::size_t j) { return static_cast<VertexId>(6 + j); };          // 1-based
  std::vector<EdgeRecord> edges;
  edges.push_back({v0, v1, 0});
  for (std::size_t i = 1; i <= 4; ++i) edges.push_back({v1, u(i), 0});
  for (std::size_t i = 1; i <= 4; ++i) edges.push_back({u(i), v2, 0});
  edges.push_back({v2, v0, 0});
  edges.push_back({v2, b(1), 0});
  // Doubled chain edges: 2^(m-1) distinct edge paths through the dead chain.
  for (std::size_t j = 1; j < m; ++j) {
    edges.push_back({b(j), b(j + 1), 0});
    edges.push_back({b(j), b(j + 1), 0});
  }
  return TemporalGraph::from_edges(std::move(edges), 7 + m);
}

TemporalGraph random_graph(std::size_t n, double p_edge, Timestamp max_ts, std::uint64_t seed,
                           bool temporal) {
  if (p_edge < 0.0 || p_edge > 1.0) throw std::invalid_argument("edge probability out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Timestamp> ts_dist(0, max_ts > 0 ? max_ts : 0);
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (coin(rng) < p_edge) {
        Timestamp ts = temporal ? ts_dist(rng) : 0;
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), ts});
      }
    }
  return TemporalGraph::from_edges(std::move(edges), n);
}

}  // namespace

TemporalGraph generate_synthetic(SyntheticKind kind, const SyntheticParams& p) {
  switch (kind) {
    case SyntheticKind::worst_case:
      return worst_case(p.n);
    case SyntheticKind::fig3a:
      return fig3a(p.m, p.k);
    case SyntheticKind::fig5a:
      return fig5a(p.m);
    case SyntheticKind::random_simple:
      return random_graph(p.n, p.p_edge, 0, p.seed, false);
    case SyntheticKind::random_temporal:
      return random_graph(p.n, p.p_edge, p.max_ts, p.seed, true);
  }
  throw std::invalid_argument("unknown synthetic kind");
}

SyntheticKind synthetic_kind_from_name(const std::string& name) {
  if (name == "worst-case") return SyntheticKind::worst_case;
  if (name == "fig3a") return SyntheticKind::fig3a;
  if (name == "fig5a") return SyntheticKind::fig5a;
  if (name == "random") return SyntheticKind::random_simple;
  if (name == "random-temporal") return SyntheticKind::random_temporal;
  throw std::invalid_argument("unknown synthetic kind: " + name);
}

std::string synthetic_kind_name(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::worst_case:
      return "worst-case";
    case SyntheticKind::fig3a:
      return "fig3a";
    case SyntheticKind::fig5a:
      return "fig5a";
    case SyntheticKind::random_simple:
      return "random";
    case SyntheticKind::random_temporal:
      return "random-temporal";
  }
  return "?";
}

TemporalGraph steal_fixture_graph() {
  using namespace fixture;
  std::vector<EdgeRecord> edges = {
      {v0, v1, 0}, {v1, w1, 0}, {v1, u1, 0}, {w1, b1, 0}, {w1, w2, 0}, {b1, b2, 0},
      {b2, w1, 0}, {w2, b3, 0}, {w2, w3, 0}, {b3, b4, 0}, {w3, v0, 0}, {u1, b1, 0},
  };
  return TemporalGraph::from_edges(std::move(edges), 10);
}

TemporalGraph window_fixture_graph() {
  std::vector<EdgeRecord> edges = {
      {0, 1, 2}, {1, 0, 7}, {1, 2, 10}, {2, 3, 11}, {2, 1, 12}, {3, 2, 15},
  };
  return TemporalGraph::from_edges(std::move(edges), 4);
}

}  // namespace cyclenum
