#pragma once

#include <string>

#include "cyclenum/temporal_graph.hpp"

namespace cyclenum {

enum class SyntheticKind { worst_case, fig3a, fig5a, random_simple, random_temporal };

struct SyntheticParams {
  std::size_t n = 0;       // worst_case, random kinds
  std::size_t m = 1;       // fig3a / fig5a family parameter
  std::size_t k = 1;       // fig3a dead-chain length
  double p_edge = 0.1;     // random kinds
  Timestamp max_ts = 0;    // random_temporal
  std::uint64_t seed = 1;  // random kinds
};

/// Adversarial and random graph generators used by the benchmarks.
///
/// worst_case(n): v0->v1 plus, for every i in [1, n), vi->v0 and vi->vj for
/// all j > i. Every cycle runs v0,v1 then an increasing subset of v2..v_{n-1},
/// so there are exactly 2^(n-2) simple cycles and all of them anchor at the
/// single edge v0->v1.
///
/// fig3a(m, k): two cycles of length m+3 sharing the prefix v0,v1,v2 (one
/// through w1..wm, one through u1..um) plus the 2-cycle v0,v1. Every wi and ui
/// also feeds a dead chain b1..bk. Brute-force search walks the chain once per
/// feeder (2m times), a blocked-set search walks it once, and per-extension
/// blocking walks it twice.
///
/// fig5a(m): four cycles v0,v1,ui,v2 and a dead chain b1..bm behind v2 with
/// doubled edges, giving 4 * 2^(m-1) maximal simple paths.
TemporalGraph generate_synthetic(SyntheticKind kind, const SyntheticParams& params);

SyntheticKind synthetic_kind_from_name(const std::string& name);
std::string synthetic_kind_name(SyntheticKind kind);

/// Fixture behind the copy-on-steal schedule test: the u1 branch can reach a
/// cycle through b1,b2 while b3,b4 are dead once v1 is on the path.
TemporalGraph steal_fixture_graph();

/// Small temporal fixture: one simple (and temporal) cycle in window [2,7],
/// two simple cycles in window [10,15].
TemporalGraph window_fixture_graph();

namespace fixture {
// Vertex ids of steal_fixture_graph.
inline constexpr VertexId v0 = 0, v1 = 1, w1 = 2, w2 = 3, w3 = 4, u1 = 5;
inline constexpr VertexId b1 = 6, b2 = 7, b3 = 8, b4 = 9;
}  // namespace fixture

}  // namespace cyclenum
