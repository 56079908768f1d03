#pragma once

#include <cstdint>
#include <mutex>
#include <ostream>
#include <span>
#include <vector>

#include "cyclenum/temporal_graph.hpp"

namespace cyclenum {

/// One simple (or temporal) cycle. `vertices[0]` is the anchor edge's source;
/// `edges[i]` joins vertices[i] to vertices[i+1 mod len]. edges[0] is the
/// anchor, the lexicographically minimum (ts, id) edge of the cycle, which
/// makes the representation canonical.
struct CycleRecord {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  friend bool operator==(const CycleRecord& a, const CycleRecord& b) {
    return a.edges == b.edges;
  }
  friend bool operator<(const CycleRecord& a, const CycleRecord& b) { return a.edges < b.edges; }
};

/// Receives cycles from enumerators. Count and collect modes keep per-thread
/// shards merged single-threaded afterwards; stream mode serializes under a
/// mutex since emission order is schedule dependent anyway.
class CycleSink {
 public:
  enum class Mode { count_only, collect, stream };

  explicit CycleSink(Mode mode = Mode::count_only, std::ostream* out = nullptr,
                     unsigned threads = 1)
      : mode_(mode), out_(out), counts_(threads, 0), buffers_(threads) {}

  Mode mode() const { return mode_; }

  /// Drivers size the sink to their worker count before running.
  void ensure_shards(unsigned threads) {
    if (counts_.size() < threads) {
      counts_.resize(threads, 0);
      buffers_.resize(threads);
    }
  }

  void emit(unsigned shard, std::span<const VertexId> vertices, std::span<const EdgeId> edges) {
    counts_[shard] += 1;
    if (mode_ == Mode::collect) {
      buffers_[shard].push_back(CycleRecord{{vertices.begin(), vertices.end()},
                                            {edges.begin(), edges.end()}});
    } else if (mode_ == Mode::stream) {
      std::lock_guard<std::mutex> lock(stream_mutex_);
      for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i) *out_ << ' ';
        *out_ << vertices[i];
      }
      *out_ << " #";
      for (auto e : edges) *out_ << ' ' << e;
      *out_ << '\n';
    }
  }

  /// Bundle-weighted accounting: `weight` concrete cycles counted at once.
  void add_count(unsigned shard, std::uint64_t weight) { counts_[shard] += weight; }

  std::uint64_t count() const {
    std::uint64_t total = 0;
    for (auto c : counts_) total += c;
    return total;
  }

  /// Collected cycles from all shards (collect mode).
  std::vector<CycleRecord> take_cycles() {
    std::vector<CycleRecord> all;
    for (auto& b : buffers_) {
      all.insert(all.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
      b.clear();
    }
    return all;
  }

 private:
  Mode mode_;
  std::ostream* out_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::vector<CycleRecord>> buffers_;
  std::mutex stream_mutex_;
};

}  // namespace cyclenum
