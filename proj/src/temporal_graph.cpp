#include "cyclenum/temporal_graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace cyclenum {

namespace {

bool lex_less(const AdjEntry& a, const AdjEntry& b) {
  return a.ts != b.ts ? a.ts < b.ts : a.id < b.id;
}

}  // namespace

TemporalGraph TemporalGraph::from_edges(std::vector<EdgeRecord> edges, std::size_t vertex_count) {
  TemporalGraph g;
  g.n_ = vertex_count;
  for (const auto& e : edges) {
    if (e.src >= vertex_count || e.dst >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.ts < 0) throw std::invalid_argument("negative timestamp");
  }
  // Edge ids ascend by (timestamp, input order).
  std::stable_sort(edges.begin(), edges.end(),
                   [](const EdgeRecord& a, const EdgeRecord& b) { return a.ts < b.ts; });
  g.edges_ = std::move(edges);
  g.build_indexes();
  return g;
}

void TemporalGraph::build_indexes() {
  const std::size_t e = edges_.size();
  std::vector<std::uint32_t> out_deg(n_ + 1, 0), in_deg(n_ + 1, 0);
  for (const auto& rec : edges_) {
    ++out_deg[rec.src];
    ++in_deg[rec.dst];
  }
  out_offsets_.assign(n_ + 1, 0);
  in_offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) {
    out_offsets_[v + 1] = out_offsets_[v] + out_deg[v];
    in_offsets_[v + 1] = in_offsets_[v] + in_deg[v];
  }
  out_entries_.resize(e);
  in_entries_.resize(e);
  std::vector<std::uint32_t> out_pos(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::uint32_t> in_pos(in_offsets_.begin(), in_offsets_.end() - 1);
  // Filling in edge id order keeps each list sorted by (ts, id).
  for (EdgeId id = 0; id < e; ++id) {
    const auto& rec = edges_[id];
    out_entries_[out_pos[rec.src]++] = {rec.dst, rec.ts, id};
    in_entries_[in_pos[rec.dst]++] = {rec.src, rec.ts, id};
  }

  // Grouped adjacency: per source, parallel edges to one neighbor collected
  // together, entries within a group sorted by (ts, id).
  grouped_out_ = out_entries_;
  group_offsets_.assign(n_ + 1, 0);
  groups_.clear();
  for (std::size_t v = 0; v < n_; ++v) {
    auto* begin = grouped_out_.data() + out_offsets_[v];
    auto* end = grouped_out_.data() + out_offsets_[v + 1];
    std::sort(begin, end, [](const AdjEntry& a, const AdjEntry& b) {
      if (a.to != b.to) return a.to < b.to;
      return lex_less(a, b);
    });
    for (auto* it = begin; it != end;) {
      auto* run = it;
      while (run != end && run->to == it->to) ++run;
      groups_.push_back({it->to, static_cast<std::uint32_t>(it - grouped_out_.data()),
                         static_cast<std::uint32_t>(run - grouped_out_.data())});
      it = run;
    }
    group_offsets_[v + 1] = static_cast<std::uint32_t>(groups_.size());
  }
}

namespace {

struct Tokenizer {
  const std::string& line;
  char delim;
  std::size_t pos = 0;

  bool next(std::string_view& tok) {
    if (delim == '\0') {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) return false;
      std::size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      tok = std::string_view(line).substr(start, pos - start);
      return true;
    }
    if (pos > line.size()) return false;
    std::size_t start = pos;
    std::size_t sep = line.find(delim, pos);
    if (sep == std::string::npos) {
      pos = line.size() + 1;
      tok = std::string_view(line).substr(start);
    } else {
      pos = sep + 1;
      tok = std::string_view(line).substr(start, sep - start);
    }
    return !tok.empty() || sep != std::string::npos;
  }
};

std::int64_t parse_int(std::string_view tok, std::size_t line_no, const char* what) {
  std::int64_t value = 0;
  bool neg = false;
  std::size_t i = 0;
  if (i < tok.size() && (tok[i] == '-' || tok[i] == '+')) neg = tok[i++] == '-';
  if (i >= tok.size()) throw ParseError(std::string("malformed ") + what, line_no);
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9')
      throw ParseError(std::string("malformed ") + what + ": '" + std::string(tok) + "'", line_no);
    value = value * 10 + (tok[i] - '0');
  }
  return neg ? -value : value;
}

}  // namespace

TemporalGraph load_edge_list(std::istream& is, const LoadOptions& opts) {
  TemporalGraph g;
  std::unordered_map<std::int64_t, VertexId> remap;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = opts.has_header;

  auto intern = [&](std::int64_t label) {
    auto [it, inserted] = remap.try_emplace(label, static_cast<VertexId>(g.external_ids_.size()));
    if (inserted) g.external_ids_.push_back(label);
    return it->second;
  };

  while (std::getline(is, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    Tokenizer tok{line, opts.delimiter};
    std::string_view s, d, t;
    if (!tok.next(s) || !tok.next(d) || !tok.next(t))
      throw ParseError("expected 'src dst ts'", line_no);
    std::string_view extra;
    if (tok.next(extra) && !extra.empty())
      throw ParseError("trailing field '" + std::string(extra) + "'", line_no);
    std::int64_t ts = parse_int(t, line_no, "timestamp");
    if (ts < 0) throw ParseError("negative timestamp", line_no);
    EdgeRecord rec;
    rec.src = intern(parse_int(s, line_no, "source id"));
    rec.dst = intern(parse_int(d, line_no, "destination id"));
    rec.ts = ts;
    g.edges_.push_back(rec);
  }

  g.n_ = g.external_ids_.size();
  std::stable_sort(g.edges_.begin(), g.edges_.end(),
                   [](const EdgeRecord& a, const EdgeRecord& b) { return a.ts < b.ts; });
  g.build_indexes();
  return g;
}

TemporalGraph load_edge_list_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return load_edge_list(in, opts);
}

void write_edge_list(const TemporalGraph& g, std::ostream& os) {
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const auto& rec = g.edge(id);
    os << g.external_id(rec.src) << ' ' << g.external_id(rec.dst) << ' ' << rec.ts << '\n';
  }
}

std::span<const AdjEntry> GraphView::slice(std::span<const AdjEntry> all) const {
  auto lo = std::lower_bound(all.begin(), all.end(), min_key_,
                             [](const AdjEntry& e, const LexKey& k) { return e.key() < k; });
  auto hi = std::upper_bound(lo, all.end(), window_.end,
                             [](Timestamp t, const AdjEntry& e) { return t < e.ts; });
  return {lo, hi};
}

}  // namespace cyclenum
