#include "maxcov/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "maxcov/errors.hpp"

namespace maxcov {

BipartiteGraph::BipartiteGraph(std::size_t m_right, std::vector<std::vector<NodeId>> adjacency)
    : m_right_(m_right) {
  if (m_right == 0) throw InvalidInput("graph needs at least one right node");
  offsets_.assign(1, 0);
  offsets_.reserve(adjacency.size() + 1);
  std::size_t total = 0;
  for (const auto& list : adjacency) total += list.size();
  neighbors_.reserve(total);
  for (std::size_t u = 0; u < adjacency.size(); ++u) {
    auto& list = adjacency[u];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw InvalidInput("left node " + std::to_string(u) + " lists a neighbor twice");
    }
    if (!list.empty() && list.back() >= m_right) {
      throw InvalidInput("left node " + std::to_string(u) + " has neighbor " +
                         std::to_string(list.back()) + " >= m = " + std::to_string(m_right));
    }
    neighbors_.insert(neighbors_.end(), list.begin(), list.end());
    offsets_.push_back(neighbors_.size());
  }
}

std::size_t BipartiteGraph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t u = 0; u < n_left(); ++u) best = std::max(best, degree(u));
  return best;
}

std::size_t BipartiteGraph::regular_degree() const {
  if (n_left() == 0) return 0;
  const std::size_t d = degree(0);
  for (std::size_t u = 1; u < n_left(); ++u) {
    if (degree(u) != d) return 0;
  }
  return d;
}

std::vector<std::vector<NodeId>> BipartiteGraph::adjacency() const {
  std::vector<std::vector<NodeId>> out(n_left());
  for (std::size_t u = 0; u < n_left(); ++u) {
    auto nb = neighbors(u);
    out[u].assign(nb.begin(), nb.end());
  }
  return out;
}

NodeSet::NodeSet(std::initializer_list<NodeId> nodes) {
  for (NodeId u : nodes) push_back(u);
}

NodeSet::NodeSet(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
  std::vector<NodeId> sorted = nodes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("node set contains duplicates");
  }
}

void NodeSet::push_back(NodeId u) {
  if (contains(u)) throw InvalidInput("node " + std::to_string(u) + " already in set");
  nodes_.push_back(u);
}

bool NodeSet::contains(NodeId u) const {
  return std::find(nodes_.begin(), nodes_.end(), u) != nodes_.end();
}

void validate(const BipartiteGraph& graph, const NodeSet& s) {
  for (NodeId u : s) {
    if (u >= graph.n_left()) {
      throw InvalidInput("left index " + std::to_string(u) + " out of range (n = " +
                         std::to_string(graph.n_left()) + ")");
    }
  }
}

CoverState::CoverState(const BipartiteGraph& graph)
    : graph_(&graph), marks_(graph.m_right(), 0) {}

std::size_t CoverState::gain(std::size_t u) const {
  std::size_t g = 0;
  for (NodeId v : graph_->neighbors(u)) g += marks_[v] == 0;
  return g;
}

std::size_t CoverState::add(std::size_t u) {
  std::size_t g = 0;
  for (NodeId v : graph_->neighbors(u)) {
    if (marks_[v] == 0) {
      marks_[v] = 1;
      ++g;
    }
  }
  covered_ += g;
  return g;
}

void CoverState::reset() {
  std::fill(marks_.begin(), marks_.end(), 0);
  covered_ = 0;
}

std::size_t coverage(const BipartiteGraph& graph, const NodeSet& s) {
  validate(graph, s);
  CoverState state(graph);
  for (NodeId u : s) state.add(u);
  return state.covered();
}

std::size_t marginal_gain(const BipartiteGraph& graph, const NodeSet& s, NodeId u) {
  validate(graph, s);
  if (u >= graph.n_left()) throw InvalidInput("left index out of range");
  CoverState state(graph);
  for (NodeId w : s) state.add(w);
  return state.gain(u);
}

std::vector<NodeId> top_residual_nodes(const BipartiteGraph& graph, const CoverState& state,
                                       std::span<const std::uint8_t> excluded, std::size_t t) {
  std::vector<std::pair<std::size_t, NodeId>> ranked;
  ranked.reserve(graph.n_left());
  for (std::size_t u = 0; u < graph.n_left(); ++u) {
    if (!excluded.empty() && excluded[u]) continue;
    ranked.emplace_back(state.gain(u), static_cast<NodeId>(u));
  }
  if (t > ranked.size()) throw InvalidInput("requested more residual nodes than available");
  auto better = [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(t), ranked.end(),
                    better);
  std::vector<NodeId> out(t);
  for (std::size_t i = 0; i < t; ++i) out[i] = ranked[i].second;
  return out;
}

NodeSet top_residual_set(const BipartiteGraph& graph, const NodeSet& s, std::size_t t) {
  validate(graph, s);
  if (t > graph.n_left() - s.size()) {
    throw InvalidInput("t = " + std::to_string(t) + " exceeds |L \\ S| = " +
                       std::to_string(graph.n_left() - s.size()));
  }
  CoverState state(graph);
  std::vector<std::uint8_t> excluded(graph.n_left(), 0);
  for (NodeId u : s) {
    state.add(u);
    excluded[u] = 1;
  }
  return NodeSet(top_residual_nodes(graph, state, excluded, t));
}

void write_graph(std::ostream& out, const BipartiteGraph& graph) {
  out << graph.n_left() << ' ' << graph.m_right() << '\n';
  for (std::size_t u = 0; u < graph.n_left(); ++u) {
    bool first = true;
    for (NodeId v : graph.neighbors(u)) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
}

namespace {

std::uint64_t parse_uint(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw InvalidInput("line " + std::to_string(line_no) + ": bad integer '" +
                       std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

BipartiteGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty graph file");
  auto header = split_ws(line);
  if (header.size() != 2) throw InvalidInput("line 1: expected \"n m\"");
  const auto n = parse_uint(header[0], 1);
  const auto m = parse_uint(header[1], 1);
  if (m == 0) throw InvalidInput("line 1: m must be at least 1");

  std::vector<std::vector<NodeId>> adjacency(n);
  for (std::uint64_t u = 0; u < n; ++u) {
    const std::size_t line_no = u + 2;
    if (!std::getline(in, line)) {
      throw InvalidInput("expected " + std::to_string(n) + " adjacency lines, got " +
                         std::to_string(u));
    }
    for (auto token : split_ws(line)) {
      const auto v = parse_uint(token, line_no);
      if (v >= m) {
        throw InvalidInput("line " + std::to_string(line_no) + ": neighbor " + std::to_string(v) +
                           " >= m = " + std::to_string(m));
      }
      if (!adjacency[u].empty() && adjacency[u].back() >= v) {
        throw InvalidInput("line " + std::to_string(line_no) +
                           ": neighbors must be strictly increasing");
      }
      adjacency[u].push_back(static_cast<NodeId>(v));
    }
  }
  while (std::getline(in, line)) {
    if (!split_ws(line).empty()) throw InvalidInput("trailing data after adjacency lines");
  }
  return BipartiteGraph(m, std::move(adjacency));
}

void save_graph(const BipartiteGraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
  write_graph(out, graph);
  if (!out) throw InvalidInput("write to " + path.string() + " failed");
}

BipartiteGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return read_graph(in);
}

}  // namespace maxcov
