#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace maxcov {

using NodeId = std::uint32_t;

// Left-adjacency view of a bipartite coverage instance B = (L, R, E).
//
// Left node i covers the right nodes neighbors(i), stored as one strictly
// increasing run inside a flat CSR array. Instances are immutable after
// construction and can be shared across threads freely.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  // Validates: m_right >= 1, every index < m_right, each list free of
  // duplicates. Lists are sorted here, so callers may pass any order.
  BipartiteGraph(std::size_t m_right, std::vector<std::vector<NodeId>> adjacency);

  std::size_t n_left() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t m_right() const { return m_right_; }
  std::size_t num_edges() const { return neighbors_.size(); }

  std::span<const NodeId> neighbors(std::size_t u) const {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  std::size_t degree(std::size_t u) const { return offsets_[u + 1] - offsets_[u]; }
  std::size_t max_degree() const;

  // Returns d when every left node has degree d, otherwise 0. An empty
  // left side counts as irregular.
  std::size_t regular_degree() const;

  std::vector<std::vector<NodeId>> adjacency() const;

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  std::size_t m_right_ = 1;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> neighbors_;
};

// Ordered set of distinct left nodes; iteration follows insertion order.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> nodes);
  explicit NodeSet(std::vector<NodeId> nodes);

  void push_back(NodeId u);
  bool contains(NodeId u) const;
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }
  NodeId operator[](std::size_t i) const { return nodes_[i]; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<NodeId> nodes_;
};

// Throws InvalidInput unless every member of s is a left node of graph.
void validate(const BipartiteGraph& graph, const NodeSet& s);

// Incremental cover state over R: a mark per right node plus the running
// covered count. One instance per thread; reset() is O(m).
class CoverState {
 public:
  explicit CoverState(const BipartiteGraph& graph);

  // |N(u) \ N(S)| for the current S.
  std::size_t gain(std::size_t u) const;
  // Adds u to S and returns its marginal gain.
  std::size_t add(std::size_t u);
  std::size_t covered() const { return covered_; }
  bool is_covered(NodeId v) const { return marks_[v] != 0; }
  void reset();

 private:
  const BipartiteGraph* graph_;
  std::vector<std::uint8_t> marks_;
  std::size_t covered_ = 0;
};

// |N(s)|.
std::size_t coverage(const BipartiteGraph& graph, const NodeSet& s);

// |N(u) \ N(s)|; u may already belong to s (gain is then 0).
std::size_t marginal_gain(const BipartiteGraph& graph, const NodeSet& s, NodeId u);

// The t nodes of L \ s with the largest marginal gains to s, ordered by
// decreasing gain and then ascending index.
NodeSet top_residual_set(const BipartiteGraph& graph, const NodeSet& s, std::size_t t);

// Same selection rule for a cover state already holding N(s); `excluded`
// marks members of s. Used by trial loops that keep one cover state alive.
std::vector<NodeId> top_residual_nodes(const BipartiteGraph& graph, const CoverState& state,
                                       std::span<const std::uint8_t> excluded, std::size_t t);

// Text format: "n m" on the first line, then one line of sorted neighbor
// indices per left node (empty for degree 0).
void write_graph(std::ostream& out, const BipartiteGraph& graph);
BipartiteGraph read_graph(std::istream& in);
void save_graph(const BipartiteGraph& graph, const std::filesystem::path& path);
BipartiteGraph load_graph(const std::filesystem::path& path);

}  // namespace maxcov
