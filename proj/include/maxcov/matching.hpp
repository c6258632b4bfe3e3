#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "maxcov/graph.hpp"

namespace maxcov {

using Edge = std::pair<NodeId, NodeId>;

// Undirected simple graph. Edges are stored as (min, max) pairs without
// repeats or self-loops.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  // Normalizes orientation, drops repeated edges (first occurrence wins);
  // throws InvalidInput on self-loops or endpoints >= vertices.
  SimpleGraph(std::size_t vertices, const std::vector<Edge>& edges);

  std::size_t vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(NodeId u, NodeId v) const;

 private:
  std::size_t vertices_ = 0;
  std::vector<Edge> edges_;
};

struct MatchingResult {
  std::size_t size = 0;
  std::vector<Edge> pairs;
};

// I_B: one vertex per right node, one edge per left node joining its two
// neighbors, parallel edges merged. Requires a 2-left-regular graph.
SimpleGraph build_incidence_graph(const BipartiteGraph& graph);

// Exact maximum cardinality matching on a general graph: degree-one
// reductions, then a greedy start and Edmonds' blossom augmentations.
MatchingResult max_matching(const SimpleGraph& g);

// Blossom search only, no reductions; kept as a second route for tests.
MatchingResult max_matching_blossom(const SimpleGraph& g);

// Size of the largest set of left nodes with pairwise-disjoint
// neighborhoods, computed as mu(I_B). Requires 2-left-regularity.
std::size_t lambda(const BipartiteGraph& graph);
// A left set attaining lambda (one left node per matched edge of I_B).
NodeSet disjoint_left_set(const BipartiteGraph& graph);

// 2 * min(k, lambda(B)): a lower bound on the optimum for d = 2.
std::size_t opt_lower_bound_d2(const BipartiteGraph& graph, std::size_t k);

// "V E" then E lines "u v".
void write_simple_graph(std::ostream& out, const SimpleGraph& g);
SimpleGraph read_simple_graph(std::istream& in);

}  // namespace maxcov
