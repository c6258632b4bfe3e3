#pragma once

// Independent oracles shared by the unit tests and the acceptance suite.
// Everything here is deliberately naive: std::set unions, bitmask
// enumeration, recursive matching search.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "maxcov/graph.hpp"
#include "maxcov/matching.hpp"

namespace oracle {

using maxcov::BipartiteGraph;
using maxcov::NodeId;

inline std::size_t union_size(const BipartiteGraph& g, const std::vector<NodeId>& s) {
  std::set<NodeId> seen;
  for (auto u : s) {
    for (auto v : g.neighbors(u)) seen.insert(v);
  }
  return seen.size();
}

// max |N(S)| over |S| <= k by bitmask enumeration (n <= 20).
inline std::size_t brute_opt(const BipartiteGraph& g, std::size_t k) {
  const std::size_t n = g.n_left();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::size_t(__builtin_popcount(mask)) > k) continue;
    std::vector<NodeId> s;
    for (std::size_t u = 0; u < n; ++u) {
      if (mask >> u & 1) s.push_back(NodeId(u));
    }
    best = std::max(best, union_size(g, s));
  }
  return best;
}

// Largest left subset with pairwise-disjoint neighborhoods (n <= 20).
inline std::size_t brute_disjoint(const BipartiteGraph& g) {
  const std::size_t n = g.n_left();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::size_t edges = 0;
    std::vector<NodeId> s;
    for (std::size_t u = 0; u < n; ++u) {
      if (mask >> u & 1) {
        s.push_back(NodeId(u));
        edges += g.degree(u);
      }
    }
    if (union_size(g, s) == edges) best = std::max(best, s.size());
  }
  return best;
}

// Maximum matching by branching on the lowest unmatched vertex.
inline std::size_t brute_matching(std::size_t vertices, const std::vector<maxcov::Edge>& edges) {
  std::vector<std::vector<NodeId>> adj(vertices);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> used(vertices, 0);
  auto rec = [&](auto&& self, std::size_t from) -> std::size_t {
    while (from < vertices && used[from]) ++from;
    if (from == vertices) return 0;
    used[from] = 1;
    std::size_t best = self(self, from + 1);  // leave `from` unmatched
    for (auto w : adj[from]) {
      if (used[w]) continue;
      used[w] = 1;
      best = std::max(best, 1 + self(self, from + 1));
      used[w] = 0;
    }
    used[from] = 0;
    return best;
  };
  return rec(rec, 0);
}

// Random graph with per-node degrees uniform in [1, max_deg] (std RNG only).
inline BipartiteGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                   std::size_t max_deg) {
  std::vector<std::vector<NodeId>> adj(n);
  std::vector<NodeId> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = NodeId(i);
  for (auto& row : adj) {
    const std::size_t d = std::uniform_int_distribution<std::size_t>(1, std::min(max_deg, m))(rng);
    std::shuffle(perm.begin(), perm.end(), rng);
    row.assign(perm.begin(), perm.begin() + std::ptrdiff_t(d));
  }
  return BipartiteGraph(m, std::move(adj));
}

inline BipartiteGraph random_regular(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                     std::size_t d) {
  std::vector<std::vector<NodeId>> adj(n);
  std::vector<NodeId> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = NodeId(i);
  for (auto& row : adj) {
    std::shuffle(perm.begin(), perm.end(), rng);
    row.assign(perm.begin(), perm.begin() + std::ptrdiff_t(d));
  }
  return BipartiteGraph(m, std::move(adj));
}

inline std::vector<maxcov::Edge> random_edges(std::mt19937_64& rng, std::size_t vertices, double p) {
  std::vector<maxcov::Edge> edges;
  std::bernoulli_distribution coin(p);
  for (NodeId a = 0; a < vertices; ++a) {
    for (NodeId b = a + 1; b < vertices; ++b) {
      if (coin(rng)) edges.emplace_back(a, b);
    }
  }
  return edges;
}

}  // namespace oracle
