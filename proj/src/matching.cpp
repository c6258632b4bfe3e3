#include "maxcov/matching.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "maxcov/errors.hpp"

namespace maxcov {

namespace {

std::uint64_t edge_key(NodeId a, NodeId b) {
  return (std::uint64_t{std::min(a, b)} << 32) | std::max(a, b);
}

constexpr int kNone = -1;

// Edmonds' blossom algorithm with BFS over alternating trees. Each search
// rooted at a free vertex either augments or proves the root unmatchable
// for the current matching; roots are never revisited after a failed search.
class Blossom {
 public:
  Blossom(const std::vector<std::vector<int>>& adj, std::vector<int>& match)
      : adj_(adj), match_(match), n_(static_cast<int>(adj.size())),
        parent_(n_), base_(n_), used_(n_), in_blossom_(n_) {}

  void run() {
    for (int root = 0; root < n_; ++root) {
      if (match_[root] == kNone && !adj_[root].empty()) {
        const int v = find_path(root);
        if (v != kNone) augment(v);
      }
    }
  }

 private:
  int lca(int a, int b) {
    std::vector<char> seen(n_, 0);
    for (;;) {
      a = base_[a];
      seen[a] = 1;
      if (match_[a] == kNone) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), kNone);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    queue_.clear();
    queue_.push_back(root);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const int v = queue_[head];
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != kNone && parent_[match_[to]] != kNone)) {
          const int current_base = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, current_base, to);
          mark_path(to, current_base, v);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = current_base;
              if (!used_[i]) {
                used_[i] = 1;
                queue_.push_back(i);
              }
            }
          }
        } else if (parent_[to] == kNone) {
          parent_[to] = v;
          if (match_[to] == kNone) return to;
          used_[match_[to]] = 1;
          queue_.push_back(match_[to]);
        }
      }
    }
    return kNone;
  }

  void augment(int v) {
    while (v != kNone) {
      const int pv = parent_[v];
      const int next = match_[pv];
      match_[v] = pv;
      match_[pv] = v;
      v = next;
    }
  }

  const std::vector<std::vector<int>>& adj_;
  std::vector<int>& match_;
  int n_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<char> used_;
  std::vector<char> in_blossom_;
  std::vector<int> queue_;
};

MatchingResult collect(const std::vector<int>& match) {
  MatchingResult result;
  for (std::size_t v = 0; v < match.size(); ++v) {
    if (match[v] != kNone && static_cast<int>(v) < match[v]) {
      result.pairs.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(match[v]));
    }
  }
  result.size = result.pairs.size();
  return result;
}

std::vector<std::vector<int>> adjacency_of(const SimpleGraph& g) {
  std::vector<std::vector<int>> adj(g.vertices());
  for (auto [u, v] : g.edges()) {
    adj[u].push_back(static_cast<int>(v));
    adj[v].push_back(static_cast<int>(u));
  }
  return adj;
}

void greedy_start(const std::vector<std::vector<int>>& adj, std::vector<int>& match) {
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (match[v] != kNone) continue;
    for (int to : adj[v]) {
      if (match[to] == kNone) {
        match[v] = to;
        match[to] = static_cast<int>(v);
        break;
      }
    }
  }
}

}  // namespace

SimpleGraph::SimpleGraph(std::size_t vertices, const std::vector<Edge>& edges)
    : vertices_(vertices) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a == b) throw InvalidInput("self-loop at vertex " + std::to_string(a));
    if (a >= vertices || b >= vertices) throw InvalidInput("edge endpoint out of range");
    if (seen.insert(edge_key(a, b)).second) edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
}

bool SimpleGraph::has_edge(NodeId u, NodeId v) const {
  const Edge e{std::min(u, v), std::max(u, v)};
  return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

SimpleGraph build_incidence_graph(const BipartiteGraph& graph) {
  std::vector<Edge> edges;
  edges.reserve(graph.n_left());
  for (std::size_t u = 0; u < graph.n_left(); ++u) {
    if (graph.degree(u) != 2) {
      throw InvalidInput("I_B needs a 2-left-regular graph; node " + std::to_string(u) +
                         " has degree " + std::to_string(graph.degree(u)));
    }
    auto nb = graph.neighbors(u);
    edges.emplace_back(nb[0], nb[1]);
  }
  return SimpleGraph(graph.m_right(), edges);
}

MatchingResult max_matching_blossom(const SimpleGraph& g) {
  const auto adj = adjacency_of(g);
  std::vector<int> match(g.vertices(), kNone);
  greedy_start(adj, match);
  Blossom(adj, match).run();
  return collect(match);
}

MatchingResult max_matching(const SimpleGraph& g) {
  const std::size_t n = g.vertices();
  const auto adj = adjacency_of(g);
  std::vector<int> match(n, kNone);

  // A degree-one vertex is matched to its only neighbor in some maximum
  // matching, so both can be removed without changing the optimum.
  std::vector<std::size_t> degree(n);
  std::vector<char> alive(n, 1);
  std::vector<int> stack;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = adj[v].size();
    if (degree[v] == 1) stack.push_back(static_cast<int>(v));
  }
  auto remove = [&](int v) {
    alive[v] = 0;
    for (int w : adj[v]) {
      if (alive[w] && --degree[w] == 1) stack.push_back(w);
    }
  };
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (!alive[v] || degree[v] != 1) continue;
    int partner = kNone;
    for (int w : adj[v]) {
      if (alive[w]) {
        partner = w;
        break;
      }
    }
    match[v] = partner;
    match[partner] = v;
    alive[v] = 0;
    remove(partner);
    for (int w : adj[v]) {
      if (alive[w]) --degree[w];
    }
  }

  // Blossom search on the remaining core, relabeled densely.
  std::vector<int> local(n, kNone);
  std::vector<int> global;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v] && degree[v] > 0) {
      local[v] = static_cast<int>(global.size());
      global.push_back(static_cast<int>(v));
    }
  }
  std::vector<std::vector<int>> core(global.size());
  for (std::size_t i = 0; i < global.size(); ++i) {
    for (int w : adj[global[i]]) {
      if (local[w] != kNone) core[i].push_back(local[w]);
    }
  }
  std::vector<int> core_match(global.size(), kNone);
  greedy_start(core, core_match);
  Blossom(core, core_match).run();
  for (std::size_t i = 0; i < global.size(); ++i) {
    if (core_match[i] != kNone) match[global[i]] = global[core_match[i]];
  }
  return collect(match);
}

std::size_t lambda(const BipartiteGraph& graph) {
  return max_matching(build_incidence_graph(graph)).size;
}

NodeSet disjoint_left_set(const BipartiteGraph& graph) {
  const SimpleGraph ib = build_incidence_graph(graph);
  std::unordered_map<std::uint64_t, NodeId> owner;
  owner.reserve(graph.n_left() * 2);
  for (std::size_t u = 0; u < graph.n_left(); ++u) {
    auto nb = graph.neighbors(u);
    owner.emplace(edge_key(nb[0], nb[1]), static_cast<NodeId>(u));
  }
  std::vector<NodeId> nodes;
  for (auto [a, b] : max_matching(ib).pairs) nodes.push_back(owner.at(edge_key(a, b)));
  std::sort(nodes.begin(), nodes.end());
  return NodeSet(std::move(nodes));
}

std::size_t opt_lower_bound_d2(const BipartiteGraph& graph, std::size_t k) {
  return 2 * std::min(k, lambda(graph));
}

void write_simple_graph(std::ostream& out, const SimpleGraph& g) {
  out << g.vertices() << ' ' << g.edges().size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

SimpleGraph read_simple_graph(std::istream& in) {
  std::size_t vertices = 0;
  std::size_t count = 0;
  if (!(in >> vertices >> count)) throw InvalidInput("expected \"V E\" header");
  std::vector<Edge> edges;
  edges.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!(in >> a >> b)) throw InvalidInput("expected " + std::to_string(count) + " edges");
    if (a >= vertices || b >= vertices) throw InvalidInput("edge endpoint out of range");
    edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }
  return SimpleGraph(vertices, edges);
}

}  // namespace maxcov
