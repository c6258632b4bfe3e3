#include "maxcov/algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <queue>
#include <string>

#include "maxcov/errors.hpp"

namespace maxcov {

namespace {

void check_k(const BipartiteGraph& graph, std::size_t k) {
  if (k > graph.n_left()) {
    throw InvalidInput("k = " + std::to_string(k) + " exceeds n = " +
                       std::to_string(graph.n_left()));
  }
}

void record(GreedyTrace& trace, NodeId u, std::size_t gain, std::size_t covered) {
  trace.selections.push_back(u);
  trace.gains.push_back(gain);
  trace.coverage_prefix.push_back(covered);
}

GreedyTrace empty_trace(std::size_t k) {
  GreedyTrace trace;
  trace.k = k;
  trace.selections.reserve(k);
  trace.gains.reserve(k);
  trace.coverage_prefix.reserve(k);
  return trace;
}

}  // namespace

GreedyTrace greedy(const BipartiteGraph& graph, std::size_t k) {
  check_k(graph, k);
  GreedyTrace trace = empty_trace(k);
  if (k == 0) return trace;

  // Max-heap on (stale upper bound, -index). Bounds only decrease, so a
  // popped entry whose refreshed gain equals its bound beats everything
  // still queued, including equal-gain nodes of larger index.
  struct Entry {
    std::size_t bound;
    NodeId node;
    bool operator<(const Entry& o) const {
      return bound != o.bound ? bound < o.bound : node > o.node;
    }
  };
  std::vector<Entry> heap;
  heap.reserve(graph.n_left());
  for (std::size_t u = 0; u < graph.n_left(); ++u) {
    heap.push_back({graph.degree(u), static_cast<NodeId>(u)});
  }
  std::priority_queue<Entry> queue(std::less<Entry>{}, std::move(heap));

  CoverState state(graph);
  while (trace.selections.size() < k) {
    Entry top = queue.top();
    queue.pop();
    const std::size_t g = state.gain(top.node);
    if (g == top.bound) {
      state.add(top.node);
      record(trace, top.node, g, state.covered());
    } else {
      queue.push({g, top.node});
    }
  }
  return trace;
}

GreedyTrace greedy_naive(const BipartiteGraph& graph, std::size_t k) {
  check_k(graph, k);
  GreedyTrace trace = empty_trace(k);
  CoverState state(graph);
  std::vector<std::uint8_t> taken(graph.n_left(), 0);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = graph.n_left();
    std::size_t best_gain = 0;
    for (std::size_t u = 0; u < graph.n_left(); ++u) {
      if (taken[u]) continue;
      const std::size_t g = state.gain(u);
      if (best == graph.n_left() || g > best_gain) {
        best = u;
        best_gain = g;
      }
    }
    taken[best] = 1;
    state.add(best);
    record(trace, static_cast<NodeId>(best), best_gain, state.covered());
  }
  return trace;
}

AcceptRejectTrace accept_reject(const BipartiteGraph& graph, std::size_t k, bool record_events) {
  check_k(graph, k);
  AcceptRejectTrace trace;
  trace.max_degree = graph.max_degree();
  trace.accepts_per_phase.assign(trace.max_degree + 1, 0);
  trace.accepted.reserve(k);

  CoverState state(graph);
  std::vector<std::uint8_t> in_solution(graph.n_left(), 0);
  for (std::size_t p = trace.max_degree + 1; p-- > 0;) {
    for (std::size_t i = 0; i < graph.n_left(); ++i) {
      if (trace.accepted.size() >= k) return trace;
      if (in_solution[i]) continue;
      const bool accept = state.gain(i) >= p;
      if (record_events) trace.events.push_back({p, static_cast<NodeId>(i), accept});
      if (accept) {
        state.add(i);
        in_solution[i] = 1;
        trace.accepted.push_back(static_cast<NodeId>(i));
        ++trace.accepts_per_phase[p];
      }
    }
  }
  return trace;
}

std::size_t t_d_from_trace(const GreedyTrace& trace, std::size_t d) {
  std::size_t count = 0;
  for (std::size_t g : trace.gains) count += g == d;
  return count;
}

std::size_t t_d_count(const BipartiteGraph& graph) {
  const std::size_t d = graph.regular_degree();
  if (d == 0) throw InvalidInput("t_d is defined for left-regular graphs only");
  return t_d_from_trace(greedy(graph, graph.n_left()), d);
}

NodeSet hybrid(const BipartiteGraph& graph, std::size_t k, std::size_t t) {
  check_k(graph, k);
  if (t > k) throw InvalidInput("hybrid requires t <= k");
  const GreedyTrace trace = greedy(graph, t);
  CoverState state(graph);
  std::vector<std::uint8_t> excluded(graph.n_left(), 0);
  std::vector<NodeId> nodes = trace.selections;
  for (NodeId u : nodes) {
    state.add(u);
    excluded[u] = 1;
  }
  for (NodeId u : top_residual_nodes(graph, state, excluded, k - t)) nodes.push_back(u);
  return NodeSet(std::move(nodes));
}

NodeSet fixed_set(const BipartiteGraph& graph, std::size_t k) {
  check_k(graph, k);
  std::vector<NodeId> order(graph.n_left());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return graph.degree(a) > graph.degree(b);
  });
  order.resize(k);
  return NodeSet(std::move(order));
}

std::size_t fixed_set_value(const BipartiteGraph& graph, std::size_t k) {
  return coverage(graph, fixed_set(graph, k));
}

void write_trace_csv(std::ostream& out, const GreedyTrace& trace) {
  out << "step,node,gain,coverage\n";
  for (std::size_t t = 0; t < trace.selections.size(); ++t) {
    out << t + 1 << ',' << trace.selections[t] << ',' << trace.gains[t] << ','
        << trace.coverage_prefix[t] << '\n';
  }
}

}  // namespace maxcov
