#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "maxcov/graph.hpp"

namespace maxcov {

// Full record of a greedy run. gains[t] is the marginal gain of step t+1
// and coverage_prefix[t] the coverage after it.
struct GreedyTrace {
  std::size_t k = 0;
  std::vector<NodeId> selections;
  std::vector<std::size_t> gains;
  std::vector<std::size_t> coverage_prefix;

  std::size_t value() const { return coverage_prefix.empty() ? 0 : coverage_prefix.back(); }
};

// Greedy max coverage with lazy re-evaluation: each step takes the node of
// largest marginal gain, ties to the smallest index. Throws if k > n_left.
GreedyTrace greedy(const BipartiteGraph& graph, std::size_t k);

// Plain argmax greedy, O(k * |E|). Reference for greedy().
GreedyTrace greedy_naive(const BipartiteGraph& graph, std::size_t k);

struct AcceptRejectEvent {
  std::size_t phase;
  NodeId node;
  bool accepted;
  friend bool operator==(const AcceptRejectEvent&, const AcceptRejectEvent&) = default;
};

struct AcceptRejectTrace {
  std::size_t max_degree = 0;
  std::vector<AcceptRejectEvent> events;  // empty unless requested
  std::vector<NodeId> accepted;
  std::vector<std::size_t> accepts_per_phase;  // indexed by phase p

  std::size_t first_phase_accepts() const {
    return accepts_per_phase.empty() ? 0 : accepts_per_phase[max_degree];
  }
};

// Phases p = max degree down to 0; phase p scans u_1..u_n in index order
// and accepts every node not yet in A whose marginal gain to A is >= p,
// while |A| < k. Once |A| = k no further node can be accepted and the scan
// stops, so `events` ends at the last accept.
AcceptRejectTrace accept_reject(const BipartiteGraph& graph, std::size_t k,
                                bool record_events = false);

// t_d = number of greedy steps (k = n_left) whose gain equals d on a
// d-left-regular graph. Throws InvalidInput for irregular graphs.
std::size_t t_d_count(const BipartiteGraph& graph);
// Same count from the greedy trace prefix; `trace` must come from a run
// with k = n_left or have its gain sequence drop below d before the end.
std::size_t t_d_from_trace(const GreedyTrace& trace, std::size_t d);

// Y^t: t greedy steps, then the k - t nodes of largest marginal gain to G_t.
NodeSet hybrid(const BipartiteGraph& graph, std::size_t k, std::size_t t);

// H_k: the k largest-degree nodes, ties by index (the first k nodes on a
// regular graph).
NodeSet fixed_set(const BipartiteGraph& graph, std::size_t k);
std::size_t fixed_set_value(const BipartiteGraph& graph, std::size_t k);

// CSV with header "step,node,gain,coverage"; steps are 1-based.
void write_trace_csv(std::ostream& out, const GreedyTrace& trace);

}  // namespace maxcov
