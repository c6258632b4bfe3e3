#include "maxcov/exact_opt.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <ostream>
#include <queue>
#include <string>

#include "maxcov/algorithms.hpp"
#include "maxcov/errors.hpp"

namespace maxcov {

std::string_view to_string(OptMethod method) {
  return method == OptMethod::exhaustive ? "exhaustive" : "branch_bound";
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Neighborhoods as packed bitsets, `words` 64-bit words per left node.
class PackedSets {
 public:
  explicit PackedSets(const BipartiteGraph& graph)
      : n_(graph.n_left()), words_((graph.m_right() + 63) / 64), bits_(n_ * words_, 0) {
    for (std::size_t u = 0; u < n_; ++u) {
      for (NodeId v : graph.neighbors(u)) bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }
  std::size_t words() const { return words_; }
  const std::uint64_t* row(std::size_t u) const { return bits_.data() + u * words_; }

  std::size_t gain(std::size_t u, const std::uint64_t* cover) const {
    const std::uint64_t* r = row(u);
    std::size_t g = 0;
    for (std::size_t w = 0; w < words_; ++w) g += std::popcount(r[w] & ~cover[w]);
    return g;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

std::size_t popcount(const std::uint64_t* words, std::size_t count) {
  std::size_t total = 0;
  for (std::size_t w = 0; w < count; ++w) total += std::popcount(words[w]);
  return total;
}

OptResult take_everything(const BipartiteGraph& graph, OptMethod method) {
  OptResult result;
  result.method = method;
  std::vector<NodeId> all(graph.n_left());
  for (std::size_t u = 0; u < all.size(); ++u) all[u] = static_cast<NodeId>(u);
  result.witness = NodeSet(std::move(all));
  result.value = coverage(graph, result.witness);
  result.nodes_explored = 1;
  return result;
}

double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1);
}

}  // namespace

OptResult opt_exhaustive(const BipartiteGraph& graph, std::size_t k,
                         const ExhaustiveOptions& options) {
  const auto start = Clock::now();
  const std::size_t n = graph.n_left();
  if (k >= n) {
    auto result = take_everything(graph, OptMethod::exhaustive);
    result.time_ms = elapsed_ms(start);
    return result;
  }
  if (log_binomial(n, k) > std::log(options.subset_budget) + 1e-9) {
    throw CapacityError("binom(" + std::to_string(n) + ", " + std::to_string(k) +
                        ") exceeds the exhaustive budget");
  }

  const PackedSets sets(graph);
  const std::size_t words = sets.words();
  // cover[depth] holds N of the first `depth` chosen nodes.
  std::vector<std::uint64_t> cover((k + 1) * words, 0);
  std::vector<NodeId> chosen(k);
  std::vector<NodeId> best_set;
  std::size_t best = 0;
  std::size_t leaves = 0;
  bool have_best = false;

  auto recurse = [&](auto&& self, std::size_t first, std::size_t depth) -> void {
    if (depth == k) {
      ++leaves;
      const std::size_t value = popcount(cover.data() + depth * words, words);
      if (!have_best || value > best) {
        best = value;
        best_set.assign(chosen.begin(), chosen.end());
        have_best = true;
      }
      return;
    }
    const std::uint64_t* parent = cover.data() + depth * words;
    std::uint64_t* child = cover.data() + (depth + 1) * words;
    for (std::size_t u = first; u + (k - depth) <= n; ++u) {
      const std::uint64_t* r = sets.row(u);
      for (std::size_t w = 0; w < words; ++w) child[w] = parent[w] | r[w];
      chosen[depth] = static_cast<NodeId>(u);
      self(self, u + 1, depth + 1);
    }
  };
  recurse(recurse, 0, 0);

  OptResult result;
  result.method = OptMethod::exhaustive;
  result.value = best;
  result.witness = NodeSet(std::move(best_set));
  result.nodes_explored = leaves;
  result.time_ms = elapsed_ms(start);
  return result;
}

OptResult opt_branch_bound(const BipartiteGraph& graph, std::size_t k,
                           const BranchBoundOptions& options) {
  const auto start = Clock::now();
  const std::size_t n = graph.n_left();
  if (k >= n) {
    auto result = take_everything(graph, OptMethod::branch_bound);
    result.time_ms = elapsed_ms(start);
    return result;
  }

  OptResult result;
  result.method = OptMethod::branch_bound;

  const GreedyTrace incumbent_trace = greedy(graph, k);
  std::size_t incumbent = incumbent_trace.value();
  std::vector<NodeId> incumbent_set = incumbent_trace.selections;

  const PackedSets sets(graph);
  const std::size_t words = sets.words();
  std::vector<std::uint64_t> all_cover(words, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = 0; w < words; ++w) all_cover[w] |= sets.row(u)[w];
  }
  const std::size_t cap = std::min(graph.m_right(), popcount(all_cover.data(), words));

  // Search nodes live in an arena; the frontier references them by id.
  struct Node {
    std::uint32_t parent;
    std::int32_t added;  // left node included at this step, -1 for exclude
    std::uint32_t chosen;
    std::uint32_t next;  // first undecided left index
    std::size_t covered;
  };
  constexpr std::uint32_t kRoot = 0xFFFFFFFFu;
  std::vector<Node> arena;
  std::vector<std::uint64_t> arena_cover;

  struct Open {
    std::size_t bound;
    std::uint32_t next;
    std::uint64_t seq;
    std::uint32_t id;
    bool operator<(const Open& o) const {
      if (bound != o.bound) return bound < o.bound;
      if (next != o.next) return next < o.next;
      return seq > o.seq;
    }
  };
  std::priority_queue<Open> frontier;
  std::uint64_t seq = 0;

  std::vector<std::size_t> residual;
  residual.reserve(n);
  auto bound_of = [&](const std::uint64_t* cover, std::size_t covered, std::size_t chosen,
                      std::size_t next) {
    const std::size_t slots = k - chosen;
    residual.clear();
    for (std::size_t u = next; u < n; ++u) residual.push_back(sets.gain(u, cover));
    std::size_t extra = 0;
    if (slots >= residual.size()) {
      for (auto g : residual) extra += g;
    } else {
      std::nth_element(residual.begin(), residual.begin() + static_cast<std::ptrdiff_t>(slots),
                       residual.end(), std::greater<>());
      for (std::size_t i = 0; i < slots; ++i) extra += residual[i];
    }
    return std::min(cap, covered + extra);
  };

  auto witness_of = [&](std::uint32_t id) {
    std::vector<NodeId> nodes;
    while (id != kRoot) {
      if (arena[id].added >= 0) nodes.push_back(static_cast<NodeId>(arena[id].added));
      id = arena[id].parent;
    }
    std::reverse(nodes.begin(), nodes.end());
    return nodes;
  };

  auto push_node = [&](std::uint32_t parent, std::int32_t added, std::size_t chosen,
                       std::size_t next, const std::uint64_t* cover) {
    const std::size_t covered = popcount(cover, words);
    const auto id = static_cast<std::uint32_t>(arena.size());
    arena.push_back({parent, added, static_cast<std::uint32_t>(chosen),
                     static_cast<std::uint32_t>(next), covered});
    arena_cover.insert(arena_cover.end(), cover, cover + words);
    if (covered > incumbent) {
      incumbent = covered;
      incumbent_set = witness_of(id);
    }
    if (chosen == k || next == n) return;
    const std::size_t bound = bound_of(cover, covered, chosen, next);
    if (bound > incumbent) {
      frontier.push({bound, static_cast<std::uint32_t>(next), seq++, id});
    }
  };

  std::size_t explored = 0;
  bool stopped = false;
  if (incumbent < cap) {
    std::vector<std::uint64_t> empty(words, 0);
    push_node(kRoot, -1, 0, 0, empty.data());
  }
  std::vector<std::uint64_t> parent_cover(words);
  std::vector<std::uint64_t> child(words);
  while (!frontier.empty()) {
    const Open top = frontier.top();
    if (top.bound <= incumbent) break;  // nothing left can improve
    if (options.node_budget > 0 && explored >= options.node_budget) {
      stopped = true;
      break;
    }
    frontier.pop();
    ++explored;
    if ((explored & 1023) == 0) {
      if ((options.time_budget_ms > 0 && elapsed_ms(start) > options.time_budget_ms) ||
          frontier.size() > options.max_frontier) {
        stopped = true;
        break;
      }
    }
    const Node node = arena[top.id];
    std::copy_n(arena_cover.begin() + static_cast<std::ptrdiff_t>(top.id * words), words,
                parent_cover.begin());
    const std::size_t u = node.next;
    // Including a node that adds nothing is dominated by excluding it.
    if (sets.gain(u, parent_cover.data()) > 0) {
      for (std::size_t w = 0; w < words; ++w) child[w] = parent_cover[w] | sets.row(u)[w];
      push_node(top.id, static_cast<std::int32_t>(u), node.chosen + 1, u + 1, child.data());
    }
    push_node(top.id, -1, node.chosen, u + 1, parent_cover.data());
  }

  result.value = incumbent;
  result.witness = NodeSet(std::move(incumbent_set));
  result.nodes_explored = explored;
  result.best_effort = stopped;
  result.time_ms = elapsed_ms(start);
  return result;
}

void write_opt_csv(std::ostream& out, const OptResult& result) {
  out << "value,method,explored,time_ms\n";
  out << result.value << ',' << to_string(result.method) << ',' << result.nodes_explored << ','
      << result.time_ms << '\n';
}

}  // namespace maxcov
