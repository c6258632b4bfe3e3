#include "maxcov/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "maxcov/errors.hpp"

namespace maxcov {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_degree(std::size_t d, std::size_t m) {
  if (d < 1 || d > m) {
    throw InvalidInput("degree " + std::to_string(d) + " outside [1, " + std::to_string(m) + "]");
  }
}

}  // namespace

void validate(const DegreeSpec& spec, std::size_t n, std::size_t m) {
  if (m == 0) throw InvalidInput("m must be at least 1");
  std::visit(overloaded{
                 [&](const degrees::Uniform& u) { check_degree(u.d, m); },
                 [&](const degrees::Explicit& e) {
                   if (e.values.size() != n) {
                     throw InvalidInput("explicit degree list has " +
                                        std::to_string(e.values.size()) + " entries, n = " +
                                        std::to_string(n));
                   }
                   for (auto d : e.values) check_degree(d, m);
                 },
                 [&](const degrees::Mixture& mix) {
                   if (mix.values.empty() || mix.values.size() != mix.probs.size()) {
                     throw InvalidInput("mixture needs matching non-empty values/probs");
                   }
                   double total = 0.0;
                   for (double p : mix.probs) {
                     if (!(p >= 0.0)) throw InvalidInput("mixture probabilities must be >= 0");
                     total += p;
                   }
                   if (std::abs(total - 1.0) > 1e-12) {
                     throw InvalidInput("mixture probabilities sum to " + std::to_string(total));
                   }
                   for (std::size_t i = 0; i < mix.values.size(); ++i) {
                     if (mix.probs[i] > 0.0) check_degree(mix.values[i], m);
                   }
                 },
                 [&](const degrees::PowerLaw& p) {
                   if (!(p.a > 1.0)) throw InvalidInput("Pareto shape a must exceed 1");
                 },
             },
             spec);
}

std::vector<std::size_t> realize_degrees(const DegreeSpec& spec, std::size_t n, std::size_t m,
                                         Rng& rng) {
  validate(spec, n, m);
  return std::visit(
      overloaded{
          [&](const degrees::Uniform& u) { return std::vector<std::size_t>(n, u.d); },
          [&](const degrees::Explicit& e) { return e.values; },
          [&](const degrees::Mixture& mix) {
            std::discrete_distribution<std::size_t> pick(mix.probs.begin(), mix.probs.end());
            std::vector<std::size_t> out(n);
            for (auto& d : out) d = mix.values[pick(rng)];
            return out;
          },
          [&](const degrees::PowerLaw& p) {
            return sample_powerlaw_degrees(n, m, p.a, rng).degrees;
          },
      },
      spec);
}

void SubsetSampler::sample(std::size_t d, Rng& rng, std::vector<NodeId>& out) {
  check_degree(d, m_);
  out.clear();
  out.reserve(d);
  if (d * 64 > m_) {
    if (perm_.size() != m_) {
      perm_.resize(m_);
      std::iota(perm_.begin(), perm_.end(), NodeId{0});
    }
    // Swap positions are recorded so the permutation can be restored,
    // keeping each call O(d) instead of O(m).
    std::vector<std::size_t> swaps(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, m_ - 1);
      const std::size_t j = pick(rng);
      std::swap(perm_[i], perm_[j]);
      swaps[i] = j;
      out.push_back(perm_[i]);
    }
    for (std::size_t i = d; i-- > 0;) std::swap(perm_[i], perm_[swaps[i]]);
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, m_ - 1);
    if (d <= 16) {
      while (out.size() < d) {
        const auto v = static_cast<NodeId>(pick(rng));
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      }
    } else {
      std::unordered_set<NodeId> seen;
      seen.reserve(2 * d);
      while (out.size() < d) {
        const auto v = static_cast<NodeId>(pick(rng));
        if (seen.insert(v).second) out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
}

BipartiteGraph sample_genr(std::size_t m, const std::vector<std::size_t>& degrees, Rng& rng) {
  if (m == 0) throw InvalidInput("m must be at least 1");
  for (auto d : degrees) check_degree(d, m);
  SubsetSampler sampler(m);
  std::vector<std::vector<NodeId>> adjacency(degrees.size());
  for (std::size_t u = 0; u < degrees.size(); ++u) sampler.sample(degrees[u], rng, adjacency[u]);
  return BipartiteGraph(m, std::move(adjacency));
}

BipartiteGraph gen_lrr(std::size_t n, std::size_t d, Seed seed) {
  if (d < 1 || d > n) throw InvalidInput("LRR requires 1 <= d <= n");
  return gen_ulrr(n, n, d, seed);
}

BipartiteGraph gen_ulrr(std::size_t n, std::size_t m, std::size_t d, Seed seed) {
  if (d < 1 || d > m) throw InvalidInput("ULRR requires 1 <= d <= m");
  auto rng = make_rng(seed.master, seed.stream);
  return sample_genr(m, std::vector<std::size_t>(n, d), rng);
}

BipartiteGraph gen_genr(std::size_t n, std::size_t m, const std::vector<std::size_t>& degrees,
                        Seed seed) {
  if (degrees.size() != n) throw InvalidInput("degree list length differs from n");
  auto rng = make_rng(seed.master, seed.stream);
  return sample_genr(m, degrees, rng);
}

PowerLawDegrees sample_powerlaw_degrees(std::size_t n, std::size_t m, double a, Rng& rng) {
  if (!(a > 1.0)) throw InvalidInput("Pareto shape a must exceed 1");
  if (m == 0) throw InvalidInput("m must be at least 1");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PowerLawDegrees out;
  out.degrees.resize(n);
  for (auto& d : out.degrees) {
    const double u = 1.0 - unif(rng);  // (0, 1]
    const double x = std::pow(u, -1.0 / a);
    const double fl = std::floor(x);
    if (fl > static_cast<double>(m)) {
      d = m;
      ++out.clamped;
    } else {
      d = std::max<std::size_t>(1, static_cast<std::size_t>(fl));
    }
  }
  std::sort(out.degrees.begin(), out.degrees.end(), std::greater<>());
  return out;
}

PowerLawDegrees gen_powerlaw_degrees(std::size_t n, std::size_t m, double a, Seed seed) {
  auto rng = make_rng(seed.master, seed.stream);
  return sample_powerlaw_degrees(n, m, a, rng);
}

BadInstance gen_bad_instance(std::size_t k) {
  if (k < 2) throw InvalidInput("bad instance requires k >= 2");
  // (2k - 1) * k^(k-1) edges; k = 8 is the largest that stays below 40M.
  constexpr double kMaxEdges = 4e7;
  if (static_cast<double>(2 * k - 1) * std::pow(static_cast<double>(k), double(k - 1)) >
      kMaxEdges) {
    throw CapacityError("bad instance with k = " + std::to_string(k) + " is too large");
  }
  std::size_t size = 1;
  for (std::size_t i = 0; i < k; ++i) size *= k;

  // Coordinate x_i (1-based i) of lexicographic index r, as 0-based value.
  std::vector<std::size_t> place(k + 1, 1);  // place[i] = k^(k - i)
  for (std::size_t i = k; i-- > 1;) place[i] = place[i + 1] * k;
  auto coord = [&](std::size_t r, std::size_t i) { return (r / place[i]) % k; };

  std::vector<std::vector<NodeId>> adjacency(2 * k - 1);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t i = 1; i < k; ++i) {
      if (coord(r, i) == 0) adjacency[i - 1].push_back(static_cast<NodeId>(r));
    }
    adjacency[k - 1 + coord(r, k)].push_back(static_cast<NodeId>(r));
  }
  BadInstance out{BipartiteGraph(size, std::move(adjacency)), k, {}};
  out.tie_order = "nodes 0.." + std::to_string(k - 2) + " are a_1..a_" + std::to_string(k - 1) +
                  ", nodes " + std::to_string(k - 1) + ".." + std::to_string(2 * k - 2) +
                  " are b_1..b_" + std::to_string(k);
  return out;
}

}  // namespace maxcov
