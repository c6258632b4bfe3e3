#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "maxcov/graph.hpp"
#include "maxcov/rng.hpp"

namespace maxcov {

// Where a generator draws its randomness from: substream `stream` of the
// 64-bit master seed (see substream_seed).
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
};

namespace degrees {
struct Uniform {
  std::size_t d;
};
struct Explicit {
  std::vector<std::size_t> values;
};
// values[i] with probability probs[i].
struct Mixture {
  std::vector<std::size_t> values;
  std::vector<double> probs;
};
// floor of Pareto(a, x_min = 1) samples, clamped to [1, m].
struct PowerLaw {
  double a;
};
}  // namespace degrees

using DegreeSpec =
    std::variant<degrees::Uniform, degrees::Explicit, degrees::Mixture, degrees::PowerLaw>;

// Throws InvalidInput if a spec cannot produce degrees in [1, m] for n nodes.
void validate(const DegreeSpec& spec, std::size_t n, std::size_t m);

// Draws one degree sequence. Explicit/Uniform ignore rng. Power-law
// sequences come back sorted descending; other kinds keep node order.
std::vector<std::size_t> realize_degrees(const DegreeSpec& spec, std::size_t n, std::size_t m,
                                         Rng& rng);

// Uniform d-subset of {0..m-1}, sorted. Partial Fisher-Yates on a scratch
// permutation when d > m/64, rejection sampling otherwise.
class SubsetSampler {
 public:
  explicit SubsetSampler(std::size_t m) : m_(m) {}
  void sample(std::size_t d, Rng& rng, std::vector<NodeId>& out);

 private:
  std::size_t m_;
  std::vector<NodeId> perm_;
};

// GenR(n, m, d_1..d_n) from an explicit rng; the other generators build on it.
BipartiteGraph sample_genr(std::size_t m, const std::vector<std::size_t>& degrees, Rng& rng);

BipartiteGraph gen_lrr(std::size_t n, std::size_t d, Seed seed);
BipartiteGraph gen_ulrr(std::size_t n, std::size_t m, std::size_t d, Seed seed);
BipartiteGraph gen_genr(std::size_t n, std::size_t m, const std::vector<std::size_t>& degrees,
                        Seed seed);

struct PowerLawDegrees {
  std::vector<std::size_t> degrees;  // descending
  std::size_t clamped = 0;           // samples whose floor exceeded m
};
PowerLawDegrees gen_powerlaw_degrees(std::size_t n, std::size_t m, double a, Seed seed);
PowerLawDegrees sample_powerlaw_degrees(std::size_t n, std::size_t m, double a, Rng& rng);

// Classical tight instance for greedy: R = {1..k}^k (lexicographic
// indices), left nodes a_1..a_{k-1} followed by b_1..b_k, so index order
// makes greedy pick a_1, ..., a_{k-1}, b_1.
struct BadInstance {
  BipartiteGraph graph;
  std::size_t k = 0;
  std::string tie_order;
};
BadInstance gen_bad_instance(std::size_t k);

}  // namespace maxcov
