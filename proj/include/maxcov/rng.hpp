#pragma once

#include <cstdint>
#include <random>

namespace maxcov {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of substream `stream` derived from `master`:
// mix64(master ^ golden * (stream + 1)). Trial i of every experiment draws
// from substream i, so results do not depend on scheduling.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream);

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) {
  return Rng(substream_seed(master, stream));
}

}  // namespace maxcov
