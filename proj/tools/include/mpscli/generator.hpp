#pragma once

#include <cstdint>

#include "mps/graph.hpp"

namespace mps {

/// Random d-regular simple graph on n nodes via the pairing model: n*d
/// stub endpoints are shuffled and paired; pairings with self loops or
/// parallel edges are discarded and redrawn. All weights are 1.
///
/// Deterministic per seed, independent of the platform's standard library
/// (the shuffle uses a self-contained generator).
///
/// Throws InfeasibleDegree when n*d is odd or d >= n or either is negative.
WeightedGraph gen_random_regular(int n, int d, std::uint64_t seed);

} // namespace mps
