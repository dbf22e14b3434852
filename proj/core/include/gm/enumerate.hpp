#ifndef GM_ENUMERATE_HPP
#define GM_ENUMERATE_HPP

#include <cstdint>
#include <vector>

#include "gm/graph.hpp"

namespace gm {

/// Exact number of distinct greedy matchings of g (distinct as edge sets).
/// Memoized on canonical residual states with per-component decomposition;
/// saturates at UINT64_MAX on (absurdly) large counts.
std::uint64_t countGreedyMatchings(const WeightedGraph& g);

/// The full set of greedy matchings of g, i.e. every matching some
/// tie-breaking of the greedy procedure can produce. Intended for desk
/// scale; throws LimitExceededError (carrying the known count) when more
/// than `limit` distinct matchings exist.
std::vector<Matching> enumerateGreedyMatchings(const WeightedGraph& g, std::uint64_t limit = 100000);

} // namespace gm

#endif
