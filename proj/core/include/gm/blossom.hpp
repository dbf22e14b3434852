#ifndef GM_BLOSSOM_HPP
#define GM_BLOSSOM_HPP

#include "gm/graph.hpp"

namespace gm {

/// Exact maximum weight matching (over all matchings, not only greedy ones).
/// Primal-dual blossom algorithm with exact rational duals; O(V^3).
Matching maxWeightMatching(const WeightedGraph& g);

/// Exhaustive oracle for maxWeightMatching, usable up to ~24 edges. Tests
/// hold the blossom implementation to this one.
Matching maxWeightMatchingBruteForce(const WeightedGraph& g);

/// Maximum cardinality matching (weights ignored). Independent augmenting
/// path implementation with blossom contraction.
Matching maxCardinalityMatching(const WeightedGraph& g);

} // namespace gm

#endif
