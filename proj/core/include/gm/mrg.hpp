#ifndef GM_MRG_HPP
#define GM_MRG_HPP

#include <cstdint>

#include "gm/graph.hpp"

namespace gm {

/// Randomized greedy matching on a unit-weight graph: pick a uniformly
/// random vertex among those with at least one unmatched neighbor, then a
/// uniformly random unmatched neighbor of it; repeat until no edge survives.
/// Output is a maximal matching. Throws PreconditionError unless all
/// weights are 1.
Matching mrg(const WeightedGraph& g, std::uint64_t seed);

/// Exact expected cardinality of the mrg output over its random choices.
/// Memoized on the adjacency-sorted residual edge list.
Rational mrgExpectedCardinalityExact(const WeightedGraph& g, std::uint64_t budget = 5'000'000);

struct CompareReport {
    std::uint64_t trials = 0;
    int optCardinality = 0;
    /// False when no per-trial ratios exist (zero trials or edgeless graph).
    bool defined = false;
    Rational mrgMeanRatio;  // exact: sum of sizes / (trials * opt)
    Rational rgmaMeanRatio; // ditto, for rgma on a fresh random decomposition
    double mrgStdError = 0.0;
    double rgmaStdError = 0.0;
    Rational mrgMinRatio;
    Rational rgmaMinRatio;
};

/// Runs mrg directly and rgma on a fresh seeded random bush decomposition,
/// `trials` times each, and reports mean cardinality ratios against the
/// maximum cardinality matching. Deterministic given (g, trials, seed).
CompareReport compareRgmaMrg(const WeightedGraph& g, std::uint64_t trials, std::uint64_t seed);

} // namespace gm

#endif
