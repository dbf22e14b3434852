#ifndef GM_POLY_HPP
#define GM_POLY_HPP

#include <vector>

#include "gm/exact.hpp"
#include "gm/graph.hpp"

namespace gm {

/// One weight-neutral rewrite of the repair loop: a problematic edge enters
/// the matching, its two strictly lighter matched neighbors leave.
struct RepairStep {
    VertexPair problematicEdge;
    std::vector<VertexPair> replacedEdges;
    Rational weightDelta; // asserted zero
};

/// Edges outside m that no incident matched edge dominates (every matched
/// edge at either endpoint is strictly lighter; edges with both endpoints
/// free count too). Empty iff m is greedy, for maximal m.
std::vector<VertexPair> findProblematicEdges(const WeightedGraph& g, const Matching& m);

/// Polynomial solver for lambda0 >= 2: starts from an exact maximum weight
/// matching and repairs the heaviest problematic edge until none is left.
/// The result is a greedy matching with weight exactly
/// w(maxWeightMatching(g)); every repair is weight neutral. exploredStates
/// reports the number of repair iterations. Throws PreconditionError (with
/// the violating weight pair) when lambda0(g) < 2.
SolveResult solveLambda0Ge2(const WeightedGraph& g, std::vector<RepairStep>* repairLog = nullptr);

} // namespace gm

#endif
