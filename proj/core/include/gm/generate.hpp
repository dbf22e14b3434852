#ifndef GM_GENERATE_HPP
#define GM_GENERATE_HPP

#include "gm/cnf.hpp"
#include "gm/graph.hpp"
#include "gm/rng.hpp"

namespace gm {

enum class BushWeightScheme { Linear, Harmonic, Geometric };

/// Random bush graph: `bushes` weight classes, each a star of at most
/// `maxBushEdges` edges that may reuse earlier vertices. Weights are
/// strictly decreasing per the scheme.
WeightedGraph randomBushGraph(Rng& rng, int bushes, int maxBushEdges,
                              BushWeightScheme scheme = BushWeightScheme::Linear);

/// Erdos-Renyi style graph; each edge appears with probability
/// probPercent/100 and draws its weight uniformly from weightPool.
WeightedGraph randomGnp(Rng& rng, int n, int probPercent, const std::vector<Rational>& weightPool);

/// Connected unit-weight graph: random spanning tree plus G(n, p) extras.
WeightedGraph randomConnectedUnitGraph(Rng& rng, int n, int extraProbPercent);

/// Random weighted graph with lambda0 >= 2 (weights are powers of two).
WeightedGraph randomPowerOfTwoGraph(Rng& rng, int n, int probPercent, int maxExponent = 3);

/// Random formula already in the canonical occurrence pattern: every
/// variable occurs once positively and once or twice negatively, clauses
/// hold 1..maxClauseSize distinct variables. numVariables >= 1.
CnfFormula randomNormalizedFormula(Rng& rng, int numVariables, int maxClauses, int maxClauseSize);

} // namespace gm

#endif
