#ifndef GM_BUSH_HPP
#define GM_BUSH_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "gm/errors.hpp"
#include "gm/graph.hpp"

namespace gm {

/// One bush: the star formed by all edges of a single weight value.
struct Bush {
    int center = 0;
    std::vector<int> leaves;  // sorted
    Rational weight;
    std::vector<int> edgeIdx; // indices into graph.edges(), sorted
};

/// A weighted graph in which every weight class forms a star. Bushes are
/// ordered by strictly decreasing weight.
struct BushGraph {
    WeightedGraph graph;
    std::vector<Bush> bushes;
};

/// Thrown when a weight class is not a star; carries offending edges
/// (two equal-weight edges with no shared endpoint, or three with no
/// common center).
class NotABushGraphError : public ValidationError {
public:
    NotABushGraphError(const std::string& what, std::vector<VertexPair> witness)
        : ValidationError(what), witness_(std::move(witness)) {}
    const std::vector<VertexPair>& witness() const { return witness_; }

private:
    std::vector<VertexPair> witness_;
};

/// Checks the star-per-weight-class property and extracts the bush list.
/// Single-edge bushes take their lower endpoint as center.
BushGraph validateBush(const WeightedGraph& g);

/// Randomized greedy on a bush graph: bushes heaviest first, a uniformly
/// random surviving edge from each nonempty bush. Output is a greedy
/// matching; identical seeds give identical runs.
Matching rgma(const BushGraph& b, std::uint64_t seed);

/// Exact expected weight of the rgma output over all of its random choices,
/// as a rational. Memoized on residual states; leaves whose remaining
/// futures coincide are grouped. Budget counts distinct evaluated states.
Rational rgmaExpectedWeightExact(const BushGraph& b, std::uint64_t budget = 5'000'000);

/// Vertex selection policy for bushDecompose.
struct PickPolicy {
    enum class Kind { Random, Given };
    Kind kind = Kind::Random;
    std::vector<int> order; // for Given: vertices in preference order

    static PickPolicy random() { return {Kind::Random, {}}; }
    static PickPolicy given(std::vector<int> order) { return {Kind::Given, std::move(order)}; }
};

struct BushDecomposition {
    BushGraph bushGraph;
    std::map<VertexPair, int> rankOf; // edge -> step index k (weight 1 - k*eps)
    Rational epsilon;                 // exactly 1 / (|V|^3 + 1)
    std::vector<int> pickSequence;    // centers in pick order
};

/// Converts an unweighted graph into a bush graph: repeatedly select a
/// vertex that still has surviving edges (seeded-random under the Random
/// policy, caller order under Given), give its surviving edges weight
/// 1 - k*eps, remove them, increment k. Ranks are consecutive from 0.
BushDecomposition bushDecompose(const WeightedGraph& g, const PickPolicy& policy,
                                std::uint64_t seed = 0);

} // namespace gm

#endif
