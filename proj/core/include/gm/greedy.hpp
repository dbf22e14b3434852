#ifndef GM_GREEDY_HPP
#define GM_GREEDY_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "gm/graph.hpp"
#include "gm/rng.hpp"

namespace gm {

/// Rule used to choose among the currently available edges of the heaviest
/// surviving weight class.
struct TieBreaker {
    enum class Kind { SeededRandom, LexMinEdge, PriorityList, Callback };

    Kind kind = Kind::LexMinEdge;
    // Priority list: explicit edges, earlier entries win; unlisted edges
    // come after all listed ones, ordered lexicographically.
    std::vector<VertexPair> priority;
    // Callback: receives candidate edge indices into g.edges(), returns the
    // position of the pick. Lets tests drive adversarial schedules.
    std::function<std::size_t(const WeightedGraph&, const std::vector<int>&)> choose;

    static TieBreaker random() { return {Kind::SeededRandom, {}, {}}; }
    static TieBreaker lexicographic() { return {Kind::LexMinEdge, {}, {}}; }
    static TieBreaker priorityList(std::vector<VertexPair> edges);
    static TieBreaker callback(
        std::function<std::size_t(const WeightedGraph&, const std::vector<int>&)> fn);
};

struct TraceStep {
    VertexPair edge;
    int weightClassIndex = 0; // index into weightClasses(g) at pick time
    int candidateCount = 0;   // surviving edges of that class at pick time
};

struct GreedyRun {
    Matching matching;
    std::vector<TraceStep> trace;
};

/// Runs the greedy matching procedure: process weight classes heaviest
/// first, repeatedly pick a surviving edge of the current class per the tie
/// breaker, and delete both endpoints. The result is always maximal and
/// greedy. Identical (graph, tie breaker, seed) triples give identical runs.
GreedyRun runGreedy(const WeightedGraph& g, const TieBreaker& tb, std::uint64_t seed = 0);

/// Greediness verifier: m must be a matching of g. Checks maximality, then
/// recursively peels the heaviest level: the heaviest weight in m must equal
/// the heaviest weight of the surviving graph; endpoints of those matched
/// edges are deleted and the check recurses. Greedy iff the graph runs out
/// of edges exactly when m runs out.
bool isGreedy(const WeightedGraph& g, const Matching& m);

} // namespace gm

#endif
