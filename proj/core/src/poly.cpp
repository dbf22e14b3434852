#include "gm/poly.hpp"

#include <algorithm>
#include <cassert>

#include "gm/blossom.hpp"
#include "gm/errors.hpp"
#include "gm/greedy.hpp"

namespace gm {

std::vector<VertexPair> findProblematicEdges(const WeightedGraph& g, const Matching& m) {
    validateMatching(g, m);
    std::vector<int> matchedEdgeAt(static_cast<std::size_t>(g.numVertices()), -1);
    for (auto [u, v] : m.edges) {
        int idx = *g.findEdge(u, v);
        matchedEdgeAt[static_cast<std::size_t>(u)] = idx;
        matchedEdgeAt[static_cast<std::size_t>(v)] = idx;
    }
    std::vector<VertexPair> out;
    for (int i = 0; i < g.numEdges(); ++i) {
        const Edge& e = g.edge(i);
        if (m.contains(e.u, e.v)) continue;
        bool dominated = false;
        for (int end : {e.u, e.v}) {
            int me = matchedEdgeAt[static_cast<std::size_t>(end)];
            if (me >= 0 && !(g.edge(me).w < e.w)) dominated = true;
        }
        if (!dominated) out.push_back({e.u, e.v});
    }
    return out;
}

SolveResult solveLambda0Ge2(const WeightedGraph& g, std::vector<RepairStep>* repairLog) {
    auto l0 = lambda0(g);
    if (l0 && *l0 < Rational(2)) {
        auto classes = weightClasses(g);
        std::string pair;
        for (std::size_t i = 0; i + 1 < classes.size(); ++i)
            if (classes[i].weight / classes[i + 1].weight == *l0) {
                pair = classes[i].weight.str() + " / " + classes[i + 1].weight.str();
                break;
            }
        throw PreconditionError("lambda0 = " + l0->str() + " < 2 (weights " + pair + ")");
    }

    Matching m = maxWeightMatching(g);
    Rational targetWeight = matchingWeight(g, m);
    std::size_t initialSize = m.size();
    std::uint64_t iterations = 0;
    Rational lastRepaired = 0;
    bool haveLast = false;

    for (;;) {
        auto problematic = findProblematicEdges(g, m);
        if (problematic.empty()) break;
        // Heaviest problematic edge, ties broken lexicographically.
        VertexPair pick = problematic.front();
        Rational pickW = g.edge(*g.findEdge(pick.first, pick.second)).w;
        for (const auto& p : problematic) {
            Rational w = g.edge(*g.findEdge(p.first, p.second)).w;
            if (w > pickW || (w == pickW && p < pick)) {
                pick = p;
                pickW = w;
            }
        }
        // The repaired-weight sequence never increases; a heavier problematic
        // edge appearing later would contradict the max-first policy.
        if (haveLast && pickW > lastRepaired)
            throw Error("internal: repair created a heavier problematic edge");
        lastRepaired = pickW;
        haveLast = true;

        std::vector<VertexPair> incident;
        for (auto [u, v] : m.edges)
            if (u == pick.first || u == pick.second || v == pick.first || v == pick.second)
                incident.push_back({u, v});
        // With an exact maximum weight matching and lambda0 >= 2, a
        // problematic edge always has exactly two strictly lighter matched
        // neighbors (a free endpoint would contradict maximality of weight).
        if (incident.size() != 2)
            throw Error("internal: problematic edge without two matched neighbors");
        Rational replacedW = 0;
        for (auto [u, v] : incident) replacedW += g.edge(*g.findEdge(u, v)).w;
        if (replacedW != pickW) throw Error("internal: repair is not weight neutral");

        std::vector<VertexPair> next;
        for (auto e : m.edges)
            if (e != incident[0] && e != incident[1]) next.push_back(e);
        next.push_back(pick);
        m = Matching::of(std::move(next));
        ++iterations;
        if (repairLog) repairLog->push_back({pick, incident, replacedW - pickW});
    }

    if (2 * iterations > initialSize) throw Error("internal: repair loop exceeded its bound");
    assert(matchingWeight(g, m) == targetWeight);
    assert(isGreedy(g, m));

    SolveResult res;
    res.optWeight = targetWeight;
    res.witness = std::move(m);
    res.exploredStates = iterations;
    return res;
}

} // namespace gm
