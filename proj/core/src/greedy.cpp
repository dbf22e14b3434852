#include "gm/greedy.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "gm/errors.hpp"

namespace gm {

TieBreaker TieBreaker::priorityList(std::vector<VertexPair> edges) {
    TieBreaker tb;
    tb.kind = Kind::PriorityList;
    for (auto& p : edges)
        if (p.first > p.second) std::swap(p.first, p.second);
    tb.priority = std::move(edges);
    return tb;
}

TieBreaker TieBreaker::callback(
    std::function<std::size_t(const WeightedGraph&, const std::vector<int>&)> fn) {
    TieBreaker tb;
    tb.kind = Kind::Callback;
    tb.choose = std::move(fn);
    return tb;
}

GreedyRun runGreedy(const WeightedGraph& g, const TieBreaker& tb, std::uint64_t seed) {
    Rng rng(seed);
    std::map<VertexPair, std::size_t> priorityRank;
    if (tb.kind == TieBreaker::Kind::PriorityList)
        for (std::size_t i = 0; i < tb.priority.size(); ++i)
            priorityRank.emplace(tb.priority[i], i);

    auto classes = weightClasses(g);
    std::vector<char> matched(static_cast<std::size_t>(g.numVertices()), 0);
    GreedyRun run;
    std::vector<int> candidates;
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        for (;;) {
            candidates.clear();
            for (int ei : classes[ci].edgeIdx) {
                const Edge& e = g.edge(ei);
                if (!matched[static_cast<std::size_t>(e.u)] && !matched[static_cast<std::size_t>(e.v)])
                    candidates.push_back(ei);
            }
            if (candidates.empty()) break;
            std::size_t pick = 0;
            switch (tb.kind) {
            case TieBreaker::Kind::SeededRandom:
                pick = rng.index(candidates.size());
                break;
            case TieBreaker::Kind::LexMinEdge:
                pick = 0; // candidates come in (u, v) order within a class
                break;
            case TieBreaker::Kind::PriorityList: {
                auto rank = [&](int ei) {
                    auto it = priorityRank.find({g.edge(ei).u, g.edge(ei).v});
                    return it == priorityRank.end() ? priorityRank.size() : it->second;
                };
                for (std::size_t i = 1; i < candidates.size(); ++i)
                    if (rank(candidates[i]) < rank(candidates[pick])) pick = i;
                break;
            }
            case TieBreaker::Kind::Callback:
                pick = tb.choose(g, candidates);
                if (pick >= candidates.size()) throw PreconditionError("tie-break callback out of range");
                break;
            }
            const Edge& e = g.edge(candidates[pick]);
            matched[static_cast<std::size_t>(e.u)] = matched[static_cast<std::size_t>(e.v)] = 1;
            run.matching.edges.push_back({e.u, e.v});
            run.trace.push_back({{e.u, e.v}, static_cast<int>(ci), static_cast<int>(candidates.size())});
        }
    }
    std::sort(run.matching.edges.begin(), run.matching.edges.end());
    assert(isGreedy(g, run.matching));
    return run;
}

bool isGreedy(const WeightedGraph& g, const Matching& m) {
    validateMatching(g, m);
    if (!isMaximalMatching(g, m)) return false;

    std::vector<char> alive(static_cast<std::size_t>(g.numEdges()), 1);
    std::vector<char> gone(static_cast<std::size_t>(g.numVertices()), 0);
    std::vector<VertexPair> remaining = m.edges;
    int aliveCount = g.numEdges();
    while (aliveCount > 0) {
        if (remaining.empty()) return false;
        const Rational* heaviest = nullptr;
        for (int i = 0; i < g.numEdges(); ++i)
            if (alive[static_cast<std::size_t>(i)] && (!heaviest || g.edge(i).w > *heaviest))
                heaviest = &g.edge(i).w;
        Rational matchedMax = 0;
        for (auto [u, v] : remaining) {
            const Rational& w = g.edge(*g.findEdge(u, v)).w;
            if (w > matchedMax) matchedMax = w;
        }
        if (matchedMax != *heaviest) return false;
        std::vector<VertexPair> keep;
        for (auto [u, v] : remaining) {
            if (g.edge(*g.findEdge(u, v)).w == matchedMax) {
                gone[static_cast<std::size_t>(u)] = gone[static_cast<std::size_t>(v)] = 1;
            } else {
                keep.push_back({u, v});
            }
        }
        remaining = std::move(keep);
        for (int i = 0; i < g.numEdges(); ++i) {
            if (!alive[static_cast<std::size_t>(i)]) continue;
            if (gone[static_cast<std::size_t>(g.edge(i).u)] || gone[static_cast<std::size_t>(g.edge(i).v)]) {
                alive[static_cast<std::size_t>(i)] = 0;
                --aliveCount;
            }
        }
    }
    return remaining.empty();
}

} // namespace gm
