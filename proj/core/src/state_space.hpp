// Internal machinery shared by the greedy-matching enumeration, the exact
// solver and the decision procedures. A search state is the set of surviving
// edges, encoded as a bitset over the original edge indices; surviving means
// neither endpoint has been matched yet, so the state fully determines every
// possible continuation.
#ifndef GM_STATE_SPACE_HPP
#define GM_STATE_SPACE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "gm/graph.hpp"

namespace gm::detail {

struct EdgeSet {
    std::vector<std::uint64_t> words;

    static EdgeSet empty(int numEdges) {
        return EdgeSet{std::vector<std::uint64_t>(static_cast<std::size_t>((numEdges + 63) / 64), 0)};
    }
    static EdgeSet full(int numEdges) {
        EdgeSet s = empty(numEdges);
        for (int i = 0; i < numEdges; ++i) s.set(i);
        return s;
    }

    bool test(int i) const { return (words[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1; }
    void set(int i) { words[static_cast<std::size_t>(i) / 64] |= 1ULL << (i % 64); }
    void reset(int i) { words[static_cast<std::size_t>(i) / 64] &= ~(1ULL << (i % 64)); }

    bool any() const {
        for (auto w : words)
            if (w) return true;
        return false;
    }
    int count() const {
        int c = 0;
        for (auto w : words) c += std::popcount(w);
        return c;
    }
    template <typename Fn>
    void forEach(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words.size(); ++wi) {
            std::uint64_t w = words[wi];
            while (w) {
                int bit = std::countr_zero(w);
                fn(static_cast<int>(wi * 64) + bit);
                w &= w - 1;
            }
        }
    }
    std::vector<int> toVector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        forEach([&](int i) { out.push_back(i); });
        return out;
    }

    friend bool operator==(const EdgeSet& a, const EdgeSet& b) { return a.words == b.words; }

    struct Hash {
        std::size_t operator()(const EdgeSet& s) const {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (auto w : s.words) {
                h ^= w;
                h *= 0x100000001b3ULL;
                h ^= h >> 29;
            }
            return static_cast<std::size_t>(h);
        }
    };
};

class StateSpace {
public:
    explicit StateSpace(const WeightedGraph& g) : g_(g) {
        auto classes = weightClasses(g);
        classWeights_.reserve(classes.size());
        classOf_.assign(static_cast<std::size_t>(g.numEdges()), -1);
        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            classWeights_.push_back(classes[ci].weight);
            for (int ei : classes[ci].edgeIdx) classOf_[static_cast<std::size_t>(ei)] = static_cast<int>(ci);
        }
    }

    const WeightedGraph& graph() const { return g_; }
    int numClasses() const { return static_cast<int>(classWeights_.size()); }
    const Rational& classWeight(int ci) const { return classWeights_[static_cast<std::size_t>(ci)]; }
    int classOf(int edgeIdx) const { return classOf_[static_cast<std::size_t>(edgeIdx)]; }

    EdgeSet fullState() const { return EdgeSet::full(g_.numEdges()); }

    /// Heaviest class index present in s, or -1 when s is empty.
    int heaviestClass(const EdgeSet& s) const {
        int best = -1;
        s.forEach([&](int ei) {
            int c = classOf(ei);
            if (best == -1 || c < best) best = c;
        });
        return best;
    }

    std::vector<int> classEdgesIn(const EdgeSet& s, int ci) const {
        std::vector<int> out;
        s.forEach([&](int ei) {
            if (classOf(ei) == ci) out.push_back(ei);
        });
        return out;
    }

    /// Connected components of the subgraph spanned by s (lists of edge
    /// indices, each sorted).
    std::vector<std::vector<int>> components(const EdgeSet& s) const {
        return edgeComponents(g_, s.toVector());
    }

    std::vector<std::vector<int>> componentsOf(const std::vector<int>& edges) const {
        return edgeComponents(g_, edges);
    }

    /// s minus every edge sharing an endpoint with one of the given edges
    /// (the given edges themselves included).
    EdgeSet removeTouching(const EdgeSet& s, const std::vector<int>& picked) const {
        EdgeSet out = s;
        for (int pe : picked) {
            const Edge& e = g_.edge(pe);
            for (int v : {e.u, e.v})
                for (int ei : g_.incident(v))
                    if (out.test(ei)) out.reset(ei);
        }
        return out;
    }

    /// All maximal matchings of the given edge set (maximal relative to that
    /// set). Enumerates by include/exclude on the first edge, filtering for
    /// maximality at the leaves; fine for the small per-class components this
    /// is applied to.
    std::vector<std::vector<int>> maximalMatchingsOf(const std::vector<int>& edges) const {
        std::vector<std::vector<int>> out;
        std::vector<int> current;
        maximalRec(edges, 0, current, out);
        return out;
    }

    /// Admissible bound on the weight any greedy completion of s can add:
    /// per weight class, no matching can use more edges than the class
    /// component structure allows.
    Rational upperBound(const EdgeSet& s) const {
        std::vector<std::vector<int>> perClass(classWeights_.size());
        s.forEach([&](int ei) { perClass[static_cast<std::size_t>(classOf(ei))].push_back(ei); });
        Rational total = 0;
        for (std::size_t ci = 0; ci < perClass.size(); ++ci) {
            if (perClass[ci].empty()) continue;
            long long cap = 0;
            for (const auto& comp : edgeComponents(g_, perClass[ci])) {
                std::vector<int> verts;
                for (int ei : comp) {
                    verts.push_back(g_.edge(ei).u);
                    verts.push_back(g_.edge(ei).v);
                }
                std::sort(verts.begin(), verts.end());
                verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
                cap += std::min<long long>(static_cast<long long>(comp.size()),
                                           static_cast<long long>(verts.size() / 2));
            }
            total += classWeights_[ci] * Rational(cap);
        }
        return total;
    }

    /// Deterministic greedy completion of a state (lexicographic tie break),
    /// as edge indices. Used to extend partial matchings into witnesses.
    std::vector<int> greedyComplete(EdgeSet s) const {
        std::vector<int> picked;
        while (s.any()) {
            int ci = heaviestClass(s);
            auto classEdges = classEdgesIn(s, ci);
            while (!classEdges.empty()) {
                int e = classEdges.front();
                picked.push_back(e);
                s = removeTouching(s, {e});
                classEdges = classEdgesIn(s, ci);
            }
        }
        return picked;
    }

private:
    const WeightedGraph& g_;
    std::vector<Rational> classWeights_; // heaviest first
    std::vector<int> classOf_;

    void maximalRec(const std::vector<int>& edges, std::size_t pos, std::vector<int>& current,
                    std::vector<std::vector<int>>& out) const {
        if (pos == edges.size()) {
            for (int ei : edges) {
                bool blocked = false;
                const Edge& e = g_.edge(ei);
                for (int ci : current) {
                    const Edge& c = g_.edge(ci);
                    if (c.u == e.u || c.u == e.v || c.v == e.u || c.v == e.v) {
                        blocked = true;
                        break;
                    }
                }
                if (!blocked) return; // not maximal within the set
            }
            out.push_back(current);
            return;
        }
        const Edge& e = g_.edge(edges[pos]);
        bool conflicts = false;
        for (int ci : current) {
            const Edge& c = g_.edge(ci);
            if (c.u == e.u || c.u == e.v || c.v == e.u || c.v == e.v) {
                conflicts = true;
                break;
            }
        }
        if (!conflicts) {
            current.push_back(edges[pos]);
            maximalRec(edges, pos + 1, current, out);
            current.pop_back();
        }
        maximalRec(edges, pos + 1, current, out);
    }
};

/// Cartesian combinations over per-component choice lists, visited in a
/// stable order. fn receives the concatenated pick; returning false stops.
template <typename Fn>
void forEachCombination(const std::vector<std::vector<std::vector<int>>>& perComponent, Fn&& fn) {
    std::vector<std::size_t> idx(perComponent.size(), 0);
    for (;;) {
        std::vector<int> combined;
        for (std::size_t i = 0; i < perComponent.size(); ++i)
            combined.insert(combined.end(), perComponent[i][idx[i]].begin(),
                            perComponent[i][idx[i]].end());
        if (!fn(combined)) return;
        std::size_t k = 0;
        while (k < idx.size()) {
            if (++idx[k] < perComponent[k].size()) break;
            idx[k] = 0;
            ++k;
        }
        if (k == idx.size()) return;
    }
}

inline Matching matchingFromEdgeIndices(const WeightedGraph& g, const std::vector<int>& idx) {
    std::vector<VertexPair> pairs;
    pairs.reserve(idx.size());
    for (int ei : idx) pairs.push_back({g.edge(ei).u, g.edge(ei).v});
    return Matching::of(std::move(pairs));
}

} // namespace gm::detail

#endif
