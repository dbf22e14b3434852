#include "gm/bush.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "gm/greedy.hpp"
#include "gm/rng.hpp"

namespace gm {

BushGraph validateBush(const WeightedGraph& g) {
    BushGraph out;
    out.graph = g;
    for (const auto& cls : weightClasses(g)) {
        Bush bush;
        bush.weight = cls.weight;
        bush.edgeIdx = cls.edgeIdx;
        std::sort(bush.edgeIdx.begin(), bush.edgeIdx.end());
        if (cls.edgeIdx.size() == 1) {
            const Edge& e = g.edge(cls.edgeIdx.front());
            bush.center = e.u;
            bush.leaves = {e.v};
        } else {
            const Edge& a = g.edge(cls.edgeIdx[0]);
            const Edge& b = g.edge(cls.edgeIdx[1]);
            std::vector<int> candidates;
            for (int c : {a.u, a.v})
                if (c == b.u || c == b.v) candidates.push_back(c);
            if (candidates.empty())
                throw NotABushGraphError(
                    "weight class " + cls.weight.str() + " has two disjoint edges",
                    {{a.u, a.v}, {b.u, b.v}});
            int center = -1;
            for (int c : candidates) {
                bool common = true;
                for (int ei : cls.edgeIdx) {
                    const Edge& e = g.edge(ei);
                    if (e.u != c && e.v != c) {
                        common = false;
                        break;
                    }
                }
                if (common) {
                    center = c;
                    break;
                }
            }
            if (center < 0) {
                // Find a concrete violating pair/triple for the witness.
                for (int ei : cls.edgeIdx) {
                    const Edge& e = g.edge(ei);
                    if (e.u != candidates[0] && e.v != candidates[0])
                        throw NotABushGraphError(
                            "weight class " + cls.weight.str() + " has no common center",
                            {{a.u, a.v}, {b.u, b.v}, {e.u, e.v}});
                }
                throw NotABushGraphError("weight class " + cls.weight.str() + " has no common center",
                                         {{a.u, a.v}, {b.u, b.v}});
            }
            bush.center = center;
            for (int ei : cls.edgeIdx) {
                const Edge& e = g.edge(ei);
                bush.leaves.push_back(e.u == center ? e.v : e.u);
            }
            std::sort(bush.leaves.begin(), bush.leaves.end());
        }
        out.bushes.push_back(std::move(bush));
    }
    return out;
}

Matching rgma(const BushGraph& b, std::uint64_t seed) {
    Rng rng(seed);
    const WeightedGraph& g = b.graph;
    std::vector<char> matched(static_cast<std::size_t>(g.numVertices()), 0);
    std::vector<VertexPair> picked;
    for (const Bush& bush : b.bushes) {
        std::vector<int> surviving;
        for (int ei : bush.edgeIdx) {
            const Edge& e = g.edge(ei);
            if (!matched[static_cast<std::size_t>(e.u)] && !matched[static_cast<std::size_t>(e.v)])
                surviving.push_back(ei);
        }
        if (surviving.empty()) continue;
        const Edge& e = g.edge(surviving[rng.index(surviving.size())]);
        matched[static_cast<std::size_t>(e.u)] = matched[static_cast<std::size_t>(e.v)] = 1;
        picked.push_back({e.u, e.v});
    }
    Matching m = Matching::of(std::move(picked));
    assert(isGreedy(g, m));
    return m;
}

namespace {

// Exact expectation over the RGMA choice tree. A state is (bush index,
// matched-vertex set); only vertices that can still influence later bushes
// matter, so the matched set doubles as the memo key.
class RgmaExpectation {
public:
    RgmaExpectation(const BushGraph& b, std::uint64_t budget) : b_(b), budget_(budget) {}

    Rational run() { return eval(0, std::vector<char>(static_cast<std::size_t>(b_.graph.numVertices()), 0)); }

private:
    const BushGraph& b_;
    std::uint64_t budget_;
    std::uint64_t states_ = 0;
    std::unordered_map<std::string, Rational> memo_;

    static std::string key(std::size_t bushIdx, const std::vector<char>& matched) {
        std::string k(matched.begin(), matched.end());
        k += static_cast<char>(bushIdx & 0xff);
        k += static_cast<char>((bushIdx >> 8) & 0xff);
        return k;
    }

    // Signature of a leaf: its surviving edges in later bushes. Two leaves
    // with identical signatures lead to choice subtrees of equal expected
    // weight (swapping them is an automorphism of the residual graph), so
    // one representative is evaluated and weighted by the group size.
    std::vector<std::pair<int, int>> leafSignature(std::size_t bushIdx, int leaf,
                                                   const std::vector<char>& matched) const {
        std::vector<std::pair<int, int>> sig;
        for (std::size_t j = bushIdx + 1; j < b_.bushes.size(); ++j)
            for (int ei : b_.bushes[j].edgeIdx) {
                const Edge& e = b_.graph.edge(ei);
                if (e.u != leaf && e.v != leaf) continue;
                int other = e.u == leaf ? e.v : e.u;
                if (matched[static_cast<std::size_t>(other)]) continue;
                sig.push_back({static_cast<int>(j), other});
            }
        std::sort(sig.begin(), sig.end());
        return sig;
    }

    Rational eval(std::size_t bushIdx, const std::vector<char>& matched) {
        while (bushIdx < b_.bushes.size()) {
            bool anySurviving = false;
            const Bush& bush = b_.bushes[bushIdx];
            if (!matched[static_cast<std::size_t>(bush.center)])
                for (int leaf : bush.leaves)
                    if (!matched[static_cast<std::size_t>(leaf)]) {
                        anySurviving = true;
                        break;
                    }
            if (anySurviving) break;
            ++bushIdx;
        }
        if (bushIdx == b_.bushes.size()) return 0;

        std::string k = key(bushIdx, matched);
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
        if (++states_ > budget_)
            throw BudgetExceededError("rgma expectation exceeded state budget", states_);

        const Bush& bush = b_.bushes[bushIdx];
        std::vector<int> survivors;
        for (int leaf : bush.leaves)
            if (!matched[static_cast<std::size_t>(leaf)]) survivors.push_back(leaf);

        // Group surviving leaves by residual-future signature.
        std::vector<std::pair<std::vector<std::pair<int, int>>, std::vector<int>>> groups;
        for (int leaf : survivors) {
            auto sig = leafSignature(bushIdx, leaf, matched);
            bool placed = false;
            for (auto& [gsig, members] : groups)
                if (gsig == sig) {
                    members.push_back(leaf);
                    placed = true;
                    break;
                }
            if (!placed) groups.push_back({std::move(sig), {leaf}});
        }

        Rational total = 0;
        auto count = Rational(static_cast<long long>(survivors.size()));
        for (const auto& [sig, members] : groups) {
            std::vector<char> next = matched;
            next[static_cast<std::size_t>(bush.center)] = 1;
            next[static_cast<std::size_t>(members.front())] = 1;
            Rational sub = eval(bushIdx + 1, next);
            total += (bush.weight + sub) * Rational(static_cast<long long>(members.size()));
        }
        Rational result = total / count;
        memo_.emplace(std::move(k), result);
        return result;
    }
};

} // namespace

Rational rgmaExpectedWeightExact(const BushGraph& b, std::uint64_t budget) {
    RgmaExpectation ex(b, budget);
    return ex.run();
}

BushDecomposition bushDecompose(const WeightedGraph& g, const PickPolicy& policy, std::uint64_t seed) {
    Rng rng(seed);
    int n = g.numVertices();
    BushDecomposition out;
    // n^3 + 1 keeps epsilon strictly below 1/n^3, stored exactly.
    long long n3 = static_cast<long long>(n) * n * n;
    out.epsilon = n3 > 0 ? Rational(1, n3 + 1) : Rational(0);

    std::vector<char> edgeDone(static_cast<std::size_t>(g.numEdges()), 0);
    auto hasSurviving = [&](int v) {
        for (int ei : g.incident(v))
            if (!edgeDone[static_cast<std::size_t>(ei)]) return true;
        return false;
    };

    std::vector<Edge> weighted;
    int k = 0;
    std::size_t givenPos = 0;
    int remaining = g.numEdges();
    while (remaining > 0) {
        int u = -1;
        if (policy.kind == PickPolicy::Kind::Random) {
            std::vector<int> eligible;
            for (int v = 0; v < n; ++v)
                if (hasSurviving(v)) eligible.push_back(v);
            u = eligible[rng.index(eligible.size())];
        } else {
            while (givenPos < policy.order.size() && !hasSurviving(policy.order[givenPos])) ++givenPos;
            if (givenPos == policy.order.size())
                throw PreconditionError("pick order exhausted with edges remaining");
            u = policy.order[givenPos];
        }
        Rational w = Rational(1) - Rational(k) * out.epsilon;
        for (int ei : g.incident(u)) {
            if (edgeDone[static_cast<std::size_t>(ei)]) continue;
            edgeDone[static_cast<std::size_t>(ei)] = 1;
            --remaining;
            const Edge& e = g.edge(ei);
            weighted.push_back({e.u, e.v, w});
            out.rankOf[{e.u, e.v}] = k;
        }
        out.pickSequence.push_back(u);
        ++k;
    }
    WeightedGraph decomposed(n, std::move(weighted), g.labels());
    out.bushGraph = validateBush(decomposed);
    return out;
}

} // namespace gm
