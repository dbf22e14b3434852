#include "gm/generate.hpp"

#include <algorithm>
#include <set>

#include "gm/errors.hpp"

namespace gm {

WeightedGraph randomBushGraph(Rng& rng, int bushes, int maxBushEdges, BushWeightScheme scheme) {
    if (bushes < 1 || maxBushEdges < 1) throw PreconditionError("bush generator needs positive sizes");
    auto weightOf = [&](int i) -> Rational {
        switch (scheme) {
        case BushWeightScheme::Linear: return Rational(bushes - i);
        case BushWeightScheme::Harmonic: return Rational(1, i + 1);
        case BushWeightScheme::Geometric: return Rational(1, 1LL << i);
        }
        return Rational(1);
    };
    int nextVertex = 0;
    std::set<VertexPair> taken;
    std::vector<Edge> edges;
    for (int i = 0; i < bushes; ++i) {
        int center;
        if (nextVertex == 0 || rng.coin()) {
            center = nextVertex++;
        } else {
            center = static_cast<int>(rng.below(static_cast<std::uint64_t>(nextVertex)));
        }
        int want = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(maxBushEdges)));
        int placed = 0;
        for (int attempt = 0; attempt < 4 * want && placed < want; ++attempt) {
            int leaf;
            if (nextVertex <= 1 || rng.coin()) {
                leaf = nextVertex++;
            } else {
                leaf = static_cast<int>(rng.below(static_cast<std::uint64_t>(nextVertex)));
            }
            if (leaf == center) continue;
            VertexPair key = orderedPair(center, leaf);
            if (taken.count(key)) continue;
            taken.insert(key);
            edges.push_back({key.first, key.second, weightOf(i)});
            ++placed;
        }
        if (placed == 0) {
            // Always give the bush one fresh edge so weights stay dense.
            int leaf = nextVertex++;
            if (leaf == center) leaf = nextVertex++;
            VertexPair key = orderedPair(center, leaf);
            taken.insert(key);
            edges.push_back({key.first, key.second, weightOf(i)});
        }
    }
    return {nextVertex, std::move(edges)};
}

WeightedGraph randomGnp(Rng& rng, int n, int probPercent, const std::vector<Rational>& weightPool) {
    if (weightPool.empty()) throw PreconditionError("gnp generator needs a weight pool");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.below(100) < static_cast<std::uint64_t>(probPercent))
                edges.push_back({u, v, weightPool[rng.index(weightPool.size())]});
    return {n, std::move(edges)};
}

WeightedGraph randomConnectedUnitGraph(Rng& rng, int n, int extraProbPercent) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(order);
    std::set<VertexPair> taken;
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) {
        int parent = order[rng.index(static_cast<std::size_t>(i))];
        VertexPair key = orderedPair(order[static_cast<std::size_t>(i)], parent);
        taken.insert(key);
        edges.push_back({key.first, key.second, Rational(1)});
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (taken.count({u, v})) continue;
            if (rng.below(100) < static_cast<std::uint64_t>(extraProbPercent))
                edges.push_back({u, v, Rational(1)});
        }
    return {n, std::move(edges)};
}

WeightedGraph randomPowerOfTwoGraph(Rng& rng, int n, int probPercent, int maxExponent) {
    std::vector<Rational> pool;
    for (int e = 0; e <= maxExponent; ++e) pool.push_back(Rational(1LL << e));
    return randomGnp(rng, n, probPercent, pool);
}

CnfFormula randomNormalizedFormula(Rng& rng, int numVariables, int maxClauses, int maxClauseSize) {
    if (numVariables < 1) throw PreconditionError("need at least one variable");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> pool;
        for (int v = 1; v <= numVariables; ++v) {
            pool.push_back(v);
            pool.push_back(-v);
            if (rng.coin()) pool.push_back(-v); // three occurrences: once positive, twice negative
        }
        rng.shuffle(pool);
        CnfFormula f;
        f.numVariables = numVariables;
        bool ok = true;
        while (!pool.empty()) {
            int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(maxClauseSize)));
            Clause clause;
            std::set<int> usedVars;
            for (int s = 0; s < size && !pool.empty(); ++s) {
                std::size_t found = pool.size();
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (!usedVars.count(std::abs(pool[i]))) {
                        found = i;
                        break;
                    }
                if (found == pool.size()) break;
                usedVars.insert(std::abs(pool[found]));
                clause.literals.push_back(pool[found]);
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(found));
            }
            if (clause.literals.empty()) {
                ok = false; // leftovers all share variables with each other
                break;
            }
            f.clauses.push_back(std::move(clause));
        }
        if (!ok || f.numClauses() > maxClauses) continue;
        f.validate(maxClauseSize);
        return f;
    }
    throw Error("normalized formula generator failed to satisfy the size limits");
}

} // namespace gm
