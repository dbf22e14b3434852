#include "gm/mrg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_map>

#include "gm/blossom.hpp"
#include "gm/bush.hpp"
#include "gm/errors.hpp"
#include "gm/rng.hpp"

namespace gm {

namespace {

void requireUnitWeights(const WeightedGraph& g) {
    if (!g.allUnitWeights()) throw PreconditionError("mrg needs a unit-weight graph");
}

} // namespace

Matching mrg(const WeightedGraph& g, std::uint64_t seed) {
    requireUnitWeights(g);
    Rng rng(seed);
    std::vector<char> matched(static_cast<std::size_t>(g.numVertices()), 0);
    std::vector<VertexPair> picked;
    for (;;) {
        std::vector<int> eligible;
        for (int v = 0; v < g.numVertices(); ++v) {
            if (matched[static_cast<std::size_t>(v)]) continue;
            for (int ei : g.incident(v)) {
                const Edge& e = g.edge(ei);
                int other = e.u == v ? e.v : e.u;
                if (!matched[static_cast<std::size_t>(other)]) {
                    eligible.push_back(v);
                    break;
                }
            }
        }
        if (eligible.empty()) break;
        int v = eligible[rng.index(eligible.size())];
        std::vector<int> neighbors;
        for (int ei : g.incident(v)) {
            const Edge& e = g.edge(ei);
            int other = e.u == v ? e.v : e.u;
            if (!matched[static_cast<std::size_t>(other)]) neighbors.push_back(other);
        }
        int u = neighbors[rng.index(neighbors.size())];
        matched[static_cast<std::size_t>(v)] = matched[static_cast<std::size_t>(u)] = 1;
        picked.push_back(orderedPair(v, u));
    }
    Matching m = Matching::of(std::move(picked));
    assert(isMaximalMatching(g, m));
    return m;
}

namespace {

class MrgExpectation {
public:
    MrgExpectation(const WeightedGraph& g, std::uint64_t budget) : g_(g), budget_(budget) {}

    Rational run() {
        std::vector<char> matched(static_cast<std::size_t>(g_.numVertices()), 0);
        return eval(matched);
    }

private:
    const WeightedGraph& g_;
    std::uint64_t budget_;
    std::uint64_t states_ = 0;
    std::unordered_map<std::string, Rational> memo_;

    std::string key(const std::vector<char>& matched) const {
        // Canonical form: the sorted surviving edge list, byte-encoded.
        std::string k;
        for (int i = 0; i < g_.numEdges(); ++i) {
            const Edge& e = g_.edge(i);
            if (!matched[static_cast<std::size_t>(e.u)] && !matched[static_cast<std::size_t>(e.v)]) {
                k += static_cast<char>(e.u & 0xff);
                k += static_cast<char>((e.u >> 8) & 0xff);
                k += static_cast<char>(e.v & 0xff);
                k += static_cast<char>((e.v >> 8) & 0xff);
            }
        }
        return k;
    }

    Rational eval(std::vector<char>& matched) {
        std::vector<int> eligible;
        for (int v = 0; v < g_.numVertices(); ++v) {
            if (matched[static_cast<std::size_t>(v)]) continue;
            for (int ei : g_.incident(v)) {
                const Edge& e = g_.edge(ei);
                int other = e.u == v ? e.v : e.u;
                if (!matched[static_cast<std::size_t>(other)]) {
                    eligible.push_back(v);
                    break;
                }
            }
        }
        if (eligible.empty()) return 0;
        std::string k = key(matched);
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
        if (++states_ > budget_)
            throw BudgetExceededError("mrg expectation exceeded state budget", states_);

        Rational total = 0;
        for (int v : eligible) {
            std::vector<int> neighbors;
            for (int ei : g_.incident(v)) {
                const Edge& e = g_.edge(ei);
                int other = e.u == v ? e.v : e.u;
                if (!matched[static_cast<std::size_t>(other)]) neighbors.push_back(other);
            }
            Rational perVertex = 0;
            for (int u : neighbors) {
                matched[static_cast<std::size_t>(v)] = matched[static_cast<std::size_t>(u)] = 1;
                perVertex += Rational(1) + eval(matched);
                matched[static_cast<std::size_t>(v)] = matched[static_cast<std::size_t>(u)] = 0;
            }
            total += perVertex / Rational(static_cast<long long>(neighbors.size()));
        }
        Rational result = total / Rational(static_cast<long long>(eligible.size()));
        memo_.emplace(std::move(k), result);
        return result;
    }
};

} // namespace

Rational mrgExpectedCardinalityExact(const WeightedGraph& g, std::uint64_t budget) {
    requireUnitWeights(g);
    MrgExpectation ex(g, budget);
    return ex.run();
}

CompareReport compareRgmaMrg(const WeightedGraph& g, std::uint64_t trials, std::uint64_t seed) {
    requireUnitWeights(g);
    CompareReport report;
    report.trials = trials;
    report.optCardinality = static_cast<int>(maxCardinalityMatching(g).size());
    if (trials == 0 || report.optCardinality == 0) return report;
    report.defined = true;

    Rational opt(static_cast<long long>(report.optCardinality));
    Rational mrgSum = 0, rgmaSum = 0;
    double mrgSq = 0.0, rgmaSq = 0.0;
    Rational mrgMin, rgmaMin;
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto mrgSize = static_cast<long long>(mrg(g, deriveSeed(seed, {0, t})).size());
        Rational mrgRatio = Rational(mrgSize) / opt;
        mrgSum += mrgRatio;
        mrgSq += mrgRatio.toDouble() * mrgRatio.toDouble();
        if (t == 0 || mrgRatio < mrgMin) mrgMin = mrgRatio;

        auto decomposition = bushDecompose(g, PickPolicy::random(), deriveSeed(seed, {1, t}));
        Matching rm = rgma(decomposition.bushGraph, deriveSeed(seed, {2, t}));
        Rational rgmaRatio = Rational(static_cast<long long>(rm.size())) / opt;
        rgmaSum += rgmaRatio;
        rgmaSq += rgmaRatio.toDouble() * rgmaRatio.toDouble();
        if (t == 0 || rgmaRatio < rgmaMin) rgmaMin = rgmaRatio;
    }
    auto n = Rational(static_cast<long long>(trials));
    report.mrgMeanRatio = mrgSum / n;
    report.rgmaMeanRatio = rgmaSum / n;
    report.mrgMinRatio = mrgMin;
    report.rgmaMinRatio = rgmaMin;
    auto se = [&](double sq, const Rational& mean) {
        if (trials < 2) return 0.0;
        double m = mean.toDouble();
        double var = (sq - static_cast<double>(trials) * m * m) / static_cast<double>(trials - 1);
        if (var < 0) var = 0;
        return std::sqrt(var / static_cast<double>(trials));
    };
    report.mrgStdError = se(mrgSq, report.mrgMeanRatio);
    report.rgmaStdError = se(rgmaSq, report.rgmaMeanRatio);
    return report;
}

} // namespace gm
