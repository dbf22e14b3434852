#include "doctest.h"

#include <set>

#include "gm/enumerate.hpp"
#include "gm/generate.hpp"
#include "gm/greedy.hpp"
#include "gm/rng.hpp"
#include "oracles.hpp"

using namespace gm;
using gm::testing::pathGraph;
using gm::testing::variableGadget;

TEST_CASE("runGreedy picks the forced heaviest edge") {
    auto path = pathGraph({Rational(2), Rational(3), Rational(2)});
    for (auto tb : {TieBreaker::random(), TieBreaker::lexicographic()}) {
        auto run = runGreedy(path, tb, 99);
        CHECK(run.matching.edges == std::vector<VertexPair>{{1, 2}});
        CHECK(matchingWeight(path, run.matching) == Rational(3));
    }
}

TEST_CASE("runGreedy on a star keeps exactly one edge") {
    WeightedGraph star(5, {{0, 1, Rational(2)}, {0, 2, Rational(2)}, {0, 3, Rational(2)}, {0, 4, Rational(2)}});
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        auto run = runGreedy(star, TieBreaker::random(), seed);
        CHECK(run.matching.size() == 1);
        CHECK(matchingWeight(star, run.matching) == Rational(2));
    }
}

TEST_CASE("a priority list steers the gadget to its heavy matching") {
    auto gadget = variableGadget();
    // Realize the picks (r, alpha) then (gamma, y).
    auto run = runGreedy(gadget, TieBreaker::priorityList({{3, 4}, {5, 6}}));
    CHECK(run.matching.edges == std::vector<VertexPair>{{1, 2}, {3, 4}, {5, 6}, {7, 8}});
    CHECK(matchingWeight(gadget, run.matching) == Rational(14));
}

TEST_CASE("identical seeds reproduce identical runs") {
    Rng rng(5);
    auto g = randomGnp(rng, 9, 50, {Rational(1), Rational(2), Rational(4)});
    auto a = runGreedy(g, TieBreaker::random(), 1234);
    auto b = runGreedy(g, TieBreaker::random(), 1234);
    CHECK(a.matching.edges == b.matching.edges);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].edge == b.trace[i].edge);
        CHECK(a.trace[i].candidateCount == b.trace[i].candidateCount);
    }
}

TEST_CASE("traces are weight-sorted matchings that replay") {
    Rng rng(6);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = randomGnp(rng, 8, 45, {Rational(1), Rational(2), Rational(3)});
        auto run = runGreedy(g, TieBreaker::random(), 1000 + static_cast<std::uint64_t>(trial));
        auto classes = weightClasses(g);
        for (std::size_t i = 0; i + 1 < run.trace.size(); ++i)
            CHECK(run.trace[i].weightClassIndex <= run.trace[i + 1].weightClassIndex);
        // Replay through the adversarial callback: force the same picks.
        std::size_t step = 0;
        auto replay = TieBreaker::callback([&](const WeightedGraph& graph, const std::vector<int>& cand) {
            auto want = run.trace[step++].edge;
            for (std::size_t k = 0; k < cand.size(); ++k) {
                const Edge& e = graph.edge(cand[k]);
                if (VertexPair{e.u, e.v} == want) return k;
            }
            REQUIRE(false);
            return std::size_t{0};
        });
        auto again = runGreedy(g, replay);
        CHECK(again.matching.edges == run.matching.edges);
        for (const auto& ts : run.trace) {
            CHECK(ts.candidateCount >= 1);
            CHECK(classes[static_cast<std::size_t>(ts.weightClassIndex)].weight ==
                  g.edge(*g.findEdge(ts.edge.first, ts.edge.second)).w);
        }
    }
}

TEST_CASE("isGreedy accepts the gadget matchings and rejects skips") {
    auto gadget = variableGadget();
    CHECK(isGreedy(gadget, Matching::of({{1, 2}, {3, 4}, {5, 6}, {7, 8}})));       // heavy form
    CHECK(isGreedy(gadget, Matching::of({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}}))); // all-blocked form

    auto path = pathGraph({Rational(2), Rational(3), Rational(2)});
    CHECK(isGreedy(path, Matching::of({{1, 2}})));
    CHECK(!isGreedy(path, Matching::of({{0, 1}, {2, 3}}))); // maximal but skips the 3-edge

    CHECK(!isGreedy(pathGraph({Rational(1)}), Matching{})); // not maximal
    CHECK_THROWS_AS(isGreedy(path, Matching::of({{0, 2}})), ValidationError);
}

TEST_CASE("isGreedy equals the domination characterization") {
    // Independent route: maximal and every non-matched edge is adjacent to a
    // matched edge of at least its weight.
    auto dominated = [](const WeightedGraph& g, const Matching& m) {
        if (!isMaximalMatching(g, m)) return false;
        for (const Edge& e : g.edges()) {
            if (m.contains(e.u, e.v)) continue;
            bool ok = false;
            for (auto [a, b] : m.edges) {
                if (a != e.u && a != e.v && b != e.u && b != e.v) continue;
                if (!(g.edge(*g.findEdge(a, b)).w < e.w)) ok = true;
            }
            if (!ok) return false;
        }
        return true;
    };
    Rng rng(7);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto g = randomGnp(rng, 7, 50, {Rational(1), Rational(2), Rational(4)});
        for (const auto& m : gm::testing::allMatchings(g)) {
            CHECK(isGreedy(g, m) == dominated(g, m));
            ++checked;
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("every greedy run passes the verifier and lands in the enumeration") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = randomGnp(rng, 7, 50, {Rational(1), Rational(3), Rational(4)});
        auto all = enumerateGreedyMatchings(g);
        auto member = [&](const Matching& m) {
            for (const auto& x : all)
                if (x.edges == m.edges) return true;
            return false;
        };
        for (std::uint64_t seed = 0; seed < 64; ++seed) {
            auto run = runGreedy(g, TieBreaker::random(), seed);
            CHECK(isGreedy(g, run.matching));
            CHECK(member(run.matching));
        }
    }

    // Deep seed sweep on one fixed graph: 10^4 seeds, every run a member.
    Rng deep(88);
    auto g = randomGnp(deep, 7, 55, {Rational(1), Rational(2), Rational(4)});
    std::set<std::vector<VertexPair>> allSets;
    for (const auto& m : enumerateGreedyMatchings(g)) allSets.insert(m.edges);
    int misses = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed)
        misses += allSets.count(runGreedy(g, TieBreaker::random(), seed).matching.edges) ? 0 : 1;
    CHECK(misses == 0);
}

TEST_CASE("greedy matchings are invariant under positive scaling") {
    Rng rng(9);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = randomGnp(rng, 7, 50, {Rational(1), Rational(2), Rational(4)});
        auto scaled = g.scaled(Rational(7, 3));
        auto a = enumerateGreedyMatchings(g);
        auto b = enumerateGreedyMatchings(scaled);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].edges == b[i].edges);
            CHECK(matchingWeight(scaled, b[i]) == matchingWeight(g, a[i]) * Rational(7, 3));
        }
    }
}
