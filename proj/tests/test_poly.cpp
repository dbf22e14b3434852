#include "doctest.h"

#include "gm/blossom.hpp"
#include "gm/exact.hpp"
#include "gm/generate.hpp"
#include "gm/greedy.hpp"
#include "gm/poly.hpp"
#include "gm/rng.hpp"
#include "oracles.hpp"

using namespace gm;
using gm::testing::pathGraph;

TEST_CASE("problematic edges on fixtures") {
    auto p242 = pathGraph({Rational(2), Rational(4), Rational(2)});
    CHECK(findProblematicEdges(p242, Matching::of({{0, 1}, {2, 3}})) ==
          std::vector<VertexPair>{{1, 2}});

    auto single = pathGraph({Rational(3)});
    CHECK(findProblematicEdges(single, Matching{}) == std::vector<VertexPair>{{0, 1}});

    Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = randomPowerOfTwoGraph(rng, 7, 50);
        auto m = runGreedy(g, TieBreaker::random(), static_cast<std::uint64_t>(trial)).matching;
        CHECK(findProblematicEdges(g, m).empty()); // greedy matchings have none
    }
}

TEST_CASE("solveLambda0Ge2 on fixtures") {
    auto p242 = pathGraph({Rational(2), Rational(4), Rational(2)});
    std::vector<RepairStep> log;
    auto res = solveLambda0Ge2(p242, &log);
    CHECK(res.optWeight == Rational(4));
    CHECK(isGreedy(p242, res.witness));
    for (const auto& step : log) CHECK(step.weightDelta == Rational(0));

    WeightedGraph twoEdges(4, {{0, 1, Rational(4)}, {2, 3, Rational(2)}});
    auto r2 = solveLambda0Ge2(twoEdges, nullptr);
    CHECK(r2.optWeight == Rational(6));
    CHECK(r2.exploredStates == 0); // already greedy, no repairs

    WeightedGraph star(3, {{0, 1, Rational(4)}, {0, 2, Rational(2)}});
    CHECK(solveLambda0Ge2(star).optWeight == Rational(4));
}

TEST_CASE("lambda0 below two is refused with the violating pair") {
    auto bad = pathGraph({Rational(3), Rational(4), Rational(3)});
    try {
        solveLambda0Ge2(bad);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        std::string msg = e.what();
        CHECK(msg.find("4/3") != std::string::npos);
        CHECK(msg.find("4 / 3") != std::string::npos);
    }
}

TEST_CASE("poly solver matches the exact solver and the max weight matching") {
    Rng rng(52);
    int ran = 0;
    for (int trial = 0; trial < 120; ++trial) {
        auto g = randomPowerOfTwoGraph(rng, 7, 55);
        if (g.numEdges() == 0 || g.numEdges() > 12) continue;
        auto l0 = lambda0(g);
        REQUIRE((!l0 || *l0 >= Rational(2)));
        std::vector<RepairStep> log;
        auto poly = solveLambda0Ge2(g, &log);
        auto exact = solveExact(g);
        Rational mw = matchingWeight(g, maxWeightMatching(g));
        CHECK(poly.optWeight == exact.optWeight);
        CHECK(poly.optWeight == mw);
        CHECK(isGreedy(g, poly.witness));
        for (const auto& step : log) {
            CHECK(step.weightDelta == Rational(0));
            CHECK(step.replacedEdges.size() == 2);
        }
        ++ran;
    }
    CHECK(ran > 60);
}

TEST_CASE("repair count stays within half the initial matching size") {
    Rng rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = randomPowerOfTwoGraph(rng, 8, 50);
        if (g.numEdges() == 0) continue;
        auto m0 = maxWeightMatching(g);
        std::vector<RepairStep> log;
        solveLambda0Ge2(g, &log);
        CHECK(2 * log.size() <= m0.size());
    }
}
