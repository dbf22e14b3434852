#include "doctest.h"

#include "gm/generate.hpp"
#include "gm/graph.hpp"
#include "gm/graph_io.hpp"
#include "gm/rng.hpp"
#include "oracles.hpp"

using namespace gm;
using gm::testing::pathGraph;
using gm::testing::variableGadget;

TEST_CASE("graph construction validates its invariants") {
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 0, Rational(1)}}), ValidationError); // self loop
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, Rational(1)}, {1, 0, Rational(2)}}),
                    ValidationError); // parallel
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, Rational(1)}}), ValidationError); // range
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, Rational(0)}}), ValidationError); // weight
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, Rational(-1, 2)}}), ValidationError);
    WeightedGraph g(3, {{2, 0, Rational(1)}});
    CHECK(g.edge(0).u == 0); // endpoints normalized
    CHECK(g.edge(0).v == 2);
}

TEST_CASE("weight classes partition edges by strictly decreasing weight") {
    WeightedGraph gadget = variableGadget();
    auto classes = weightClasses(gadget);
    REQUIRE(classes.size() == 3);
    CHECK(classes[0].weight == Rational(4));
    CHECK(classes[0].edgeIdx.size() == 5);
    CHECK(classes[1].weight == Rational(3));
    CHECK(classes[1].edgeIdx.size() == 2);
    CHECK(classes[2].weight == Rational(1));
    CHECK(classes[2].edgeIdx.size() == 2);

    CHECK(weightClasses(WeightedGraph()).empty());

    auto path = pathGraph({Rational(2), Rational(3), Rational(2)});
    auto pc = weightClasses(path);
    REQUIRE(pc.size() == 2);
    CHECK(pc[0].weight == Rational(3));
    CHECK(pc[0].edgeIdx.size() == 1);
    CHECK(pc[1].edgeIdx.size() == 2);

    std::size_t total = 0;
    for (const auto& c : classes) total += c.edgeIdx.size();
    CHECK(total == static_cast<std::size_t>(gadget.numEdges()));
}

TEST_CASE("lambda0 is the minimum consecutive weight ratio") {
    WeightedGraph g(6, {{0, 1, Rational(1)}, {2, 3, Rational(3)}, {4, 5, Rational(4)}});
    CHECK(lambda0(g) == Rational(4, 3));

    WeightedGraph single(4, {{0, 1, Rational(5)}, {2, 3, Rational(5)}});
    CHECK(!lambda0(single).has_value());

    WeightedGraph two(4, {{0, 1, Rational(2)}, {2, 3, Rational(4)}});
    CHECK(lambda0(two) == Rational(2));
}

TEST_CASE("lambda0 and mu are scaling invariant") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = randomGnp(rng, 7, 50, {Rational(1), Rational(2), Rational(3), Rational(7, 2)});
        if (g.numEdges() == 0) continue;
        auto scaled = g.scaled(Rational(5, 3));
        CHECK(lambda0(g) == lambda0(scaled));
        CHECK(mu(g) == mu(scaled));
        CHECK(weightClasses(g).size() == weightClasses(scaled).size());
    }
}

TEST_CASE("mu is the largest class component edge count") {
    WeightedGraph single(2, {{0, 1, Rational(3)}});
    CHECK(mu(single) == 1);
    CHECK(mu(variableGadget()) == 5); // the five-edge heavy path
    CHECK(mu(gm::testing::variableGadgetMu2()) == 2);
    CHECK_THROWS_AS(mu(WeightedGraph(3, {})), PreconditionError);
}

TEST_CASE("matching weight sums exactly and validates membership") {
    WeightedGraph gadget = variableGadget();
    Matching mn = Matching::of({{1, 2}, {3, 4}, {5, 6}, {7, 8}});
    CHECK(matchingWeight(gadget, mn) == Rational(14));
    Matching mp = Matching::of({{0, 1}, {2, 3}, {5, 6}, {7, 8}});
    CHECK(matchingWeight(gadget, mp) == Rational(12));
    CHECK(matchingWeight(gadget, Matching{}) == Rational(0));
    CHECK_THROWS_AS(matchingWeight(gadget, Matching::of({{0, 9}})), ValidationError);
    CHECK_THROWS_AS(matchingWeight(gadget, Matching::of({{0, 1}, {1, 2}})), ValidationError);
}

TEST_CASE("maximality check") {
    auto path232 = pathGraph({Rational(2), Rational(3), Rational(2)});
    CHECK(isMaximalMatching(path232, Matching::of({{1, 2}})));
    CHECK(!isMaximalMatching(pathGraph({Rational(1)}), Matching{}));
    auto path4 = pathGraph({Rational(1), Rational(1), Rational(1)});
    CHECK(!isMaximalMatching(path4, Matching::of({{0, 1}})));
}

TEST_CASE("bipartite check returns a usable witness either way") {
    auto path = pathGraph({Rational(1), Rational(1), Rational(1)});
    auto res = isBipartite(path);
    CHECK(res.bipartite);
    for (const Edge& e : path.edges())
        CHECK(res.coloring[static_cast<std::size_t>(e.u)] != res.coloring[static_cast<std::size_t>(e.v)]);

    WeightedGraph triangle(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 2, Rational(1)}});
    auto tri = isBipartite(triangle);
    CHECK(!tri.bipartite);
    REQUIRE(tri.oddCycle.size() == 3);

    std::vector<Edge> cycle6;
    for (int i = 0; i < 6; ++i) cycle6.push_back({i, (i + 1) % 6, Rational(1)});
    CHECK(isBipartite(WeightedGraph(6, std::move(cycle6))).bipartite);

    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = randomGnp(rng, 8, 40, {Rational(1)});
        auto r = isBipartite(g);
        if (r.bipartite) {
            for (const Edge& e : g.edges())
                CHECK(r.coloring[static_cast<std::size_t>(e.u)] !=
                      r.coloring[static_cast<std::size_t>(e.v)]);
        } else {
            REQUIRE(r.oddCycle.size() % 2 == 1);
            for (std::size_t i = 0; i < r.oddCycle.size(); ++i)
                CHECK(g.hasEdge(r.oddCycle[i], r.oddCycle[(i + 1) % r.oddCycle.size()]));
        }
    }
}

TEST_CASE("graph file format round trips exactly") {
    WeightedGraph g(5, {{0, 1, Rational(3, 2)}, {1, 2, Rational(4)}, {0, 4, Rational(1, 3)}},
                    {{0, "alpha:1"}, {4, "clause:0"}});
    std::string text = writeGraph(g);
    WeightedGraph back = parseGraph(text);
    CHECK(back.numVertices() == 5);
    CHECK(back.edges().size() == g.edges().size());
    for (int i = 0; i < g.numEdges(); ++i) {
        CHECK(back.edge(i).u == g.edge(i).u);
        CHECK(back.edge(i).v == g.edge(i).v);
        CHECK(back.edge(i).w == g.edge(i).w);
    }
    CHECK(back.labels() == g.labels());
    CHECK(writeGraph(back) == text); // canonical text is a fixed point

    CHECK(parseGraph("graph 2\n0 1 7\n").edge(0).w == Rational(7)); // default denominator
    CHECK_THROWS_AS(parseGraph("0 1 2\n"), ParseError);             // missing header
    CHECK_THROWS_AS(parseGraph("graph 2\n0 1 0\n"), ParseError);    // zero weight
    CHECK_THROWS_AS(parseGraph("graph 2\n0 1\n"), ParseError);
}

TEST_CASE("matching file format") {
    Matching m = Matching::of({{3, 1}, {0, 2}});
    auto text = writeMatchingFile(m);
    CHECK(parseMatchingFile(text).edges == m.edges);
    CHECK(parseMatchingFile("2 0\n# comment\n1 3\n").edges == m.edges);
    CHECK_THROWS_AS(parseMatchingFile("1\n"), ParseError);
}

TEST_CASE("withoutVertices drops exactly the touched edges") {
    WeightedGraph gadget = variableGadget();
    std::vector<int> drop{4};
    auto g = gadget.withoutVertices(drop);
    CHECK(g.numEdges() == 7);
    CHECK(!g.hasEdge(3, 4));
    CHECK(!g.hasEdge(4, 5));
    CHECK(g.numVertices() == gadget.numVertices());
}
