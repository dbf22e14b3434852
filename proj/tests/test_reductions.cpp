#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "gm/enumerate.hpp"
#include "gm/exact.hpp"
#include "gm/generate.hpp"
#include "gm/greedy.hpp"
#include "gm/reductions.hpp"
#include "gm/rng.hpp"
#include "oracles.hpp"

using namespace gm;

namespace {

std::set<Rational> distinctWeights(const WeightedGraph& g) {
    std::set<Rational> ws;
    for (const Edge& e : g.edges()) ws.insert(e.w);
    return ws;
}

int maxDegree(const WeightedGraph& g) {
    int best = 0;
    for (int v = 0; v < g.numVertices(); ++v)
        best = std::max(best, static_cast<int>(g.incident(v).size()));
    return best;
}

} // namespace

TEST_CASE("main reduction of the two-unit-clause formula") {
    auto f = parseDimacs("p cnf 1 2\n1 0\n-1 0\n");
    auto r = buildMainReduction(normalize(f), 2);
    CHECK(r.graph.numVertices() == 12); // 10n + m
    CHECK(r.graph.numEdges() == 11);    // 9n + occurrences
    CHECK(distinctWeights(r.graph) == std::set<Rational>{Rational(1), Rational(3), Rational(4)});
    CHECK(lambda0(r.graph) == Rational(4, 3));
    CHECK(maxDegree(r.graph) <= 3);
    CHECK(solveExact(r.graph).optWeight == Rational(15)); // 14*1 + k*, k* = 1
}

TEST_CASE("vertex and edge counts for pure 2-literal formulas") {
    Rng rng(91);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = randomNormalizedFormula(rng, 1 + static_cast<int>(rng.below(3)), 5, 2);
        auto r = buildMainReduction(normalize(f), 2);
        int n = r.numVariables(), m = r.numClauses();
        CHECK(r.graph.numVertices() == 10 * n + m);
        bool allTwo = true;
        int occurrences = 0;
        for (const auto& c : r.formula.clauses) {
            occurrences += static_cast<int>(c.literals.size());
            allTwo &= c.literals.size() == 2;
        }
        CHECK(r.graph.numEdges() == 9 * n + occurrences);
        if (allTwo) CHECK(r.graph.numEdges() == 9 * n + 2 * m);
        CHECK(maxDegree(r.graph) <= 3);
        CHECK(distinctWeights(r.graph).size() == 3);
        CHECK(mu(r.graph) == 5);
    }
}

TEST_CASE("generalized weights keep the lambda0 formula") {
    auto f = parseDimacs("p cnf 1 2\n1 0\n-1 0\n");
    auto nf = normalize(f);
    auto r7 = buildMainReduction(nf, 7);
    CHECK(distinctWeights(r7.graph) == std::set<Rational>{Rational(1), Rational(8), Rational(14)});
    CHECK(lambda0(r7.graph) == Rational(7, 4)); // 2x/(x+1)
    auto r3 = buildMainReduction(nf, 3);
    CHECK(lambda0(r3.graph) == Rational(3, 2));
    CHECK_THROWS_AS(buildMainReduction(nf, 1), PreconditionError);
}

TEST_CASE("reduction identity: OPT equals (6x+2)n + k*") {
    Rng rng(92);
    for (int trial = 0; trial < 12; ++trial) {
        auto f = randomNormalizedFormula(rng, 1 + static_cast<int>(rng.below(3)), 5, 2);
        auto nf = normalize(f);
        int kStar = bruteForceMaxSat(f).best;
        for (int x : {2, 3}) {
            auto r = buildMainReduction(nf, x);
            auto opt = solveExact(r.graph).optWeight;
            CHECK(opt == Rational(6LL * x + 2) * Rational(r.numVariables()) +
                             Rational(kStar));
        }
    }
}

TEST_CASE("mu2 reduction identity and parameter") {
    auto gadget = gm::testing::variableGadgetMu2();
    CHECK(solveExact(gadget).optWeight == Rational(18));
    auto all = enumerateGreedyMatchings(gadget);
    REQUIRE(all.size() == 4);

    auto f = parseDimacs("p cnf 1 2\n1 0\n-1 0\n");
    auto r = buildMu2Reduction(normalize(f));
    CHECK(mu(r.graph) == 2);
    CHECK(solveExact(r.graph).optWeight == Rational(19)); // 18 + 1
    CHECK(distinctWeights(r.graph) ==
          std::set<Rational>{Rational(1), Rational(2), Rational(3), Rational(4), Rational(5)});

    Rng rng(93);
    for (int trial = 0; trial < 8; ++trial) {
        auto rf = randomNormalizedFormula(rng, 1 + static_cast<int>(rng.below(2)), 4, 2);
        auto rr = buildMu2Reduction(normalize(rf));
        CHECK(mu(rr.graph) == 2);
        CHECK(solveExact(rr.graph).optWeight ==
              Rational(18) * Rational(rr.numVariables()) + Rational(bruteForceMaxSat(rf).best));
    }
}

TEST_CASE("bipartite reduction is bipartite and keeps the identity") {
    auto f = parseDimacs("p cnf 1 1\n1 0\n"); // 1 occurrence, padded to 3
    auto r = buildBipartiteReduction(f);
    CHECK(isBipartite(r.graph).bipartite);
    CHECK(r.numVariables() == 3); // one variable expands into a 3-cycle
    CHECK(r.numClauses() == 6);   // 3 padded old + 3 cycle clauses
    auto kStar = bruteForceMaxSat(r.formula).best;
    CHECK(solveExact(r.graph).optWeight ==
          Rational(14) * Rational(r.numVariables()) + Rational(kStar));

    Rng rng(94);
    for (int trial = 0; trial < 6; ++trial) {
        CnfFormula rf;
        rf.numVariables = 2;
        int m = 1 + static_cast<int>(rng.below(2));
        for (int j = 0; j < m; ++j) {
            Clause c;
            c.literals.push_back(rng.coin() ? 1 : -1);
            c.literals.push_back(rng.coin() ? 2 : -2);
            rf.clauses.push_back(std::move(c));
        }
        auto rr = buildBipartiteReduction(rf);
        CHECK(isBipartite(rr.graph).bipartite);
        CHECK(maxDegree(rr.graph) <= 3);
        if (rr.graph.numEdges() <= 40) {
            auto opt = solveExact(rr.graph).optWeight;
            CHECK(opt == Rational(14) * Rational(rr.numVariables()) +
                             Rational(bruteForceMaxSat(rr.formula).best));
        }
    }
}

TEST_CASE("greedy-edge reduction: structure and the satisfiable direction") {
    // Satisfiable 3SAT(3) with one 3-literal clause: a satisfying assignment
    // matches every clause vertex, so (u, u*) must be matchable.
    auto sat = parseDimacs("p cnf 3 3\n1 2 3 0\n-1 -2 0\n-3 0\n");
    auto rs = buildGreedyEdgeReduction(normalize(sat));
    REQUIRE(rs.designatedEdge.has_value());
    CHECK(distinctWeights(rs.graph).size() == 5);
    CHECK(bruteForceMaxSat(rs.formula).best == rs.numClauses());
    auto ds = decideGreedyEdge(rs.graph, rs.designatedEdge->first, rs.designatedEdge->second);
    CHECK(ds.answer);
    CHECK(decideGreedyVertex(rs.graph, *rs.designatedVertex).answer);
}

TEST_CASE("greedy-edge decision agrees with the enumeration oracle") {
    // The decision procedure's contract is exact membership over all greedy
    // matchings. Note that a clause vertex can match beta at weight 1 while
    // (beta, p) stays dominated by the tie, so a gadget can serve two clause
    // vertices; unsatisfiable formulas therefore do not always make the
    // designated edge unmatchable.
    for (const char* text : {
             "p cnf 3 4\n1 0\n-1 2 0\n-2 3 0\n-2 -3 0\n", // unsat, k* = 3
             "p cnf 1 2\n1 0\n-1 0\n",                    // unsat, k* = 1
             "p cnf 2 2\n1 2 0\n-1 -2 0\n",               // sat
             "p cnf 1 3\n1 0\n-1 0\n-1 0\n",              // unsat, m > 2n
         }) {
        auto r = buildGreedyEdgeReduction(normalize(parseDimacs(text)));
        auto [u, us] = *r.designatedEdge;
        bool member = false;
        for (const auto& m : enumerateGreedyMatchings(r.graph, 5'000'000))
            member |= m.contains(u, us);
        CHECK(decideGreedyEdge(r.graph, u, us).answer == member);
        CHECK(decideGreedyVertex(r.graph, *r.designatedVertex).answer == member);
    }

    // A gadget can host at most two clause-vertex matches (alpha and gamma
    // never both, by the heavier tie at (alpha, gamma)), so with more than
    // 2n clauses the designated edge is out regardless of weights.
    auto crowded = buildGreedyEdgeReduction(normalize(parseDimacs("p cnf 1 3\n1 0\n-1 0\n-1 0\n")));
    CHECK(!decideGreedyEdge(crowded.graph, crowded.designatedEdge->first,
                            crowded.designatedEdge->second)
               .answer);
}

TEST_CASE("integer-scaled greedy-edge twin has identical greedy edge sets") {
    auto f = parseDimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n");
    auto nf = normalize(f);
    auto rational = buildGreedyEdgeReduction(nf, false);
    auto scaled = buildGreedyEdgeReduction(nf, true);
    CHECK(distinctWeights(scaled.graph) ==
          std::set<Rational>{Rational(1), Rational(2), Rational(4), Rational(12), Rational(16)});
    auto a = enumerateGreedyMatchings(rational.graph, 1u << 20);
    auto b = enumerateGreedyMatchings(scaled.graph, 1u << 20);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].edges == b[i].edges);
}

TEST_CASE("assignment to matching meets its weight guarantee") {
    auto f = parseDimacs("p cnf 1 2\n1 0\n-1 0\n");
    auto r = buildMainReduction(normalize(f), 2);
    std::vector<bool> tauTrue{false, true};
    auto m = assignmentToMatching(r, tauTrue);
    CHECK(isGreedy(r.graph, m));
    CHECK(matchingWeight(r.graph, m) >= Rational(15));

    std::vector<bool> tauFalse{false, false};
    auto m2 = assignmentToMatching(r, tauFalse);
    CHECK(matchingWeight(r.graph, m2) >= Rational(15)); // the negative clause is satisfied

    auto mu2 = buildMu2Reduction(normalize(f));
    CHECK(matchingWeight(mu2.graph, assignmentToMatching(mu2, tauTrue)) >= Rational(19));

    CHECK_THROWS_AS(assignmentToMatching(buildGreedyEdgeReduction(normalize(f)), tauTrue),
                    PreconditionError);
}

TEST_CASE("certificate round trip on random instances") {
    Rng rng(95);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = randomNormalizedFormula(rng, 1 + static_cast<int>(rng.below(3)), 5, 2);
        auto nf = normalize(f);
        for (int variantPick = 0; variantPick < 2; ++variantPick) {
            auto r = variantPick == 0 ? buildMainReduction(nf, 2) : buildMu2Reduction(nf);
            int n = r.numVariables();
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                std::vector<bool> tau(static_cast<std::size_t>(n) + 1, false);
                for (int v = 1; v <= n; ++v) tau[static_cast<std::size_t>(v)] = (mask >> (v - 1)) & 1;
                auto m = assignmentToMatching(r, tau);
                auto back = matchingToAssignment(r, m);
                CHECK(satisfiedClauses(r.formula, back) >= satisfiedClauses(r.formula, tau));
            }
        }
    }
}

TEST_CASE("a maximum greedy matching certifies the maxsat optimum") {
    Rng rng(96);
    for (int trial = 0; trial < 8; ++trial) {
        auto f = randomNormalizedFormula(rng, 1 + static_cast<int>(rng.below(2)), 4, 2);
        auto r = buildMainReduction(normalize(f), 2);
        auto res = solveExact(r.graph);
        auto tau = matchingToAssignment(r, res.witness);
        int kStar = bruteForceMaxSat(r.formula).best;
        CHECK(satisfiedClauses(r.formula, tau) == kStar);
        CHECK(res.optWeight == Rational(14) * Rational(r.numVariables()) + Rational(kStar));
    }
}

TEST_CASE("an all-blocked matching extracts an arbitrary assignment with a zero guarantee") {
    auto f = parseDimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n");
    auto r = buildMainReduction(normalize(f), 2);
    // Put every gadget in the blocked form: beta-p, q-r, alpha-gamma, y-z,
    // s-t; clause vertices stay unmatched and every edge is dominated.
    std::vector<VertexPair> edges;
    for (const auto& gi : r.gadgets) {
        edges.push_back(orderedPair(gi.beta(), gi.p()));
        edges.push_back(orderedPair(gi.q(), gi.r()));
        edges.push_back(orderedPair(gi.alpha(), gi.gamma()));
        edges.push_back(orderedPair(gi.y(), gi.z()));
        edges.push_back(orderedPair(gi.s(), gi.t()));
    }
    Matching m = Matching::of(std::move(edges));
    REQUIRE(isGreedy(r.graph, m));
    CHECK(matchingWeight(r.graph, m) == Rational(14) * Rational(r.numVariables()));
    auto tau = matchingToAssignment(r, m); // any assignment is a valid witness here
    CHECK(satisfiedClauses(r.formula, tau) >= 0);
}

TEST_CASE("bipartite certificate round trip") {
    auto f = parseDimacs("p cnf 1 1\n1 0\n");
    auto r = buildBipartiteReduction(f);
    int n = r.numVariables();
    REQUIRE(n == 3);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<bool> tau(static_cast<std::size_t>(n) + 1, false);
        for (int v = 1; v <= n; ++v) tau[static_cast<std::size_t>(v)] = (mask >> (v - 1)) & 1;
        auto m = assignmentToMatching(r, tau);
        CHECK(isGreedy(r.graph, m));
        auto back = matchingToAssignment(r, m);
        CHECK(satisfiedClauses(r.formula, back) >= satisfiedClauses(r.formula, tau));
    }
}

TEST_CASE("alpha and gamma are never both matched to clause vertices") {
    Rng rng(97);
    for (int trial = 0; trial < 6; ++trial) {
        auto f = randomNormalizedFormula(rng, 1 + static_cast<int>(rng.below(2)), 4, 2);
        auto r = buildMainReduction(normalize(f), 2);
        for (const auto& m : enumerateGreedyMatchings(r.graph, 1u << 20)) {
            for (const auto& gi : r.gadgets) {
                auto partnerIsClause = [&](int v) {
                    for (auto [a, b] : m.edges) {
                        int other = a == v ? b : (b == v ? a : -1);
                        if (other >= 10 * r.numVariables()) return true;
                    }
                    return false;
                };
                CHECK(!(partnerIsClause(gi.alpha()) && partnerIsClause(gi.gamma())));
            }
        }
    }
}

TEST_CASE("reduction bundles round trip and self-verify") {
    auto f = parseDimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n");
    ReductionRequest req{ReductionVariant::GreedyEdge, 2, true};
    auto r = buildReduction(f, req);
    auto dir = std::filesystem::temp_directory_path() / "gm_bundle_test";
    std::filesystem::remove_all(dir);
    writeReductionBundle(dir.string(), r, f, req);
    auto [back, reqBack] = readReductionBundle(dir.string());
    CHECK(reqBack.variant == req.variant);
    CHECK(reqBack.integerWeights);
    CHECK(back.designatedEdge == r.designatedEdge);
    CHECK(back.graph.numEdges() == r.graph.numEdges());

    // Tampering with the stored graph must be caught.
    {
        std::ofstream out(dir / "graph.txt", std::ios::app);
        out << "label 0 tampered\n";
    }
    CHECK_THROWS_AS(readReductionBundle(dir.string()), ValidationError);
    std::filesystem::remove_all(dir);
}
