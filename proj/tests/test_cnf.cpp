#include "doctest.h"

#include "gm/cnf.hpp"
#include "gm/generate.hpp"
#include "gm/rng.hpp"

using namespace gm;

TEST_CASE("dimacs parsing") {
    auto f = parseDimacs("p cnf 1 2\n1 0\n-1 0\n");
    CHECK(f.numVariables == 1);
    REQUIRE(f.numClauses() == 2);
    CHECK(f.clauses[0].literals == std::vector<int>{1});
    CHECK(f.clauses[1].literals == std::vector<int>{-1});

    auto g = parseDimacs("c comment\np cnf 2 1\n1 -2 0\n");
    CHECK(g.numVariables == 2);
    CHECK(g.clauses[0].literals == std::vector<int>{1, -2});

    CHECK_THROWS_AS(parseDimacs("p cnf 1 1\n0\n"), ParseError);        // empty clause
    CHECK_THROWS_AS(parseDimacs("1 0\n"), ParseError);                 // no header
    CHECK_THROWS_AS(parseDimacs("p cnf 1 1\n1\n"), ParseError);        // unterminated
    CHECK_THROWS_AS(parseDimacs("p cnf 1 2\n1 0\n"), ParseError);      // count mismatch
    CHECK_THROWS_AS(parseDimacs("p cnf 4 1\n1 2 3 4 0\n"), ParseError); // too long
    CHECK_THROWS_AS(parseDimacs("p cnf 2 1\n1 -1 0\n"), ParseError);   // tautology
    CHECK_THROWS_AS(parseDimacs("p cnf 1 1\n2 0\n"), ParseError);      // range

    CHECK(parseDimacs(writeDimacs(f)).clauses[1].literals == f.clauses[1].literals);
}

TEST_CASE("normalize flips a doubled-positive variable") {
    // x1 twice positive, once negative: rename to reach (1 pos, 2 neg).
    auto f = parseDimacs("p cnf 2 3\n1 2 0\n1 -2 0\n-1 2 0\n");
    auto nf = normalize(f);
    CHECK(nf.formula.numVariables == 2);
    auto counts = nf.formula.occurrenceCounts();
    for (int v = 1; v <= 2; ++v) {
        auto [pos, neg] = counts[static_cast<std::size_t>(v)];
        CHECK(pos == 1);
        CHECK((neg == 1 || neg == 2));
    }
    CHECK(nf.sourceLiteral[1] == -1); // new x1 is the negation of old x1
    CHECK(nf.sourceLiteral[2] == -2); // x2 is doubled-positive here too
}

TEST_CASE("normalize eliminates pure variables with their clauses") {
    auto f = parseDimacs("p cnf 2 3\n1 2 0\n1 -2 0\n2 0\n");
    // x1 occurs only positively: fixed true, clauses 1 and 2 removed; x2
    // then occurs only positively in the survivor, fixed true as well.
    auto nf = normalize(f);
    CHECK(nf.formula.numVariables == 0);
    CHECK(nf.formula.numClauses() == 0);
    CHECK(nf.removedSatisfiedClauses == 3);
    REQUIRE(nf.fixedAssignments.size() == 2);
    CHECK(nf.fixedAssignments[0] == std::pair<int, bool>{1, true});
}

TEST_CASE("normalize is the identity on canonical formulas") {
    Rng rng(81);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = randomNormalizedFormula(rng, 1 + static_cast<int>(rng.below(3)), 5, 2);
        auto nf = normalize(f);
        CHECK(nf.formula.numVariables == f.numVariables);
        REQUIRE(nf.formula.numClauses() == f.numClauses());
        for (int j = 0; j < f.numClauses(); ++j)
            CHECK(nf.formula.clauses[static_cast<std::size_t>(j)].literals ==
                  f.clauses[static_cast<std::size_t>(j)].literals);
        CHECK(nf.removedSatisfiedClauses == 0);
    }
}

TEST_CASE("normalize rejects over-occurring variables") {
    auto f = parseDimacs("p cnf 1 4\n1 0\n-1 0\n1 0\n-1 0\n");
    CHECK_THROWS_AS(normalize(f), PreconditionError);
}

TEST_CASE("brute force maxsat fixtures") {
    CHECK(bruteForceMaxSat(parseDimacs("p cnf 1 2\n1 0\n-1 0\n")).best == 1);
    CHECK(bruteForceMaxSat(CnfFormula{0, {}}).best == 0);
    auto r = bruteForceMaxSat(parseDimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n"));
    CHECK(r.best == 2);
    CHECK(satisfiedClauses(parseDimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n"), r.assignment) == 2);

    CnfFormula big;
    big.numVariables = 25;
    CHECK_THROWS_AS(bruteForceMaxSat(big), PreconditionError);
}

TEST_CASE("translated assignments preserve satisfied counts") {
    Rng rng(82);
    for (int trial = 0; trial < 40; ++trial) {
        // Random (possibly non-canonical) formula with <= 3 occurrences.
        CnfFormula f;
        f.numVariables = 2 + static_cast<int>(rng.below(2));
        std::vector<int> pool;
        for (int v = 1; v <= f.numVariables; ++v) {
            int occ = 1 + static_cast<int>(rng.below(3));
            for (int i = 0; i < occ; ++i) pool.push_back(rng.coin() ? v : -v);
        }
        rng.shuffle(pool);
        for (std::size_t i = 0; i < pool.size();) {
            Clause c;
            c.literals.push_back(pool[i++]);
            if (i < pool.size() && std::abs(pool[i]) != std::abs(c.literals[0])) c.literals.push_back(pool[i++]);
            f.clauses.push_back(std::move(c));
        }
        auto nf = normalize(f);
        auto best = bruteForceMaxSat(nf.formula);
        auto lifted = translateAssignment(nf, best.assignment);
        CHECK(satisfiedClauses(f, lifted) == best.best + nf.removedSatisfiedClauses);
        // And the normalized optimum plus removed clauses equals the
        // original optimum.
        CHECK(bruteForceMaxSat(f).best == best.best + nf.removedSatisfiedClauses);
    }
}

TEST_CASE("a random assignment satisfies a 2-literal clause 3/4 of the time") {
    Rng rng(83);
    for (int trial = 0; trial < 15; ++trial) {
        auto f = randomNormalizedFormula(rng, 1 + static_cast<int>(rng.below(3)), 5, 2);
        long long twoLit = 0;
        for (const auto& c : f.clauses)
            if (c.literals.size() == 2) ++twoLit;
        if (twoLit != f.numClauses()) continue;
        long long total = 0;
        for (std::uint32_t mask = 0; mask < (1u << f.numVariables); ++mask) {
            std::vector<bool> tau(static_cast<std::size_t>(f.numVariables) + 1, false);
            for (int v = 1; v <= f.numVariables; ++v) tau[static_cast<std::size_t>(v)] = (mask >> (v - 1)) & 1;
            total += satisfiedClauses(f, tau);
        }
        // Sum over all assignments = m * (3/4) * 2^n, exactly.
        CHECK(total * 4 == 3 * f.numClauses() * (1LL << f.numVariables));
    }
}
