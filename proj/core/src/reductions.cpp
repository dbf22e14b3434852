#include "gm/reductions.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gm/errors.hpp"
#include "gm/graph_io.hpp"
#include "gm/greedy.hpp"

#include "json.hpp"

namespace gm {

namespace {

constexpr std::array<const char*, 10> kGadgetNames = {"beta", "p",     "q", "r", "alpha",
                                                      "gamma", "y",    "z", "s", "t"};

struct GadgetWeights {
    // Path weights beta-p, p-q, q-r, r-alpha, alpha-gamma, gamma-y, y-z,
    // z-s, s-t.
    std::array<Rational, 9> path;
    Rational alphaConn;
    Rational betaConn;
    Rational gammaConn;
};

GadgetWeights mainWeights(int x) {
    Rational two_x(2LL * x), xp1(static_cast<long long>(x) + 1);
    return {{Rational(1), xp1, two_x, two_x, two_x, two_x, two_x, xp1, Rational(1)},
            xp1,
            Rational(1),
            xp1};
}

GadgetWeights mu2Weights() {
    return {{Rational(2), Rational(4), Rational(5), Rational(5), Rational(4), Rational(5),
             Rational(5), Rational(4), Rational(2)},
            Rational(3),
            Rational(1),
            Rational(3)};
}

void requireCanonicalPattern(const CnfFormula& f) {
    auto counts = f.occurrenceCounts();
    for (int v = 1; v <= f.numVariables; ++v) {
        auto [pos, neg] = counts[static_cast<std::size_t>(v)];
        bool ok = (pos == 1 && (neg == 1 || neg == 2));
        if (!ok)
            throw PreconditionError("variable x" + std::to_string(v) +
                                    " violates the normalized pattern (found " +
                                    std::to_string(pos) + " positive, " + std::to_string(neg) +
                                    " negative)");
    }
}

/// Core construction: gadget path per variable, one vertex per clause, and
/// caller-supplied wiring of literal occurrences onto distinguished
/// vertices. attachFor(clause, position, literal) must return the gadget
/// vertex slot (4 = alpha, 0 = beta, 5 = gamma).
template <typename AttachFn>
ReductionOutput buildCore(const CnfFormula& f, const GadgetWeights& weights,
                          const Rational& baseWeight, AttachFn&& attachFor,
                          const std::vector<int>& alphaLiterals) {
    int n = f.numVariables;
    int m = f.numClauses();
    ReductionOutput out;
    out.formula = f;
    out.baseWeight = baseWeight;

    std::vector<Edge> edges;
    std::map<int, std::string> labels;
    out.gadgets.resize(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
        GadgetInfo& gi = out.gadgets[static_cast<std::size_t>(v - 1)];
        int base = 10 * (v - 1);
        for (int i = 0; i < 10; ++i) {
            gi.verts[static_cast<std::size_t>(i)] = base + i;
            std::string tag = kGadgetNames[static_cast<std::size_t>(i)];
            bool distinguished = i == 0 || i == 4 || i == 5;
            labels[base + i] = (distinguished ? tag : "internal:" + tag) + ":" + std::to_string(v);
        }
        gi.alphaLiteral = alphaLiterals[static_cast<std::size_t>(v)];
        for (int i = 0; i < 9; ++i)
            edges.push_back({gi.verts[static_cast<std::size_t>(i)], gi.verts[static_cast<std::size_t>(i + 1)],
                             weights.path[static_cast<std::size_t>(i)]});
    }
    out.attachments.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        int vj = 10 * n + j;
        labels[vj] = "clause:" + std::to_string(j);
        const Clause& clause = f.clauses[static_cast<std::size_t>(j)];
        for (std::size_t pos = 0; pos < clause.literals.size(); ++pos) {
            int lit = clause.literals[pos];
            int slot = attachFor(j, static_cast<int>(pos), lit);
            const GadgetInfo& gi = out.gadgets[static_cast<std::size_t>(std::abs(lit) - 1)];
            Rational w = slot == 4 ? weights.alphaConn : (slot == 0 ? weights.betaConn : weights.gammaConn);
            int target = gi.verts[static_cast<std::size_t>(slot)];
            edges.push_back({vj, target, w});
            out.attachments[static_cast<std::size_t>(j)].push_back(
                {j, static_cast<int>(pos), lit, target, w});
        }
    }
    out.graph = WeightedGraph(10 * n + m, std::move(edges), std::move(labels));
    return out;
}

/// Standard occurrence wiring: positive literal to alpha, first negative
/// occurrence (clause order, then position order) to beta, second to gamma.
std::vector<std::vector<int>> canonicalSlots(const CnfFormula& f) {
    std::vector<int> negSeen(static_cast<std::size_t>(f.numVariables) + 1, 0);
    std::vector<std::vector<int>> slots(f.clauses.size());
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        for (int lit : f.clauses[j].literals) {
            if (lit > 0) {
                slots[j].push_back(4);
            } else {
                int v = -lit;
                slots[j].push_back(negSeen[static_cast<std::size_t>(v)] == 0 ? 0 : 5);
                ++negSeen[static_cast<std::size_t>(v)];
            }
        }
    }
    return slots;
}

} // namespace

std::string variantName(ReductionVariant v) {
    switch (v) {
    case ReductionVariant::Main: return "main";
    case ReductionVariant::Bipartite: return "bipartite";
    case ReductionVariant::Mu2: return "mu2";
    case ReductionVariant::GreedyEdge: return "greedy-edge";
    }
    return "main";
}

ReductionVariant variantFromName(const std::string& name) {
    if (name == "main") return ReductionVariant::Main;
    if (name == "bipartite") return ReductionVariant::Bipartite;
    if (name == "mu2") return ReductionVariant::Mu2;
    if (name == "greedy-edge") return ReductionVariant::GreedyEdge;
    throw ParseError("unknown reduction variant '" + name + "'");
}

ReductionOutput buildMainReduction(const NormalizedFormula& f, int x) {
    if (x < 2) throw PreconditionError("main reduction needs x >= 2");
    f.formula.validate(2);
    requireCanonicalPattern(f.formula);
    auto slots = canonicalSlots(f.formula);
    std::vector<int> alphaLits(static_cast<std::size_t>(f.formula.numVariables) + 1);
    for (int v = 1; v <= f.formula.numVariables; ++v) alphaLits[static_cast<std::size_t>(v)] = v;
    ReductionOutput out = buildCore(
        f.formula, mainWeights(x), Rational(6LL * x + 2),
        [&](int j, int pos, int) { return slots[static_cast<std::size_t>(j)][static_cast<std::size_t>(pos)]; },
        alphaLits);
    out.variant = ReductionVariant::Main;
    out.x = x;
    out.sourceLiteral = f.sourceLiteral;
    out.fixedAssignments = f.fixedAssignments;
    out.originalVariables = f.originalVariables;
    return out;
}

ReductionOutput buildMu2Reduction(const NormalizedFormula& f) {
    f.formula.validate(2);
    requireCanonicalPattern(f.formula);
    auto slots = canonicalSlots(f.formula);
    std::vector<int> alphaLits(static_cast<std::size_t>(f.formula.numVariables) + 1);
    for (int v = 1; v <= f.formula.numVariables; ++v) alphaLits[static_cast<std::size_t>(v)] = v;
    ReductionOutput out = buildCore(
        f.formula, mu2Weights(), Rational(18),
        [&](int j, int pos, int) { return slots[static_cast<std::size_t>(j)][static_cast<std::size_t>(pos)]; },
        alphaLits);
    out.variant = ReductionVariant::Mu2;
    out.x = 2;
    out.sourceLiteral = f.sourceLiteral;
    out.fixedAssignments = f.fixedAssignments;
    out.originalVariables = f.originalVariables;
    return out;
}

ReductionOutput buildGreedyEdgeReduction(const NormalizedFormula& f, bool integerWeights) {
    f.formula.validate(3);
    requireCanonicalPattern(f.formula);
    auto slots = canonicalSlots(f.formula);
    std::vector<int> alphaLits(static_cast<std::size_t>(f.formula.numVariables) + 1);
    for (int v = 1; v <= f.formula.numVariables; ++v) alphaLits[static_cast<std::size_t>(v)] = v;
    ReductionOutput out = buildCore(
        f.formula, mainWeights(2), Rational(14),
        [&](int j, int pos, int) { return slots[static_cast<std::size_t>(j)][static_cast<std::size_t>(pos)]; },
        alphaLits);

    int n = out.numVariables();
    int m = out.numClauses();
    int u = 10 * n + m;
    int uStar = u + 1;
    std::vector<Edge> edges = out.graph.edges();
    for (int j = 0; j < m; ++j) edges.push_back({out.clauseVertex(j), u, Rational(1, 2)});
    edges.push_back({u, uStar, Rational(1, 4)});
    auto labels = out.graph.labels();
    labels[u] = "aux_u";
    labels[uStar] = "aux_ustar";
    out.graph = WeightedGraph(10 * n + m + 2, std::move(edges), std::move(labels));
    out.variant = ReductionVariant::GreedyEdge;
    out.x = 2;
    out.integerWeights = integerWeights;
    out.designatedEdge = orderedPair(u, uStar);
    out.designatedVertex = uStar;
    out.sourceLiteral = f.sourceLiteral;
    out.fixedAssignments = f.fixedAssignments;
    out.originalVariables = f.originalVariables;
    if (integerWeights) {
        out.graph = out.graph.scaled(Rational(4));
        out.baseWeight = out.baseWeight * Rational(4);
        for (auto& perClause : out.attachments)
            for (auto& att : perClause) att.weight = att.weight * Rational(4);
    }
    return out;
}

ReductionOutput buildBipartiteReduction(const CnfFormula& f) {
    f.validate(2);

    // Drop unused variables, then pad every remaining variable to at least
    // three occurrences by appending copies of clauses that mention it.
    CnfFormula padded;
    {
        auto counts = f.occurrenceCounts();
        std::vector<int> renumber(static_cast<std::size_t>(f.numVariables) + 1, 0);
        for (int v = 1; v <= f.numVariables; ++v) {
            auto [pos, neg] = counts[static_cast<std::size_t>(v)];
            if (pos + neg > 0) renumber[static_cast<std::size_t>(v)] = ++padded.numVariables;
        }
        for (const Clause& c : f.clauses) {
            Clause nc;
            for (int lit : c.literals) {
                int nv = renumber[static_cast<std::size_t>(std::abs(lit))];
                nc.literals.push_back(lit > 0 ? nv : -nv);
            }
            padded.clauses.push_back(std::move(nc));
        }
        for (;;) {
            auto occ = padded.occurrenceCounts();
            int deficient = 0;
            for (int v = 1; v <= padded.numVariables; ++v)
                if (occ[static_cast<std::size_t>(v)].first + occ[static_cast<std::size_t>(v)].second < 3) {
                    deficient = v;
                    break;
                }
            if (!deficient) break;
            bool appended = false;
            for (const Clause& c : padded.clauses) {
                for (int lit : c.literals)
                    if (std::abs(lit) == deficient) {
                        padded.clauses.push_back(c);
                        appended = true;
                        break;
                    }
                if (appended) break;
            }
            if (!appended) throw Error("internal: padding found no clause for a live variable");
        }
    }

    // Variable-cycle expansion: variable v with occurrences o_1..o_l becomes
    // fresh variables v_1..v_l (one per occurrence, keeping its polarity)
    // plus the cycle clauses (-v_1 or v_2), ..., (-v_l or v_1).
    CnfFormula expanded;
    int oldClauseCount = padded.numClauses();
    std::vector<std::vector<int>> occurrenceVar(padded.clauses.size()); // [clause][pos] -> new var
    std::vector<std::vector<int>> cycleVars(static_cast<std::size_t>(padded.numVariables) + 1);
    for (std::size_t j = 0; j < padded.clauses.size(); ++j) {
        occurrenceVar[j].resize(padded.clauses[j].literals.size());
        for (std::size_t pos = 0; pos < padded.clauses[j].literals.size(); ++pos) {
            int v = std::abs(padded.clauses[j].literals[pos]);
            int nv = ++expanded.numVariables;
            occurrenceVar[j][pos] = nv;
            cycleVars[static_cast<std::size_t>(v)].push_back(nv);
        }
    }
    for (std::size_t j = 0; j < padded.clauses.size(); ++j) {
        Clause nc;
        for (std::size_t pos = 0; pos < padded.clauses[j].literals.size(); ++pos) {
            int lit = padded.clauses[j].literals[pos];
            nc.literals.push_back(lit > 0 ? occurrenceVar[j][pos] : -occurrenceVar[j][pos]);
        }
        expanded.clauses.push_back(std::move(nc));
    }
    for (int v = 1; v <= padded.numVariables; ++v) {
        const auto& ring = cycleVars[static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i < ring.size(); ++i)
            expanded.clauses.push_back({{-ring[i], ring[(i + 1) % ring.size()]}});
    }

    // Occurrence pattern of each expanded variable: the old-clause polarity
    // appears once, plus one negative and one positive cycle occurrence.
    // The doubled polarity owns beta (new-clause copy) and gamma (old-clause
    // copy); alpha is the single polarity.
    auto occ = expanded.occurrenceCounts();
    std::vector<int> alphaLits(static_cast<std::size_t>(expanded.numVariables) + 1, 0);
    for (int v = 1; v <= expanded.numVariables; ++v) {
        auto [pos, neg] = occ[static_cast<std::size_t>(v)];
        if (pos + neg != 3 || pos == 0 || neg == 0)
            throw Error("internal: expansion produced a non-3-occurrence variable");
        alphaLits[static_cast<std::size_t>(v)] = pos < neg ? v : -v;
    }
    auto attachFor = [&](int j, int pos, int lit) {
        int v = std::abs(lit);
        bool doubledNegative = alphaLits[static_cast<std::size_t>(v)] > 0;
        if (j < oldClauseCount) return 5; // old-clause occurrence -> gamma
        // Cycle clause (-v_i or v_{i+1}).
        (void)pos;
        if (lit < 0) return doubledNegative ? 0 : 4; // negative copy: beta if doubled-negative
        return doubledNegative ? 4 : 0;              // positive copy: alpha if doubled-negative
    };
    ReductionOutput out = buildCore(expanded, mainWeights(2), Rational(14), attachFor, alphaLits);
    out.variant = ReductionVariant::Bipartite;
    out.x = 2;
    out.originalVariables = f.numVariables;
    return out;
}

ReductionOutput buildReduction(const CnfFormula& input, const ReductionRequest& req) {
    switch (req.variant) {
    case ReductionVariant::Main: return buildMainReduction(normalize(input), req.x);
    case ReductionVariant::Mu2: return buildMu2Reduction(normalize(input));
    case ReductionVariant::Bipartite: return buildBipartiteReduction(input);
    case ReductionVariant::GreedyEdge:
        return buildGreedyEdgeReduction(normalize(input), req.integerWeights);
    }
    throw Error("unreachable");
}

namespace {

enum class GadgetForm { BetaFree, BetaGammaFree, AlphaFree, NoneFree };

struct GadgetEdges {
    VertexPair betaP, pq, qr, rAlpha, alphaGamma, gammaY, yz, zs, st;
};

GadgetEdges gadgetEdges(const GadgetInfo& gi) {
    return {orderedPair(gi.beta(), gi.p()),  orderedPair(gi.p(), gi.q()),
            orderedPair(gi.q(), gi.r()),     orderedPair(gi.r(), gi.alpha()),
            orderedPair(gi.alpha(), gi.gamma()), orderedPair(gi.gamma(), gi.y()),
            orderedPair(gi.y(), gi.z()),     orderedPair(gi.z(), gi.s()),
            orderedPair(gi.s(), gi.t())};
}

std::vector<VertexPair> internalEdgesFor(const GadgetInfo& gi, GadgetForm form) {
    GadgetEdges e = gadgetEdges(gi);
    switch (form) {
    case GadgetForm::BetaFree: return {e.pq, e.rAlpha, e.gammaY, e.zs};
    case GadgetForm::BetaGammaFree: return {e.pq, e.rAlpha, e.yz, e.st};
    case GadgetForm::AlphaFree: return {e.betaP, e.qr, e.gammaY, e.zs};
    case GadgetForm::NoneFree: return {e.betaP, e.qr, e.alphaGamma, e.yz, e.st};
    }
    return {};
}

void requireCertifiable(const ReductionOutput& r) {
    if (r.variant == ReductionVariant::GreedyEdge)
        throw PreconditionError("certificate converters are not defined for the greedy-edge variant");
}

} // namespace

Matching assignmentToMatching(const ReductionOutput& r, const std::vector<bool>& tau) {
    requireCertifiable(r);
    int n = r.numVariables();
    if (static_cast<int>(tau.size()) != n + 1)
        throw PreconditionError("assignment must cover variables 1..n");

    auto literalTrue = [&](int lit) {
        bool v = tau[static_cast<std::size_t>(std::abs(lit))];
        return lit > 0 ? v : !v;
    };

    std::vector<GadgetForm> form(static_cast<std::size_t>(n), GadgetForm::BetaFree);
    std::vector<VertexPair> connectors;
    for (int j = 0; j < r.numClauses(); ++j) {
        const auto& atts = r.attachments[static_cast<std::size_t>(j)];
        const OccurrenceAttachment* chosen = nullptr;
        // Prefer an alpha attachment, then beta, then gamma, among the
        // satisfied literals of the clause.
        for (int pass = 0; pass < 3 && !chosen; ++pass) {
            for (const auto& att : atts) {
                if (!literalTrue(att.literal)) continue;
                const GadgetInfo& gi = r.gadgets[static_cast<std::size_t>(std::abs(att.literal) - 1)];
                int kind = att.vertex == gi.alpha() ? 0 : (att.vertex == gi.beta() ? 1 : 2);
                if (kind == pass) {
                    chosen = &att;
                    break;
                }
            }
        }
        if (!chosen) continue;
        const GadgetInfo& gi = r.gadgets[static_cast<std::size_t>(std::abs(chosen->literal) - 1)];
        auto& gform = form[static_cast<std::size_t>(std::abs(chosen->literal) - 1)];
        if (chosen->vertex == gi.alpha()) {
            if (gform != GadgetForm::BetaFree) throw Error("internal: alpha switch on a switched gadget");
            gform = GadgetForm::AlphaFree;
        } else if (chosen->vertex == gi.gamma()) {
            if (gform != GadgetForm::BetaFree) throw Error("internal: gamma switch on a switched gadget");
            gform = GadgetForm::BetaGammaFree;
        } else {
            if (gform == GadgetForm::AlphaFree) throw Error("internal: beta edge on an alpha-free gadget");
        }
        connectors.push_back(orderedPair(r.clauseVertex(j), chosen->vertex));
    }

    std::vector<VertexPair> edges = connectors;
    for (int v = 1; v <= n; ++v) {
        auto internal = internalEdgesFor(r.gadgets[static_cast<std::size_t>(v - 1)],
                                         form[static_cast<std::size_t>(v - 1)]);
        edges.insert(edges.end(), internal.begin(), internal.end());
    }

    // Greedy-complete over the untouched remainder (unmatched clause
    // vertices may still have addable edges).
    Matching partial = Matching::of(std::move(edges));
    std::vector<char> used(static_cast<std::size_t>(r.graph.numVertices()), 0);
    for (auto [a, b] : partial.edges) used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = 1;
    std::vector<int> matchedVerts;
    for (int v = 0; v < r.graph.numVertices(); ++v)
        if (used[static_cast<std::size_t>(v)]) matchedVerts.push_back(v);
    WeightedGraph residual = r.graph.withoutVertices(matchedVerts);
    GreedyRun completion = runGreedy(residual, TieBreaker::lexicographic());
    std::vector<VertexPair> all = partial.edges;
    all.insert(all.end(), completion.matching.edges.begin(), completion.matching.edges.end());
    Matching result = Matching::of(std::move(all));

    if (!isGreedy(r.graph, result)) throw Error("internal: constructed matching is not greedy");
    Rational k(static_cast<long long>(satisfiedClauses(r.formula, tau)));
    if (matchingWeight(r.graph, result) <
        r.baseWeight * Rational(static_cast<long long>(n)) + k)
        throw Error("internal: constructed matching below its weight guarantee");
    return result;
}

std::vector<bool> matchingToAssignment(const ReductionOutput& r, const Matching& m) {
    requireCertifiable(r);
    if (!isGreedy(r.graph, m)) throw PreconditionError("matching is not greedy");
    int n = r.numVariables();

    Matching work = m;
    auto contains = [&](const VertexPair& e) { return work.contains(e.first, e.second); };
    auto matchedPartner = [&](int v) -> int {
        for (auto [a, b] : work.edges) {
            if (a == v) return b;
            if (b == v) return a;
        }
        return -1;
    };

    Rational before = matchingWeight(r.graph, work);
    std::vector<bool> tau(static_cast<std::size_t>(n) + 1, false);
    for (int v = 1; v <= n; ++v) {
        const GadgetInfo& gi = r.gadgets[static_cast<std::size_t>(v - 1)];
        GadgetEdges e = gadgetEdges(gi);

        // Left-side normalization: beta matched to its clause vertex while p
        // is free swaps to the equal-weight edge (beta, p).
        if (contains(e.qr) && !contains(e.betaP)) {
            int partner = matchedPartner(gi.beta());
            if (partner >= 0 && partner != gi.p() && matchedPartner(gi.p()) < 0) {
                Rational wOld = r.graph.edge(*r.graph.findEdge(gi.beta(), partner)).w;
                Rational wNew = r.graph.edge(*r.graph.findEdge(e.betaP.first, e.betaP.second)).w;
                if (wOld != wNew) throw Error("internal: normalization rewrite not weight neutral");
                std::vector<VertexPair> edited;
                for (auto edge : work.edges)
                    if (edge != orderedPair(gi.beta(), partner)) edited.push_back(edge);
                edited.push_back(e.betaP);
                work = Matching::of(std::move(edited));
            }
        }

        bool leftC = contains(e.pq) && contains(e.rAlpha);
        bool leftD = contains(e.betaP) && contains(e.qr);
        bool rightA = contains(e.gammaY) && contains(e.zs);
        bool rightB = contains(e.yz) && contains(e.st);
        GadgetForm form;
        if (leftC && rightA) {
            form = GadgetForm::BetaFree;
        } else if (leftC && rightB) {
            form = GadgetForm::BetaGammaFree;
        } else if (leftD && rightA) {
            form = GadgetForm::AlphaFree;
        } else if (leftD && rightB && contains(e.alphaGamma)) {
            form = GadgetForm::NoneFree;
        } else {
            throw Error("internal: gadget state not normalizable");
        }
        bool alphaTrue = form == GadgetForm::AlphaFree;
        int lit = gi.alphaLiteral;
        tau[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? alphaTrue : !alphaTrue;
    }
    if (matchingWeight(r.graph, work) != before)
        throw Error("internal: normalization pass changed the weight");

    Rational guarantee = before - r.baseWeight * Rational(static_cast<long long>(n));
    if (Rational(static_cast<long long>(satisfiedClauses(r.formula, tau))) < guarantee)
        throw Error("internal: extracted assignment below its clause guarantee");
    return tau;
}

std::string writeRoles(const ReductionOutput& r) {
    std::string out;
    for (const auto& [v, tag] : r.graph.labels())
        out += "role " + std::to_string(v) + " " + tag + "\n";
    return out;
}

void writeReductionBundle(const std::string& dir, const ReductionOutput& r,
                          const CnfFormula& input, const ReductionRequest& req) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto writeFile = [&](const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        if (!out) throw Error("cannot write " + name + " in " + dir);
        out << content;
    };
    writeFile("input.cnf", writeDimacs(input));
    writeFile("formula.cnf", writeDimacs(r.formula));
    writeFile("graph.txt", writeGraph(r.graph));
    writeFile("roles.txt", writeRoles(r));
    nlohmann::json meta;
    meta["schema_version"] = 1;
    meta["variant"] = variantName(req.variant);
    meta["x"] = req.x;
    meta["integer_weights"] = req.integerWeights;
    meta["base_weight"] = r.baseWeight.str();
    meta["variables"] = r.numVariables();
    meta["clauses"] = r.numClauses();
    if (r.designatedEdge)
        meta["designated_edge"] = {r.designatedEdge->first, r.designatedEdge->second};
    if (r.designatedVertex) meta["designated_vertex"] = *r.designatedVertex;
    writeFile("meta.json", meta.dump(2) + "\n");
}

std::pair<ReductionOutput, ReductionRequest> readReductionBundle(const std::string& dir) {
    namespace fs = std::filesystem;
    auto readFile = [&](const std::string& name) {
        std::ifstream in(fs::path(dir) / name, std::ios::binary);
        if (!in) throw Error("cannot read " + name + " in " + dir);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    nlohmann::json meta = nlohmann::json::parse(readFile("meta.json"));
    ReductionRequest req;
    req.variant = variantFromName(meta.at("variant").get<std::string>());
    req.x = meta.value("x", 2);
    req.integerWeights = meta.value("integer_weights", false);
    CnfFormula input = parseDimacs(readFile("input.cnf"));
    ReductionOutput rebuilt = buildReduction(input, req);
    if (writeGraph(rebuilt.graph) != readFile("graph.txt"))
        throw ValidationError("bundle graph does not match its deterministic rebuild");
    return {std::move(rebuilt), req};
}

} // namespace gm
