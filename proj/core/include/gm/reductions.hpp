#ifndef GM_REDUCTIONS_HPP
#define GM_REDUCTIONS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gm/cnf.hpp"
#include "gm/graph.hpp"

namespace gm {

enum class ReductionVariant { Main, Bipartite, Mu2, GreedyEdge };

std::string variantName(ReductionVariant v);
ReductionVariant variantFromName(const std::string& name);

/// Ten-vertex path gadget of one variable. Path order:
/// beta - p - q - r - alpha - gamma - y - z - s - t.
struct GadgetInfo {
    std::array<int, 10> verts{};
    /// Signed literal (over the reduced formula) that vertex alpha stands
    /// for; beta and gamma stand for its negation.
    int alphaLiteral = 0;

    int beta() const { return verts[0]; }
    int p() const { return verts[1]; }
    int q() const { return verts[2]; }
    int r() const { return verts[3]; }
    int alpha() const { return verts[4]; }
    int gamma() const { return verts[5]; }
    int y() const { return verts[6]; }
    int z() const { return verts[7]; }
    int s() const { return verts[8]; }
    int t() const { return verts[9]; }
};

/// One literal occurrence wired to a distinguished gadget vertex.
struct OccurrenceAttachment {
    int clause = 0;   // 0-based clause index
    int position = 0; // position inside the clause
    int literal = 0;  // signed variable of the reduced formula
    int vertex = 0;   // alpha/beta/gamma vertex it attaches to
    Rational weight;
};

struct ReductionOutput {
    WeightedGraph graph;
    ReductionVariant variant = ReductionVariant::Main;
    int x = 2;
    bool integerWeights = false;

    /// The formula the graph actually encodes (normalized, or expanded for
    /// the bipartite variant).
    CnfFormula formula;
    Rational baseWeight; // per-gadget contribution of the heaviest state

    std::vector<GadgetInfo> gadgets;                            // [var-1]
    std::vector<std::vector<OccurrenceAttachment>> attachments; // [clause]
    std::optional<VertexPair> designatedEdge;                   // (u, u*)
    std::optional<int> designatedVertex;                        // u*

    /// Mapping back to the pre-normalization input (empty for bipartite).
    std::vector<int> sourceLiteral;
    std::vector<std::pair<int, bool>> fixedAssignments;
    int originalVariables = 0;

    int numVariables() const { return formula.numVariables; }
    int numClauses() const { return formula.numClauses(); }
    int clauseVertex(int j) const { return 10 * numVariables() + j; }
};

/// Variable gadgets with weights (1, x+1, 2x, 2x, 2x, 2x, 2x, x+1, 1) along
/// the path, one clause vertex per clause; a positive occurrence attaches to
/// alpha with weight x+1, the first negative occurrence (in clause order) to
/// beta with weight 1, the second to gamma with weight x+1.
ReductionOutput buildMainReduction(const NormalizedFormula& f, int x = 2);

/// Gadget weights (2, 4, 5, 5, 4, 5, 5, 4, 2); connector weights 1 and 3.
/// Every weight class of the output has components of at most two edges.
ReductionOutput buildMu2Reduction(const NormalizedFormula& f);

/// Variable-cycle expansion of an arbitrary-occurrence 2-CNF followed by the
/// x = 2 construction with polarity-dependent alpha/beta/gamma wiring. The
/// output graph is bipartite.
ReductionOutput buildBipartiteReduction(const CnfFormula& f);

/// x = 2 construction over a normalized 3SAT(3) formula plus two extra
/// vertices: u adjacent to every clause vertex with weight 1/2 and u*
/// adjacent only to u with weight 1/4. With integerWeights all weights are
/// scaled by 4, giving the integer set {16, 12, 4, 2, 1}; greedy matchings
/// are identical as edge sets.
ReductionOutput buildGreedyEdgeReduction(const NormalizedFormula& f, bool integerWeights = false);

struct ReductionRequest {
    ReductionVariant variant = ReductionVariant::Main;
    int x = 2;
    bool integerWeights = false;
};

/// Parses nothing, normalizes as the variant requires, and dispatches.
ReductionOutput buildReduction(const CnfFormula& input, const ReductionRequest& req);

/// Certificate direction 1: an assignment over the reduced formula becomes
/// a greedy matching of weight >= baseWeight * n + satisfiedClauses(tau).
/// tau is indexed 1..n (index 0 ignored). Not defined for GreedyEdge.
Matching assignmentToMatching(const ReductionOutput& r, const std::vector<bool>& tau);

/// Certificate direction 2: a greedy matching becomes an assignment
/// satisfying at least weight(m) - baseWeight * n clauses. Applies the
/// weight-neutral gadget normalization rewrites first. Not defined for
/// GreedyEdge.
std::vector<bool> matchingToAssignment(const ReductionOutput& r, const Matching& m);

/// "role <vertex> <tag>" lines, one per labeled vertex.
std::string writeRoles(const ReductionOutput& r);

/// Bundle directory: input.cnf, graph.txt, roles.txt, formula.cnf,
/// meta.json. Reading re-runs the deterministic builder on input.cnf and
/// verifies the stored graph matches byte for byte.
void writeReductionBundle(const std::string& dir, const ReductionOutput& r,
                          const CnfFormula& input, const ReductionRequest& req);
std::pair<ReductionOutput, ReductionRequest> readReductionBundle(const std::string& dir);

} // namespace gm

#endif
