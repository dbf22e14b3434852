#ifndef GM_GRAPH_HPP
#define GM_GRAPH_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gm/rational.hpp"

namespace gm {

/// Undirected edge with an exact positive weight. Endpoints are kept
/// normalized with u < v.
struct Edge {
    int u = 0;
    int v = 0;
    Rational w = 1;
};

using VertexPair = std::pair<int, int>;

inline VertexPair orderedPair(int a, int b) { return a < b ? VertexPair{a, b} : VertexPair{b, a}; }

/// Immutable undirected graph with dense integer vertex ids, no self loops,
/// no parallel edges, and strictly positive exact-rational edge weights.
/// Vertex labels are an optional side table used by the reduction builders.
class WeightedGraph {
public:
    WeightedGraph() = default;
    WeightedGraph(int numVertices, std::vector<Edge> edges,
                  std::map<int, std::string> labels = {});

    int numVertices() const { return numVertices_; }
    int numEdges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int idx) const { return edges_[static_cast<std::size_t>(idx)]; }

    /// Edge indices incident to v.
    std::span<const int> incident(int v) const {
        return {incident_[static_cast<std::size_t>(v)].data(), incident_[static_cast<std::size_t>(v)].size()};
    }

    std::optional<int> findEdge(int u, int v) const;
    bool hasEdge(int u, int v) const { return findEdge(u, v).has_value(); }

    const std::map<int, std::string>& labels() const { return labels_; }
    std::string label(int v) const {
        auto it = labels_.find(v);
        return it == labels_.end() ? std::string{} : it->second;
    }

    bool allUnitWeights() const;

    /// Same vertex id space, every edge touching one of the given vertices
    /// dropped. Matching-related quantities treat the removed vertices as
    /// isolated, which is equivalent to deleting them.
    WeightedGraph withoutVertices(std::span<const int> vs) const;

    /// All weights multiplied by a positive rational factor.
    WeightedGraph scaled(const Rational& factor) const;

    /// Unit-weight graph from a plain edge list.
    static WeightedGraph unit(int numVertices, const std::vector<VertexPair>& pairs);

private:
    int numVertices_ = 0;
    std::vector<Edge> edges_;                  // sorted by (u, v)
    std::vector<std::vector<int>> incident_;   // vertex -> edge indices
    std::map<int, std::string> labels_;
};

/// A set of pairwise non-adjacent edges, stored as sorted (u, v) pairs.
struct Matching {
    std::vector<VertexPair> edges;

    static Matching of(std::vector<VertexPair> pairs);

    std::size_t size() const { return edges.size(); }
    bool contains(int u, int v) const;
    bool covers(int v) const;
};

/// Throws ValidationError unless every edge of m exists in g and no two
/// edges of m share an endpoint.
void validateMatching(const WeightedGraph& g, const Matching& m);

Rational matchingWeight(const WeightedGraph& g, const Matching& m);

/// True iff no edge of g has both endpoints unmatched by m.
bool isMaximalMatching(const WeightedGraph& g, const Matching& m);

struct WeightClass {
    Rational weight;
    std::vector<int> edgeIdx;
};

/// Edge classes sorted by strictly decreasing weight; they partition E.
std::vector<WeightClass> weightClasses(const WeightedGraph& g);

/// Minimum ratio between consecutive distinct weights. nullopt encodes
/// +infinity (fewer than two weight classes).
std::optional<Rational> lambda0(const WeightedGraph& g);

/// Maximum edge count of a connected component inside a single weight
/// class. Undefined (throws PreconditionError) on edgeless graphs.
int mu(const WeightedGraph& g);

struct GraphParams {
    std::optional<Rational> lambda0; // nullopt == +infinity
    int mu = 0;
    int numWeightClasses = 0;
};

GraphParams computeParams(const WeightedGraph& g);

struct BipartiteResult {
    bool bipartite = false;
    std::vector<int> coloring; // 0/1 per vertex when bipartite
    std::vector<int> oddCycle; // odd-length vertex cycle when not
};

BipartiteResult isBipartite(const WeightedGraph& g);

/// Connected components of the subgraph spanned by the given edge indices.
/// Each component is a list of edge indices.
std::vector<std::vector<int>> edgeComponents(const WeightedGraph& g, std::span<const int> edgeIdx);

} // namespace gm

#endif
