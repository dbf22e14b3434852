#include "gm/graph.hpp"

#include <algorithm>
#include <numeric>

#include "gm/errors.hpp"

namespace gm {

WeightedGraph::WeightedGraph(int numVertices, std::vector<Edge> edges,
                             std::map<int, std::string> labels)
    : numVertices_(numVertices), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (numVertices_ < 0) throw ValidationError("negative vertex count");
    for (auto& e : edges_) {
        if (e.u == e.v) throw ValidationError("self loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= numVertices_)
            throw ValidationError("edge endpoint out of range: " + std::to_string(e.u) + "," +
                                  std::to_string(e.v));
        if (!(e.w > Rational(0)))
            throw ValidationError("edge weight must be positive at (" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ")");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
            throw ValidationError("parallel edge (" + std::to_string(edges_[i].u) + "," +
                                  std::to_string(edges_[i].v) + ")");
    }
    for (auto& [v, text] : labels_) {
        if (v < 0 || v >= numVertices_) throw ValidationError("label on unknown vertex");
        (void)text;
    }
    incident_.assign(static_cast<std::size_t>(numVertices_), {});
    for (int i = 0; i < numEdges(); ++i) {
        incident_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(i)].u)].push_back(i);
        incident_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(i)].v)].push_back(i);
    }
}

std::optional<int> WeightedGraph::findEdge(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), VertexPair{u, v},
                               [](const Edge& e, const VertexPair& p) {
                                   return std::tie(e.u, e.v) < std::tie(p.first, p.second);
                               });
    if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
    return static_cast<int>(it - edges_.begin());
}

bool WeightedGraph::allUnitWeights() const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return e.w == Rational(1); });
}

WeightedGraph WeightedGraph::withoutVertices(std::span<const int> vs) const {
    std::vector<char> drop(static_cast<std::size_t>(numVertices_), 0);
    for (int v : vs) {
        if (v < 0 || v >= numVertices_) throw ValidationError("withoutVertices: unknown vertex");
        drop[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<Edge> kept;
    for (const Edge& e : edges_)
        if (!drop[static_cast<std::size_t>(e.u)] && !drop[static_cast<std::size_t>(e.v)]) kept.push_back(e);
    return {numVertices_, std::move(kept), labels_};
}

WeightedGraph WeightedGraph::scaled(const Rational& factor) const {
    if (!(factor > Rational(0))) throw PreconditionError("scale factor must be positive");
    std::vector<Edge> es = edges_;
    for (auto& e : es) e.w = e.w * factor;
    return {numVertices_, std::move(es), labels_};
}

WeightedGraph WeightedGraph::unit(int numVertices, const std::vector<VertexPair>& pairs) {
    std::vector<Edge> es;
    es.reserve(pairs.size());
    for (auto [u, v] : pairs) es.push_back({u, v, Rational(1)});
    return {numVertices, std::move(es)};
}

Matching Matching::of(std::vector<VertexPair> pairs) {
    for (auto& p : pairs)
        if (p.first > p.second) std::swap(p.first, p.second);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return Matching{std::move(pairs)};
}

bool Matching::contains(int u, int v) const {
    return std::binary_search(edges.begin(), edges.end(), orderedPair(u, v));
}

bool Matching::covers(int v) const {
    return std::any_of(edges.begin(), edges.end(),
                       [v](const VertexPair& e) { return e.first == v || e.second == v; });
}

void validateMatching(const WeightedGraph& g, const Matching& m) {
    std::vector<char> used(static_cast<std::size_t>(g.numVertices()), 0);
    for (auto [u, v] : m.edges) {
        if (!g.hasEdge(u, v))
            throw ValidationError("matching edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") not in graph");
        if (used[static_cast<std::size_t>(u)] || used[static_cast<std::size_t>(v)])
            throw ValidationError("matching edges share endpoint " +
                                  std::to_string(used[static_cast<std::size_t>(u)] ? u : v));
        used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
    }
}

Rational matchingWeight(const WeightedGraph& g, const Matching& m) {
    validateMatching(g, m);
    Rational total = 0;
    for (auto [u, v] : m.edges) total += g.edge(*g.findEdge(u, v)).w;
    return total;
}

bool isMaximalMatching(const WeightedGraph& g, const Matching& m) {
    validateMatching(g, m);
    std::vector<char> used(static_cast<std::size_t>(g.numVertices()), 0);
    for (auto [u, v] : m.edges) used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
    for (const Edge& e : g.edges())
        if (!used[static_cast<std::size_t>(e.u)] && !used[static_cast<std::size_t>(e.v)]) return false;
    return true;
}

std::vector<WeightClass> weightClasses(const WeightedGraph& g) {
    std::vector<int> idx(static_cast<std::size_t>(g.numEdges()));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (g.edge(a).w != g.edge(b).w) return g.edge(a).w > g.edge(b).w;
        return a < b;
    });
    std::vector<WeightClass> classes;
    for (int i : idx) {
        if (classes.empty() || classes.back().weight != g.edge(i).w)
            classes.push_back({g.edge(i).w, {}});
        classes.back().edgeIdx.push_back(i);
    }
    return classes;
}

std::optional<Rational> lambda0(const WeightedGraph& g) {
    auto classes = weightClasses(g);
    if (classes.size() < 2) return std::nullopt;
    std::optional<Rational> best;
    for (std::size_t i = 0; i + 1 < classes.size(); ++i) {
        Rational ratio = classes[i].weight / classes[i + 1].weight;
        if (!best || ratio < *best) best = ratio;
    }
    return best;
}

std::vector<std::vector<int>> edgeComponents(const WeightedGraph& g, std::span<const int> edgeIdx) {
    // Union-find over endpoints, restricted to the given edges.
    std::vector<int> parent(static_cast<std::size_t>(g.numVertices()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (int i : edgeIdx) {
        int a = find(g.edge(i).u), b = find(g.edge(i).v);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
    std::map<int, std::vector<int>> byRoot;
    for (int i : edgeIdx) byRoot[find(g.edge(i).u)].push_back(i);
    std::vector<std::vector<int>> out;
    out.reserve(byRoot.size());
    for (auto& [root, es] : byRoot) out.push_back(std::move(es));
    return out;
}

int mu(const WeightedGraph& g) {
    if (g.numEdges() == 0) throw PreconditionError("mu is undefined on an edgeless graph");
    int best = 0;
    for (const auto& cls : weightClasses(g))
        for (const auto& comp : edgeComponents(g, cls.edgeIdx))
            best = std::max(best, static_cast<int>(comp.size()));
    return best;
}

GraphParams computeParams(const WeightedGraph& g) {
    GraphParams p;
    p.lambda0 = lambda0(g);
    p.mu = mu(g);
    p.numWeightClasses = static_cast<int>(weightClasses(g).size());
    return p;
}

BipartiteResult isBipartite(const WeightedGraph& g) {
    BipartiteResult res;
    int n = g.numVertices();
    res.coloring.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    for (int start = 0; start < n; ++start) {
        if (res.coloring[static_cast<std::size_t>(start)] != -1) continue;
        res.coloring[static_cast<std::size_t>(start)] = 0;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int ei : g.incident(u)) {
                const Edge& e = g.edge(ei);
                int v = e.u == u ? e.v : e.u;
                if (res.coloring[static_cast<std::size_t>(v)] == -1) {
                    res.coloring[static_cast<std::size_t>(v)] = 1 - res.coloring[static_cast<std::size_t>(u)];
                    parent[static_cast<std::size_t>(v)] = u;
                    stack.push_back(v);
                } else if (res.coloring[static_cast<std::size_t>(v)] == res.coloring[static_cast<std::size_t>(u)]) {
                    // Conflict edge (u, v): walk both tree paths to the root
                    // and splice an odd cycle at the lowest common ancestor.
                    std::vector<int> pu{u}, pv{v};
                    for (int x = u; parent[static_cast<std::size_t>(x)] != -1; x = parent[static_cast<std::size_t>(x)])
                        pu.push_back(parent[static_cast<std::size_t>(x)]);
                    for (int x = v; parent[static_cast<std::size_t>(x)] != -1; x = parent[static_cast<std::size_t>(x)])
                        pv.push_back(parent[static_cast<std::size_t>(x)]);
                    std::vector<char> onPu(static_cast<std::size_t>(n), 0);
                    for (int x : pu) onPu[static_cast<std::size_t>(x)] = 1;
                    int lca = -1;
                    for (int x : pv)
                        if (onPu[static_cast<std::size_t>(x)]) {
                            lca = x;
                            break;
                        }
                    std::vector<int> cycle;
                    for (int x : pu) {
                        cycle.push_back(x);
                        if (x == lca) break;
                    }
                    std::vector<int> half;
                    for (int x : pv) {
                        if (x == lca) break;
                        half.push_back(x);
                    }
                    std::reverse(half.begin(), half.end());
                    cycle.insert(cycle.end(), half.begin(), half.end());
                    res.bipartite = false;
                    res.oddCycle = std::move(cycle);
                    res.coloring.clear();
                    return res;
                }
            }
        }
    }
    res.bipartite = true;
    return res;
}

} // namespace gm
