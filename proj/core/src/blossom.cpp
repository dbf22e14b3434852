#include "gm/blossom.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>

#include "gm/errors.hpp"

namespace gm {

namespace {

// ---------------------------------------------------------------------------
// Maximum weight perfect matching on a complete graph with an even number of
// vertices, primal-dual with blossom contraction, O(n^3). Vertices are
// 1..n; blossom nodes use ids n+1..2n. Edge weights are doubled on input so
// every dual quantity stays a plain rational without stray halves.
//
// The caller (maxWeightMatching below) completes the input graph with
// zero-weight filler edges and strips them from the result; with nonnegative
// weights the maximum weight perfect matching of the completed graph has the
// weight of a maximum weight matching of the original.
// ---------------------------------------------------------------------------
class WeightedPerfectMatcher {
public:
    explicit WeightedPerfectMatcher(const std::vector<std::vector<Rational>>& weight2)
        : n_(static_cast<int>(weight2.size()) - 1), nx_(n_) {
        int cap = 2 * n_ + 1;
        w2_ = weight2;
        lab_.assign(static_cast<std::size_t>(cap), Rational(0));
        match_.assign(static_cast<std::size_t>(cap), 0);
        slackFrom_.assign(static_cast<std::size_t>(cap), 0);
        st_.assign(static_cast<std::size_t>(cap), 0);
        pa_.assign(static_cast<std::size_t>(cap), 0);
        side_.assign(static_cast<std::size_t>(cap), -1);
        vis_.assign(static_cast<std::size_t>(cap), 0);
        flower_.assign(static_cast<std::size_t>(cap), {});
        flowerFrom_.assign(static_cast<std::size_t>(cap),
                           std::vector<int>(static_cast<std::size_t>(n_ + 1), 0));
        repU_.assign(static_cast<std::size_t>(cap), std::vector<int>(static_cast<std::size_t>(cap), 0));
        repV_.assign(static_cast<std::size_t>(cap), std::vector<int>(static_cast<std::size_t>(cap), 0));

        Rational maxW = 0;
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v)
                if (u != v && w2_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] > maxW)
                    maxW = w2_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
        for (int u = 1; u <= n_; ++u) {
            st_[static_cast<std::size_t>(u)] = u;
            lab_[static_cast<std::size_t>(u)] = maxW / Rational(2);
            flowerFrom_[static_cast<std::size_t>(u)][static_cast<std::size_t>(u)] = u;
            for (int v = 1; v <= n_; ++v)
                if (u != v) {
                    repU_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = u;
                    repV_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = v;
                }
        }
    }

    /// mate[u] for u in 1..n; n must be even (perfect matching exists on a
    /// complete graph).
    std::vector<int> solve() {
        while (phase()) {
        }
        for (int u = 1; u <= n_; ++u)
            if (match_[static_cast<std::size_t>(u)] == 0)
                throw Error("internal: perfect matching phase left an unmatched vertex");
        return {match_.begin(), match_.begin() + n_ + 1};
    }

private:
    int n_;
    int nx_;
    std::vector<std::vector<Rational>> w2_;
    std::vector<Rational> lab_;
    std::vector<int> match_, slackFrom_, st_, pa_, side_, vis_;
    std::vector<std::vector<int>> flower_;
    std::vector<std::vector<int>> flowerFrom_;
    std::vector<std::vector<int>> repU_, repV_;
    std::deque<int> queue_;
    int visitTime_ = 0;

    bool hasRep(int x, int y) const {
        return repU_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] != 0;
    }

    Rational deltaReal(int u, int v) const {
        return lab_[static_cast<std::size_t>(u)] + lab_[static_cast<std::size_t>(v)] -
               w2_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    }

    Rational deltaRep(int x, int y) const {
        return deltaReal(repU_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)],
                         repV_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
    }

    void qPush(int x) {
        if (x <= n_) {
            queue_.push_back(x);
        } else {
            for (int sub : flower_[static_cast<std::size_t>(x)]) qPush(sub);
        }
    }

    void setSt(int x, int b) {
        st_[static_cast<std::size_t>(x)] = b;
        if (x > n_)
            for (int sub : flower_[static_cast<std::size_t>(x)]) setSt(sub, b);
    }

    void updateSlack(int u, int x) {
        if (!slackFrom_[static_cast<std::size_t>(x)] ||
            deltaRep(u, x) < deltaRep(slackFrom_[static_cast<std::size_t>(x)], x))
            slackFrom_[static_cast<std::size_t>(x)] = u;
    }

    void setSlack(int x) {
        slackFrom_[static_cast<std::size_t>(x)] = 0;
        for (int u = 1; u <= n_; ++u)
            if (hasRep(u, x) && st_[static_cast<std::size_t>(u)] != x &&
                side_[static_cast<std::size_t>(st_[static_cast<std::size_t>(u)])] == 0)
                updateSlack(u, x);
    }

    /// Position of sub xr inside flower_[b], reversing the cycle (base kept
    /// first) when needed so the position is even.
    int getPr(int b, int xr) {
        auto& f = flower_[static_cast<std::size_t>(b)];
        auto pos = static_cast<int>(std::find(f.begin(), f.end(), xr) - f.begin());
        if (pos % 2 == 1) {
            std::reverse(f.begin() + 1, f.end());
            return static_cast<int>(f.size()) - pos;
        }
        return pos;
    }

    void setMatch(int x, int y) {
        int ru = repU_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
        int rv = repV_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
        match_[static_cast<std::size_t>(x)] = rv;
        if (x <= n_) return;
        int xr = flowerFrom_[static_cast<std::size_t>(x)][static_cast<std::size_t>(ru)];
        int pr = getPr(x, xr);
        auto& f = flower_[static_cast<std::size_t>(x)];
        for (int i = 0; i < pr; ++i) setMatch(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(i ^ 1)]);
        setMatch(xr, y);
        std::rotate(f.begin(), f.begin() + pr, f.end());
    }

    void augment(int u, int v) {
        for (;;) {
            int xnv = st_[static_cast<std::size_t>(match_[static_cast<std::size_t>(u)])];
            setMatch(u, v);
            if (!xnv) return;
            setMatch(xnv, st_[static_cast<std::size_t>(pa_[static_cast<std::size_t>(xnv)])]);
            u = st_[static_cast<std::size_t>(pa_[static_cast<std::size_t>(xnv)])];
            v = xnv;
        }
    }

    int getLca(int u, int v) {
        ++visitTime_;
        while (u || v) {
            if (u) {
                if (vis_[static_cast<std::size_t>(u)] == visitTime_) return u;
                vis_[static_cast<std::size_t>(u)] = visitTime_;
                u = st_[static_cast<std::size_t>(match_[static_cast<std::size_t>(u)])];
                if (u) u = st_[static_cast<std::size_t>(pa_[static_cast<std::size_t>(u)])];
            }
            std::swap(u, v);
        }
        return 0;
    }

    void addBlossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= nx_ && st_[static_cast<std::size_t>(b)]) ++b;
        if (b > nx_) ++nx_;
        lab_[static_cast<std::size_t>(b)] = 0;
        side_[static_cast<std::size_t>(b)] = 0;
        match_[static_cast<std::size_t>(b)] = match_[static_cast<std::size_t>(lca)];
        auto& f = flower_[static_cast<std::size_t>(b)];
        f.clear();
        f.push_back(lca);
        for (int x = st_[static_cast<std::size_t>(u)], y; x != lca;
             x = st_[static_cast<std::size_t>(pa_[static_cast<std::size_t>(y)])]) {
            f.push_back(x);
            y = st_[static_cast<std::size_t>(match_[static_cast<std::size_t>(x)])];
            f.push_back(y);
            qPush(y);
        }
        std::reverse(f.begin() + 1, f.end());
        for (int x = st_[static_cast<std::size_t>(v)], y; x != lca;
             x = st_[static_cast<std::size_t>(pa_[static_cast<std::size_t>(y)])]) {
            f.push_back(x);
            y = st_[static_cast<std::size_t>(match_[static_cast<std::size_t>(x)])];
            f.push_back(y);
            qPush(y);
        }
        setSt(b, b);
        for (int x = 1; x <= nx_; ++x) {
            repU_[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)] = 0;
            repU_[static_cast<std::size_t>(x)][static_cast<std::size_t>(b)] = 0;
        }
        for (int x = 1; x <= n_; ++x) flowerFrom_[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)] = 0;
        for (int xs : f) {
            for (int x = 1; x <= nx_; ++x) {
                if (!hasRep(xs, x)) continue;
                if (!hasRep(b, x) || deltaRep(xs, x) < deltaRep(b, x)) {
                    repU_[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)] =
                        repU_[static_cast<std::size_t>(xs)][static_cast<std::size_t>(x)];
                    repV_[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)] =
                        repV_[static_cast<std::size_t>(xs)][static_cast<std::size_t>(x)];
                    repU_[static_cast<std::size_t>(x)][static_cast<std::size_t>(b)] =
                        repV_[static_cast<std::size_t>(xs)][static_cast<std::size_t>(x)];
                    repV_[static_cast<std::size_t>(x)][static_cast<std::size_t>(b)] =
                        repU_[static_cast<std::size_t>(xs)][static_cast<std::size_t>(x)];
                }
            }
            for (int x = 1; x <= n_; ++x)
                if (flowerFrom_[static_cast<std::size_t>(xs)][static_cast<std::size_t>(x)])
                    flowerFrom_[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)] = xs;
        }
        setSlack(b);
    }

    void expandBlossom(int b) {
        auto f = flower_[static_cast<std::size_t>(b)]; // copy; slots are recycled below
        for (int xs : f) setSt(xs, xs);
        int enteringReal = repU_[static_cast<std::size_t>(b)][static_cast<std::size_t>(pa_[static_cast<std::size_t>(b)])];
        int xr = flowerFrom_[static_cast<std::size_t>(b)][static_cast<std::size_t>(enteringReal)];
        int pr = getPr(b, xr);
        f = flower_[static_cast<std::size_t>(b)]; // getPr may have reversed it
        for (int i = 0; i < pr; i += 2) {
            int xs = f[static_cast<std::size_t>(i)];
            int xns = f[static_cast<std::size_t>(i + 1)];
            pa_[static_cast<std::size_t>(xs)] =
                repU_[static_cast<std::size_t>(xns)][static_cast<std::size_t>(xs)];
            side_[static_cast<std::size_t>(xs)] = 1;
            side_[static_cast<std::size_t>(xns)] = 0;
            slackFrom_[static_cast<std::size_t>(xs)] = 0;
            setSlack(xns);
            qPush(xns);
        }
        side_[static_cast<std::size_t>(xr)] = 1;
        pa_[static_cast<std::size_t>(xr)] = pa_[static_cast<std::size_t>(b)];
        slackFrom_[static_cast<std::size_t>(xr)] = 0;
        for (std::size_t i = static_cast<std::size_t>(pr) + 1; i < f.size(); ++i) {
            side_[f[i]] = -1;
            setSlack(f[i]);
        }
        st_[static_cast<std::size_t>(b)] = 0;
        flower_[static_cast<std::size_t>(b)].clear();
    }

    bool onFoundEdge(int u, int v) {
        int tu = st_[static_cast<std::size_t>(u)];
        int tv = st_[static_cast<std::size_t>(v)];
        if (side_[static_cast<std::size_t>(tv)] == -1) {
            pa_[static_cast<std::size_t>(tv)] = u;
            side_[static_cast<std::size_t>(tv)] = 1;
            int nu = st_[static_cast<std::size_t>(match_[static_cast<std::size_t>(tv)])];
            slackFrom_[static_cast<std::size_t>(tv)] = 0;
            slackFrom_[static_cast<std::size_t>(nu)] = 0;
            side_[static_cast<std::size_t>(nu)] = 0;
            qPush(nu);
        } else if (side_[static_cast<std::size_t>(tv)] == 0) {
            int lca = getLca(tu, tv);
            if (!lca) {
                augment(tu, tv);
                augment(tv, tu);
                return true;
            }
            addBlossom(u, lca, v);
        }
        return false;
    }

    bool phase() {
        std::fill(side_.begin(), side_.end(), -1);
        std::fill(slackFrom_.begin(), slackFrom_.end(), 0);
        queue_.clear();
        bool haveRoot = false;
        for (int x = 1; x <= nx_; ++x)
            if (st_[static_cast<std::size_t>(x)] == x && !match_[static_cast<std::size_t>(x)]) {
                pa_[static_cast<std::size_t>(x)] = 0;
                side_[static_cast<std::size_t>(x)] = 0;
                qPush(x);
                haveRoot = true;
            }
        if (!haveRoot) return false;

        for (;;) {
            while (!queue_.empty()) {
                int u = queue_.front();
                queue_.pop_front();
                if (side_[static_cast<std::size_t>(st_[static_cast<std::size_t>(u)])] == 1) continue;
                for (int v = 1; v <= n_; ++v) {
                    if (v == u || st_[static_cast<std::size_t>(u)] == st_[static_cast<std::size_t>(v)]) continue;
                    Rational d = deltaReal(u, v);
                    if (d.isZero()) {
                        if (onFoundEdge(u, v)) return true;
                    } else if (side_[static_cast<std::size_t>(st_[static_cast<std::size_t>(v)])] != 1) {
                        updateSlack(u, st_[static_cast<std::size_t>(v)]);
                    }
                }
            }

            bool haveDelta = false;
            Rational d = 0;
            auto consider = [&](const Rational& cand) {
                if (!haveDelta || cand < d) {
                    d = cand;
                    haveDelta = true;
                }
            };
            for (int b = n_ + 1; b <= nx_; ++b)
                if (st_[static_cast<std::size_t>(b)] == b && side_[static_cast<std::size_t>(b)] == 1)
                    consider(lab_[static_cast<std::size_t>(b)] / Rational(2));
            for (int x = 1; x <= nx_; ++x) {
                if (st_[static_cast<std::size_t>(x)] != x || !slackFrom_[static_cast<std::size_t>(x)]) continue;
                if (side_[static_cast<std::size_t>(x)] == -1)
                    consider(deltaRep(slackFrom_[static_cast<std::size_t>(x)], x));
                else if (side_[static_cast<std::size_t>(x)] == 0)
                    consider(deltaRep(slackFrom_[static_cast<std::size_t>(x)], x) / Rational(2));
            }
            if (!haveDelta) throw Error("internal: perfect matching duals stalled");

            for (int u = 1; u <= n_; ++u) {
                int t = st_[static_cast<std::size_t>(u)];
                if (side_[static_cast<std::size_t>(t)] == 0)
                    lab_[static_cast<std::size_t>(u)] -= d;
                else if (side_[static_cast<std::size_t>(t)] == 1)
                    lab_[static_cast<std::size_t>(u)] += d;
            }
            for (int b = n_ + 1; b <= nx_; ++b) {
                if (st_[static_cast<std::size_t>(b)] != b || side_[static_cast<std::size_t>(b)] == -1) continue;
                if (side_[static_cast<std::size_t>(b)] == 0)
                    lab_[static_cast<std::size_t>(b)] += d + d;
                else
                    lab_[static_cast<std::size_t>(b)] -= d + d;
            }

            for (int x = 1; x <= nx_; ++x) {
                if (st_[static_cast<std::size_t>(x)] != x || !slackFrom_[static_cast<std::size_t>(x)]) continue;
                if (side_[static_cast<std::size_t>(x)] == 1) continue;
                int u = slackFrom_[static_cast<std::size_t>(x)];
                if (st_[static_cast<std::size_t>(u)] == x) {
                    slackFrom_[static_cast<std::size_t>(x)] = 0;
                    continue;
                }
                if (deltaRep(u, x).isZero()) {
                    int v = repV_[static_cast<std::size_t>(u)][static_cast<std::size_t>(x)];
                    if (onFoundEdge(u, v)) return true;
                }
            }
            for (int b = n_ + 1; b <= nx_; ++b)
                if (st_[static_cast<std::size_t>(b)] == b && side_[static_cast<std::size_t>(b)] == 1 &&
                    lab_[static_cast<std::size_t>(b)].isZero())
                    expandBlossom(b);
        }
    }
};

bool shareEndpoint(const Edge& a, const Edge& b) {
    return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
}

} // namespace

Matching maxWeightMatching(const WeightedGraph& g) {
    if (g.numEdges() == 0) return {};
    int real = g.numVertices();
    int n = real % 2 == 0 ? real : real + 1;
    std::vector<std::vector<Rational>> w2(
        static_cast<std::size_t>(n + 1), std::vector<Rational>(static_cast<std::size_t>(n + 1), Rational(0)));
    for (const Edge& e : g.edges()) {
        Rational doubled = e.w + e.w;
        w2[static_cast<std::size_t>(e.u + 1)][static_cast<std::size_t>(e.v + 1)] = doubled;
        w2[static_cast<std::size_t>(e.v + 1)][static_cast<std::size_t>(e.u + 1)] = doubled;
    }
    WeightedPerfectMatcher matcher(w2);
    auto mate = matcher.solve();
    std::vector<VertexPair> pairs;
    for (int u = 1; u <= real; ++u) {
        int v = mate[static_cast<std::size_t>(u)];
        if (v > u && v <= real && g.hasEdge(u - 1, v - 1)) pairs.push_back({u - 1, v - 1});
    }
    return Matching::of(std::move(pairs));
}

Matching maxWeightMatchingBruteForce(const WeightedGraph& g) {
    if (g.numEdges() > 24)
        throw PreconditionError("brute force matching oracle limited to 24 edges");
    const auto& es = g.edges();
    std::vector<int> best, current;
    Rational bestW = 0;
    Rational currentW = 0;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (currentW > bestW) {
            bestW = currentW;
            best = current;
        }
        if (pos == es.size()) return;
        for (std::size_t i = pos; i < es.size(); ++i) {
            bool conflict = false;
            for (int ci : current)
                if (shareEndpoint(es[i], es[static_cast<std::size_t>(ci)])) {
                    conflict = true;
                    break;
                }
            if (conflict) continue;
            current.push_back(static_cast<int>(i));
            currentW += es[i].w;
            self(self, i + 1);
            currentW -= es[i].w;
            current.pop_back();
        }
    };
    rec(rec, 0);
    std::vector<VertexPair> pairs;
    for (int i : best) pairs.push_back({es[static_cast<std::size_t>(i)].u, es[static_cast<std::size_t>(i)].v});
    return Matching::of(std::move(pairs));
}

Matching maxCardinalityMatching(const WeightedGraph& g) {
    int n = g.numVertices();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const Edge& e : g.edges()) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<int> mate(static_cast<std::size_t>(n), -1);
    std::vector<int> parent(static_cast<std::size_t>(n)), base(static_cast<std::size_t>(n));
    std::vector<char> used(static_cast<std::size_t>(n)), blossom(static_cast<std::size_t>(n));

    auto lca = [&](int a, int b) {
        std::vector<char> mark(static_cast<std::size_t>(n), 0);
        for (;;) {
            a = base[static_cast<std::size_t>(a)];
            mark[static_cast<std::size_t>(a)] = 1;
            if (mate[static_cast<std::size_t>(a)] == -1) break;
            a = parent[static_cast<std::size_t>(mate[static_cast<std::size_t>(a)])];
        }
        for (;;) {
            b = base[static_cast<std::size_t>(b)];
            if (mark[static_cast<std::size_t>(b)]) return b;
            b = parent[static_cast<std::size_t>(mate[static_cast<std::size_t>(b)])];
        }
    };

    std::vector<int> q;
    auto markPath = [&](int v, int b, int child) {
        while (base[static_cast<std::size_t>(v)] != b) {
            blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(v)])] = 1;
            blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(mate[static_cast<std::size_t>(v)])])] = 1;
            parent[static_cast<std::size_t>(v)] = child;
            child = mate[static_cast<std::size_t>(v)];
            v = parent[static_cast<std::size_t>(mate[static_cast<std::size_t>(v)])];
        }
    };

    auto findPath = [&](int root) -> int {
        std::fill(used.begin(), used.end(), 0);
        std::fill(parent.begin(), parent.end(), -1);
        std::iota(base.begin(), base.end(), 0);
        used[static_cast<std::size_t>(root)] = 1;
        q.assign(1, root);
        for (std::size_t head = 0; head < q.size(); ++head) {
            int v = q[head];
            for (int to : adj[static_cast<std::size_t>(v)]) {
                if (base[static_cast<std::size_t>(v)] == base[static_cast<std::size_t>(to)] ||
                    mate[static_cast<std::size_t>(v)] == to)
                    continue;
                if (to == root ||
                    (mate[static_cast<std::size_t>(to)] != -1 &&
                     parent[static_cast<std::size_t>(mate[static_cast<std::size_t>(to)])] != -1)) {
                    int cur = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), 0);
                    markPath(v, cur, to);
                    markPath(to, cur, v);
                    for (int i = 0; i < n; ++i)
                        if (blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(i)])]) {
                            base[static_cast<std::size_t>(i)] = cur;
                            if (!used[static_cast<std::size_t>(i)]) {
                                used[static_cast<std::size_t>(i)] = 1;
                                q.push_back(i);
                            }
                        }
                } else if (parent[static_cast<std::size_t>(to)] == -1) {
                    parent[static_cast<std::size_t>(to)] = v;
                    if (mate[static_cast<std::size_t>(to)] == -1) {
                        return to;
                    }
                    used[static_cast<std::size_t>(mate[static_cast<std::size_t>(to)])] = 1;
                    q.push_back(mate[static_cast<std::size_t>(to)]);
                }
            }
        }
        return -1;
    };

    for (int v = 0; v < n; ++v) {
        if (mate[static_cast<std::size_t>(v)] != -1) continue;
        int u = findPath(v);
        while (u != -1) {
            int pv = parent[static_cast<std::size_t>(u)];
            int ppv = mate[static_cast<std::size_t>(pv)];
            mate[static_cast<std::size_t>(u)] = pv;
            mate[static_cast<std::size_t>(pv)] = u;
            u = ppv;
        }
    }

    std::vector<VertexPair> pairs;
    for (int v = 0; v < n; ++v)
        if (mate[static_cast<std::size_t>(v)] > v) pairs.push_back({v, mate[static_cast<std::size_t>(v)]});
    return Matching::of(std::move(pairs));
}

} // namespace gm
