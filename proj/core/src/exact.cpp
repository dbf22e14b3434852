#include "gm/exact.hpp"

#include <algorithm>
#include <cassert>

#include "gm/enumerate.hpp"
#include "gm/greedy.hpp"
#include "state_space.hpp"

namespace gm {

using detail::EdgeSet;
using detail::StateSpace;

namespace {

struct MaxEntry {
    Rational value;
    std::vector<int> witness; // edge indices
};

class ExactSolver {
public:
    ExactSolver(const WeightedGraph& g, std::uint64_t budget)
        : g_(g), space_(g), budget_(budget) {}

    SolveResult run() {
        MaxEntry root = eval(space_.fullState());
        SolveResult res;
        res.optWeight = root.value;
        res.witness = detail::matchingFromEdgeIndices(g_, root.witness);
        res.exploredStates = states_;
        return res;
    }

    std::uint64_t states() const { return states_; }

private:
    const WeightedGraph& g_;
    StateSpace space_;
    std::uint64_t budget_;
    std::uint64_t states_ = 0;
    std::unordered_map<EdgeSet, MaxEntry, EdgeSet::Hash> memo_;

    MaxEntry eval(const EdgeSet& s) {
        MaxEntry total{Rational(0), {}};
        for (const auto& comp : space_.components(s)) {
            EdgeSet cs = EdgeSet::empty(g_.numEdges());
            for (int ei : comp) cs.set(ei);
            MaxEntry part = evalComponent(cs);
            total.value += part.value;
            total.witness.insert(total.witness.end(), part.witness.begin(), part.witness.end());
        }
        return total;
    }

    MaxEntry evalComponent(const EdgeSet& s) {
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second;
        if (++states_ > budget_) throwBudget();

        int ci = space_.heaviestClass(s);
        const Rational& w = space_.classWeight(ci);
        auto classEdges = space_.classEdgesIn(s, ci);
        std::vector<std::vector<std::vector<int>>> choices;
        for (const auto& comp : space_.componentsOf(classEdges))
            choices.push_back(space_.maximalMatchingsOf(comp));

        // Collect the per-level choices with their admissible bounds, then
        // expand best-bound-first so pruning bites early.
        struct Option {
            std::vector<int> picked;
            EdgeSet child;
            Rational bound;
        };
        std::vector<Option> options;
        detail::forEachCombination(choices, [&](const std::vector<int>& picked) {
            EdgeSet child = space_.removeTouching(s, picked);
            Rational base = w * Rational(static_cast<long long>(picked.size()));
            options.push_back({picked, child, base + space_.upperBound(child)});
            return true;
        });
        std::sort(options.begin(), options.end(),
                  [](const Option& a, const Option& b) { return a.bound > b.bound; });

        MaxEntry best{Rational(-1), {}};
        bool haveBest = false;
        for (auto& opt : options) {
            if (haveBest && !(opt.bound > best.value)) continue; // admissible prune
            Rational base = w * Rational(static_cast<long long>(opt.picked.size()));
            MaxEntry sub = opt.child.any() ? eval(opt.child) : MaxEntry{Rational(0), {}};
            Rational candidate = base + sub.value;
            if (!haveBest || candidate > best.value) {
                best.value = candidate;
                best.witness = opt.picked;
                best.witness.insert(best.witness.end(), sub.witness.begin(), sub.witness.end());
                haveBest = true;
            }
        }
        memo_.emplace(s, best);
        return best;
    }

    [[noreturn]] void throwBudget() {
        // Best-so-far lower bound: the lexicographic greedy run is a valid
        // greedy matching; full incumbents are not assembled bottom-up.
        GreedyRun run = runGreedy(g_, TieBreaker::lexicographic());
        SolveResult partial;
        partial.optWeight = matchingWeight(g_, run.matching);
        partial.witness = run.matching;
        partial.exploredStates = states_;
        partial.exact = false;
        throw SolveBudgetExceededError(std::move(partial), states_);
    }
};

// Existential search for a greedy matching matching a target vertex or edge.
// Explores only the residual component containing the target; sibling
// components are greedily completed into the witness.
class DecideSearch {
public:
    enum class Target { Vertex, Edge };

    DecideSearch(const WeightedGraph& g, Target target, int a, int b, std::uint64_t budget)
        : g_(g), space_(g), target_(target), va_(a), vb_(b), budget_(budget) {}

    DecisionResult run() {
        DecisionResult res;
        res.answer = search(space_.fullState());
        res.exploredStates = states_;
        if (res.answer) {
            std::sort(witnessEdges_.begin(), witnessEdges_.end());
            Matching m = detail::matchingFromEdgeIndices(g_, witnessEdges_);
            assert(isGreedy(g_, m));
            res.witness = std::move(m);
        }
        return res;
    }

private:
    const WeightedGraph& g_;
    StateSpace space_;
    Target target_;
    int va_, vb_;
    std::uint64_t budget_;
    std::uint64_t states_ = 0;
    std::unordered_map<EdgeSet, bool, EdgeSet::Hash> failed_;
    std::vector<int> pickedStack_;
    std::vector<EdgeSet> siblingStack_;
    std::vector<int> witnessEdges_;

    bool touchesTarget(int ei) const {
        const Edge& e = g_.edge(ei);
        if (target_ == Target::Vertex) return e.u == va_ || e.v == va_;
        return e.u == va_ && e.v == vb_;
    }

    bool targetAlive(const EdgeSet& s) const {
        if (target_ == Target::Edge) {
            auto idx = g_.findEdge(va_, vb_);
            return idx && s.test(*idx);
        }
        for (int ei : g_.incident(va_))
            if (s.test(ei)) return true;
        return false;
    }

    bool isPickSuccess(const std::vector<int>& picked) const {
        for (int ei : picked) {
            const Edge& e = g_.edge(ei);
            if (target_ == Target::Edge) {
                if (e.u == va_ && e.v == vb_) return true;
            } else {
                if (e.u == va_ || e.v == va_) return true;
            }
        }
        return false;
    }

    bool search(const EdgeSet& s) {
        if (!targetAlive(s)) return false;
        if (++states_ > budget_)
            throw BudgetExceededError("decision search exceeded state budget", states_);

        // Narrow to the component holding the target; the rest only needs
        // greedy completion if we succeed. The answer depends on that
        // component alone, so it is also the memo key.
        EdgeSet comp = EdgeSet::empty(g_.numEdges());
        EdgeSet siblings = EdgeSet::empty(g_.numEdges());
        for (const auto& c : space_.components(s)) {
            bool holdsTarget = false;
            for (int ei : c)
                if ((target_ == Target::Edge && g_.edge(ei).u == va_ && g_.edge(ei).v == vb_) ||
                    (target_ == Target::Vertex && (g_.edge(ei).u == va_ || g_.edge(ei).v == va_))) {
                    holdsTarget = true;
                    break;
                }
            for (int ei : c) (holdsTarget ? comp : siblings).set(ei);
        }
        if (failed_.contains(comp)) return false;

        int ci = space_.heaviestClass(comp);
        auto classEdges = space_.classEdgesIn(comp, ci);
        std::vector<std::vector<std::vector<int>>> choices;
        for (const auto& cc : space_.componentsOf(classEdges))
            choices.push_back(space_.maximalMatchingsOf(cc));

        bool found = false;
        detail::forEachCombination(choices, [&](const std::vector<int>& picked) {
            EdgeSet child = space_.removeTouching(comp, picked);
            if (isPickSuccess(picked)) {
                witnessEdges_ = pickedStack_;
                witnessEdges_.insert(witnessEdges_.end(), picked.begin(), picked.end());
                auto rest = space_.greedyComplete(child);
                witnessEdges_.insert(witnessEdges_.end(), rest.begin(), rest.end());
                auto sib = space_.greedyComplete(siblings);
                witnessEdges_.insert(witnessEdges_.end(), sib.begin(), sib.end());
                for (const EdgeSet& dropped : siblingStack_) {
                    auto extra = space_.greedyComplete(dropped);
                    witnessEdges_.insert(witnessEdges_.end(), extra.begin(), extra.end());
                }
                found = true;
                return false;
            }
            pickedStack_.insert(pickedStack_.end(), picked.begin(), picked.end());
            siblingStack_.push_back(siblings);
            if (search(child)) {
                found = true;
                return false;
            }
            siblingStack_.pop_back();
            pickedStack_.resize(pickedStack_.size() - picked.size());
            return true;
        });
        if (!found) failed_.emplace(comp, true);
        return found;
    }
};

} // namespace

SolveResult solveExact(const WeightedGraph& g, std::uint64_t budget, bool withCount) {
    if (g.numEdges() == 0) {
        SolveResult empty;
        if (withCount) empty.distinctGreedyCount = 1;
        return empty;
    }
    ExactSolver solver(g, budget);
    SolveResult res = solver.run();
    if (withCount) res.distinctGreedyCount = countGreedyMatchings(g);
    return res;
}

DecisionResult decideGreedyVertex(const WeightedGraph& g, int v, std::uint64_t budget) {
    if (v < 0 || v >= g.numVertices()) throw PreconditionError("decideGreedyVertex: unknown vertex");
    DecideSearch search(g, DecideSearch::Target::Vertex, v, -1, budget);
    return search.run();
}

DecisionResult decideGreedyEdge(const WeightedGraph& g, int u, int v, std::uint64_t budget) {
    if (u > v) std::swap(u, v);
    if (!g.findEdge(u, v)) throw PreconditionError("decideGreedyEdge: edge not in graph");
    DecideSearch search(g, DecideSearch::Target::Edge, u, v, budget);
    return search.run();
}

} // namespace gm
