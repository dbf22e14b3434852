#include "gm/enumerate.hpp"

#include <algorithm>

#include "gm/errors.hpp"
#include "state_space.hpp"

namespace gm {

using detail::EdgeSet;
using detail::StateSpace;

namespace {

constexpr std::uint64_t kSaturated = UINT64_MAX;

std::uint64_t satAdd(std::uint64_t a, std::uint64_t b) {
    return a > kSaturated - b ? kSaturated : a + b;
}
std::uint64_t satMul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > kSaturated / b ? kSaturated : a * b;
}

class Counter {
public:
    explicit Counter(const StateSpace& space) : space_(space) {}

    std::uint64_t count(const EdgeSet& s) {
        std::uint64_t total = 1;
        for (const auto& comp : space_.components(s)) {
            EdgeSet cs = EdgeSet::empty(space_.graph().numEdges());
            for (int ei : comp) cs.set(ei);
            total = satMul(total, countComponent(cs));
        }
        return total;
    }

private:
    const StateSpace& space_;
    std::unordered_map<EdgeSet, std::uint64_t, EdgeSet::Hash> memo_;

    std::uint64_t countComponent(const EdgeSet& s) {
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second;
        int ci = space_.heaviestClass(s);
        auto classEdges = space_.classEdgesIn(s, ci);
        std::vector<std::vector<std::vector<int>>> choices;
        for (const auto& comp : space_.componentsOf(classEdges))
            choices.push_back(space_.maximalMatchingsOf(comp));
        std::uint64_t total = 0;
        detail::forEachCombination(choices, [&](const std::vector<int>& picked) {
            EdgeSet child = space_.removeTouching(s, picked);
            total = satAdd(total, child.any() ? count(child) : 1);
            return true;
        });
        memo_.emplace(s, total);
        return total;
    }
};

// Distinct greedy matchings of a state, each a sorted vector of edge
// indices. Distinct choices at one class level always yield distinct final
// matchings (the class-level picks are exactly the final matching's edges of
// that weight), so cross-branch deduplication is a safety net rather than a
// need; it is kept because it is cheap at desk scale.
class Collector {
public:
    Collector(const StateSpace& space, std::uint64_t limit) : space_(space), limit_(limit) {}

    std::vector<std::vector<int>> collect(const EdgeSet& s) {
        std::vector<std::vector<std::vector<int>>> perComponent;
        for (const auto& comp : space_.components(s)) {
            EdgeSet cs = EdgeSet::empty(space_.graph().numEdges());
            for (int ei : comp) cs.set(ei);
            perComponent.push_back(collectComponent(cs));
        }
        if (perComponent.empty()) return {{}};
        std::vector<std::vector<int>> out;
        detail::forEachCombination(perComponent, [&](const std::vector<int>& combined) {
            std::vector<int> m = combined;
            std::sort(m.begin(), m.end());
            out.push_back(std::move(m));
            checkLimit(out.size());
            return true;
        });
        return out;
    }

private:
    const StateSpace& space_;
    std::uint64_t limit_;
    std::unordered_map<EdgeSet, std::vector<std::vector<int>>, EdgeSet::Hash> memo_;

    void checkLimit(std::size_t n) const {
        if (n > limit_)
            throw LimitExceededError("greedy matching enumeration exceeded limit", n);
    }

    std::vector<std::vector<int>> collectComponent(const EdgeSet& s) {
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second;
        int ci = space_.heaviestClass(s);
        auto classEdges = space_.classEdgesIn(s, ci);
        std::vector<std::vector<std::vector<int>>> choices;
        for (const auto& comp : space_.componentsOf(classEdges))
            choices.push_back(space_.maximalMatchingsOf(comp));
        std::vector<std::vector<int>> results;
        detail::forEachCombination(choices, [&](const std::vector<int>& picked) {
            EdgeSet child = space_.removeTouching(s, picked);
            if (!child.any()) {
                std::vector<int> m = picked;
                std::sort(m.begin(), m.end());
                results.push_back(std::move(m));
            } else {
                for (const auto& rest : collect(child)) {
                    std::vector<int> m = picked;
                    m.insert(m.end(), rest.begin(), rest.end());
                    std::sort(m.begin(), m.end());
                    results.push_back(std::move(m));
                }
            }
            checkLimit(results.size());
            return true;
        });
        std::sort(results.begin(), results.end());
        results.erase(std::unique(results.begin(), results.end()), results.end());
        memo_.emplace(s, results);
        return results;
    }
};

} // namespace

std::uint64_t countGreedyMatchings(const WeightedGraph& g) {
    if (g.numEdges() == 0) return 1;
    StateSpace space(g);
    Counter counter(space);
    return counter.count(space.fullState());
}

std::vector<Matching> enumerateGreedyMatchings(const WeightedGraph& g, std::uint64_t limit) {
    if (g.numEdges() == 0) return {Matching{}};
    StateSpace space(g);
    std::uint64_t total = countGreedyMatchings(g);
    if (total > limit)
        throw LimitExceededError("greedy matching enumeration exceeded limit", total);
    Collector collector(space, limit);
    std::vector<Matching> out;
    for (const auto& idx : collector.collect(space.fullState()))
        out.push_back(detail::matchingFromEdgeIndices(g, idx));
    std::sort(out.begin(), out.end(), [](const Matching& a, const Matching& b) { return a.edges < b.edges; });
    return out;
}

} // namespace gm
