#ifndef GM_EXACT_HPP
#define GM_EXACT_HPP

#include <cstdint>
#include <optional>

#include "gm/errors.hpp"
#include "gm/graph.hpp"

namespace gm {

inline constexpr std::uint64_t kDefaultSolveBudget = 5'000'000;

struct SolveResult {
    Rational optWeight;
    Matching witness;
    std::uint64_t exploredStates = 0;
    std::optional<std::uint64_t> distinctGreedyCount;
    /// False when a budget abort downgraded optWeight to a lower bound.
    bool exact = true;
};

/// Thrown when the state budget runs out; carries the best greedy matching
/// found so far (a valid lower bound, exact == false).
class SolveBudgetExceededError : public BudgetExceededError {
public:
    SolveBudgetExceededError(SolveResult partial, std::uint64_t explored)
        : BudgetExceededError("exact solve exceeded state budget", explored),
          partial_(std::move(partial)) {}
    const SolveResult& partial() const { return partial_; }

private:
    SolveResult partial_;
};

/// Maximum weight greedy matching, exact. DFS over tie-break choices with
/// memoization on canonical residual edge sets, per-component decomposition,
/// and branch-and-bound pruning with an admissible per-weight-class bound.
SolveResult solveExact(const WeightedGraph& g, std::uint64_t budget = kDefaultSolveBudget,
                       bool withCount = false);

struct DecisionResult {
    bool answer = false;
    std::optional<Matching> witness; // a greedy matching realizing the answer
    std::uint64_t exploredStates = 0;
};

/// Is there a greedy matching that matches vertex v?
DecisionResult decideGreedyVertex(const WeightedGraph& g, int v,
                                  std::uint64_t budget = kDefaultSolveBudget);

/// Is there a greedy matching containing edge (u, v)?
DecisionResult decideGreedyEdge(const WeightedGraph& g, int u, int v,
                                std::uint64_t budget = kDefaultSolveBudget);

} // namespace gm

#endif
