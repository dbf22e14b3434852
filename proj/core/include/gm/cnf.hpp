#ifndef GM_CNF_HPP
#define GM_CNF_HPP

#include <string>
#include <string_view>
#include <vector>

#include "gm/graph.hpp"

namespace gm {

/// Clause as signed 1-based variable indexes; +i is the positive literal of
/// variable i, -i its negation. Clauses hold 1..3 distinct variables and
/// never a variable together with its own negation.
struct Clause {
    std::vector<int> literals;
};

struct CnfFormula {
    int numVariables = 0;
    std::vector<Clause> clauses;

    int numClauses() const { return static_cast<int>(clauses.size()); }
    /// Occurrence counts: result[v] = {positive, negative} for v in 1..n.
    std::vector<std::pair<int, int>> occurrenceCounts() const;
    void validate(int maxClauseSize = 3) const;
};

/// DIMACS CNF subset: optional 'c' comment lines, one 'p cnf <vars>
/// <clauses>' header, clauses as 0-terminated signed integers.
CnfFormula parseDimacs(std::string_view text);
std::string writeDimacs(const CnfFormula& f);

/// Canonical occurrence-pattern form: no variable occurs in one polarity
/// only, every variable occurs at most 3 times, a 3-occurrence variable
/// occurs once positively and twice negatively, a 2-occurrence variable
/// once per polarity.
struct NormalizedFormula {
    CnfFormula formula;
    int originalVariables = 0;
    /// sourceLiteral[v] for v in 1..formula.numVariables: the signed
    /// original literal the new variable v stands for (e.g. -3 means
    /// "v is true iff x3 is false").
    std::vector<int> sourceLiteral;
    /// Variables fixed by pure-literal elimination: (original var, value).
    std::vector<std::pair<int, bool>> fixedAssignments;
    /// Clauses removed as trivially satisfied by the elimination.
    int removedSatisfiedClauses = 0;
};

/// Applies pure-literal elimination to a fixpoint, then flips the polarity
/// of variables whose pattern is (2 positive, 1 negative) by renaming.
/// Throws PreconditionError if a variable occurs more than 3 times.
NormalizedFormula normalize(const CnfFormula& f);

/// Lifts an assignment of the normalized variables back to the original
/// variable space (eliminated variables take their fixed values, unused
/// ones default to false).
std::vector<bool> translateAssignment(const NormalizedFormula& nf, const std::vector<bool>& tau);

int satisfiedClauses(const CnfFormula& f, const std::vector<bool>& assignment);

struct MaxSatResult {
    int best = 0;
    std::vector<bool> assignment; // index 0 unused; [1..n]
};

/// Exact MAXSAT by scanning all 2^n assignments; n <= 24.
MaxSatResult bruteForceMaxSat(const CnfFormula& f);

} // namespace gm

#endif
