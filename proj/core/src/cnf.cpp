#include "gm/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "gm/errors.hpp"

namespace gm {

std::vector<std::pair<int, int>> CnfFormula::occurrenceCounts() const {
    std::vector<std::pair<int, int>> counts(static_cast<std::size_t>(numVariables) + 1, {0, 0});
    for (const Clause& c : clauses)
        for (int lit : c.literals) {
            auto& [pos, neg] = counts[static_cast<std::size_t>(std::abs(lit))];
            (lit > 0 ? pos : neg) += 1;
        }
    return counts;
}

void CnfFormula::validate(int maxClauseSize) const {
    if (numVariables < 0) throw ValidationError("negative variable count");
    for (const Clause& c : clauses) {
        if (c.literals.empty()) throw ValidationError("empty clause");
        if (static_cast<int>(c.literals.size()) > maxClauseSize)
            throw ValidationError("clause with more than " + std::to_string(maxClauseSize) +
                                  " literals");
        std::vector<int> vars;
        for (int lit : c.literals) {
            int v = std::abs(lit);
            if (v < 1 || v > numVariables)
                throw ValidationError("literal out of range: " + std::to_string(lit));
            vars.push_back(v);
        }
        std::sort(vars.begin(), vars.end());
        if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
            throw ValidationError("clause mentions a variable twice");
    }
}

CnfFormula parseDimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;
    CnfFormula f;
    bool sawHeader = false;
    int declaredClauses = -1;
    std::vector<int> pending;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (!sawHeader) {
            std::string p, cnf;
            if (!(ls >> p >> cnf >> f.numVariables >> declaredClauses) || p != "p" || cnf != "cnf")
                throw ParseError("expected 'p cnf <vars> <clauses>'", lineNo);
            sawHeader = true;
            continue;
        }
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (pending.empty()) throw ParseError("empty clause", lineNo);
                f.clauses.push_back({pending});
                pending.clear();
            } else {
                pending.push_back(lit);
            }
        }
        if (!ls.eof()) throw ParseError("bad token in clause", lineNo);
    }
    if (!sawHeader) throw ParseError("missing 'p cnf' header");
    if (!pending.empty()) throw ParseError("clause not terminated by 0");
    if (declaredClauses >= 0 && declaredClauses != f.numClauses())
        throw ParseError("header declares " + std::to_string(declaredClauses) + " clauses, found " +
                         std::to_string(f.numClauses()));
    try {
        f.validate();
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
    return f;
}

std::string writeDimacs(const CnfFormula& f) {
    std::string out = "p cnf " + std::to_string(f.numVariables) + " " +
                      std::to_string(f.numClauses()) + "\n";
    for (const Clause& c : f.clauses) {
        for (int lit : c.literals) out += std::to_string(lit) + " ";
        out += "0\n";
    }
    return out;
}

NormalizedFormula normalize(const CnfFormula& f) {
    f.validate();
    NormalizedFormula nf;
    nf.originalVariables = f.numVariables;

    auto counts = f.occurrenceCounts();
    for (int v = 1; v <= f.numVariables; ++v) {
        auto [pos, neg] = counts[static_cast<std::size_t>(v)];
        if (pos + neg > 3)
            throw PreconditionError("variable x" + std::to_string(v) + " occurs " +
                                    std::to_string(pos + neg) + " times (max 3)");
    }

    // Pure-literal elimination to a fixpoint; removing clauses can turn
    // further variables pure.
    std::vector<Clause> clauses = f.clauses;
    std::vector<int> state(static_cast<std::size_t>(f.numVariables) + 1, 0); // 0 live, +1/-1 fixed
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::pair<int, int>> occ(static_cast<std::size_t>(f.numVariables) + 1, {0, 0});
        for (const Clause& c : clauses)
            for (int lit : c.literals) {
                auto& [pos, neg] = occ[static_cast<std::size_t>(std::abs(lit))];
                (lit > 0 ? pos : neg) += 1;
            }
        for (int v = 1; v <= f.numVariables; ++v) {
            if (state[static_cast<std::size_t>(v)] != 0) continue;
            auto [pos, neg] = occ[static_cast<std::size_t>(v)];
            if (pos + neg == 0 || (pos > 0 && neg > 0)) continue;
            state[static_cast<std::size_t>(v)] = pos > 0 ? 1 : -1;
            nf.fixedAssignments.push_back({v, pos > 0});
            std::vector<Clause> kept;
            for (const Clause& c : clauses) {
                bool satisfied = false;
                for (int lit : c.literals)
                    if (std::abs(lit) == v) satisfied = true; // pure: every occurrence satisfies
                if (satisfied)
                    ++nf.removedSatisfiedClauses;
                else
                    kept.push_back(c);
            }
            clauses = std::move(kept);
            changed = true;
            break;
        }
    }

    // Survivors occur in both polarities. Rename each surviving variable to
    // a dense index and flip the (2 positive, 1 negative) pattern so every
    // 3-occurrence variable matches (1 positive, 2 negative).
    std::vector<std::pair<int, int>> occ(static_cast<std::size_t>(f.numVariables) + 1, {0, 0});
    for (const Clause& c : clauses)
        for (int lit : c.literals) {
            auto& [pos, neg] = occ[static_cast<std::size_t>(std::abs(lit))];
            (lit > 0 ? pos : neg) += 1;
        }
    std::vector<int> newIndex(static_cast<std::size_t>(f.numVariables) + 1, 0);
    std::vector<bool> flipped(static_cast<std::size_t>(f.numVariables) + 1, false);
    nf.sourceLiteral.push_back(0); // index 0 unused
    int next = 0;
    for (int v = 1; v <= f.numVariables; ++v) {
        auto [pos, neg] = occ[static_cast<std::size_t>(v)];
        if (pos + neg == 0) continue;
        newIndex[static_cast<std::size_t>(v)] = ++next;
        flipped[static_cast<std::size_t>(v)] = pos > neg;
        nf.sourceLiteral.push_back(flipped[static_cast<std::size_t>(v)] ? -v : v);
    }
    nf.formula.numVariables = next;
    for (const Clause& c : clauses) {
        Clause nc;
        for (int lit : c.literals) {
            int v = std::abs(lit);
            int idx = newIndex[static_cast<std::size_t>(v)];
            bool positive = lit > 0;
            if (flipped[static_cast<std::size_t>(v)]) positive = !positive;
            nc.literals.push_back(positive ? idx : -idx);
        }
        nf.formula.clauses.push_back(std::move(nc));
    }
    return nf;
}

std::vector<bool> translateAssignment(const NormalizedFormula& nf, const std::vector<bool>& tau) {
    std::vector<bool> out(static_cast<std::size_t>(nf.originalVariables) + 1, false);
    for (int v = 1; v <= nf.formula.numVariables; ++v) {
        int src = nf.sourceLiteral[static_cast<std::size_t>(v)];
        bool value = tau[static_cast<std::size_t>(v)];
        out[static_cast<std::size_t>(std::abs(src))] = src > 0 ? value : !value;
    }
    for (auto [v, value] : nf.fixedAssignments) out[static_cast<std::size_t>(v)] = value;
    return out;
}

int satisfiedClauses(const CnfFormula& f, const std::vector<bool>& assignment) {
    int count = 0;
    for (const Clause& c : f.clauses)
        for (int lit : c.literals) {
            bool value = assignment[static_cast<std::size_t>(std::abs(lit))];
            if ((lit > 0) == value) {
                ++count;
                break;
            }
        }
    return count;
}

MaxSatResult bruteForceMaxSat(const CnfFormula& f) {
    if (f.numVariables > 24) throw PreconditionError("bruteForceMaxSat limited to 24 variables");
    int n = f.numVariables;
    std::vector<std::uint32_t> posMask(f.clauses.size(), 0), negMask(f.clauses.size(), 0);
    for (std::size_t ci = 0; ci < f.clauses.size(); ++ci)
        for (int lit : f.clauses[ci].literals) {
            std::uint32_t bit = 1u << (std::abs(lit) - 1);
            (lit > 0 ? posMask[ci] : negMask[ci]) |= bit;
        }
    MaxSatResult best;
    best.best = -1;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int sat = 0;
        for (std::size_t ci = 0; ci < f.clauses.size(); ++ci)
            if ((posMask[ci] & mask) != 0 || (negMask[ci] & ~mask) != 0) ++sat;
        if (sat > best.best) {
            best.best = sat;
            best.assignment.assign(static_cast<std::size_t>(n) + 1, false);
            for (int v = 1; v <= n; ++v)
                best.assignment[static_cast<std::size_t>(v)] = (mask >> (v - 1)) & 1;
        }
    }
    if (best.best < 0) {
        best.best = 0;
        best.assignment.assign(static_cast<std::size_t>(n) + 1, false);
    }
    return best;
}

} // namespace gm
