#ifndef GM_ERRORS_HPP
#define GM_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gm {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (graph files, matching files, DIMACS, configs).
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Structural invariant violated (bad matching, bad graph, bad formula).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Exact arithmetic left the representable range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A state-bounded search ran out of budget. Callers that can produce a
/// partial result attach it through the subclass in exact.hpp.
class BudgetExceededError : public Error {
public:
    explicit BudgetExceededError(const std::string& what, std::uint64_t explored = 0)
        : Error(what), explored_(explored) {}
    std::uint64_t exploredStates() const { return explored_; }

private:
    std::uint64_t explored_;
};

/// Enumeration produced more distinct results than the caller allowed.
class LimitExceededError : public Error {
public:
    LimitExceededError(const std::string& what, std::uint64_t count)
        : Error(what), count_(count) {}
    /// Number of distinct matchings known when the limit tripped.
    std::uint64_t partialCount() const { return count_; }

private:
    std::uint64_t count_;
};

} // namespace gm

#endif
