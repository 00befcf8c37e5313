#pragma once

#include <stdexcept>
#include <string>

namespace eig {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched vector/matrix dimensions.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// Shift lambda is not above the top eigenvalue (B not positive definite).
class InvalidShiftError : public Error {
public:
    explicit InvalidShiftError(const std::string& msg) : Error(msg) {}
};

/// Malformed input file (carries 1-based line number when known).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line = -1)
        : Error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// Iteration budget exhausted; usually signals gap ~ 0.
class BudgetExceededError : public Error {
public:
    explicit BudgetExceededError(const std::string& msg) : Error(msg) {}
};

} // namespace eig
