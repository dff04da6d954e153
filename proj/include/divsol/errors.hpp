#pragma once

#include <stdexcept>
#include <string>

namespace divsol {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Unparseable files, out-of-range indices, parameter values outside their contract.
class MalformedInputError : public Error {
public:
    using Error::Error;
};

// The requested objects do not exist (disconnected graph asked for spanning
// trees, no k-edge forest, no size-k solution at all).
class NoSolutionError : public Error {
public:
    using Error::Error;
};

// A configured search budget (color-set cap, tuple cap, trial schedule) was
// exhausted before an answer could be certified.
class BudgetExceededError : public Error {
public:
    using Error::Error;
};

// A consistency check on the library's own output failed. Never expected.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace divsol
