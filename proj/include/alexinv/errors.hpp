#pragma once

#include <stdexcept>
#include <string>

namespace alexinv {

/// Malformed input: bad dimensions, out-of-range indices, unparsable files.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation would exceed the configured resource budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two routes that must agree did not.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Casimir eigenvalues cannot separate the requested isotypic component.
class AmbiguousDecomposition : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace alexinv
