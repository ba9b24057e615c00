#pragma once

#include <stdexcept>
#include <string>

namespace wsqopt {

/// Malformed input: bad dimensions, out-of-range indices or parameters.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A solver could not produce a valid answer for a well-formed input.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The QP relaxation was handed a matrix with a negative eigenvalue.
class NotConvex : public SolverError {
public:
    explicit NotConvex(double min_eigenvalue)
        : SolverError("quadratic form is not positive semidefinite (min eigenvalue " +
                      std::to_string(min_eigenvalue) + ")"),
          min_eigenvalue_(min_eigenvalue) {}

    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

class IterationLimit : public SolverError {
public:
    using SolverError::SolverError;
};

/// Every candidate correlator is zero, so no elimination direction exists.
class AmbiguousElimination : public SolverError {
public:
    using SolverError::SolverError;
};

/// Problem too large for exhaustive enumeration or a dense statevector.
class CapacityExceeded : public SolverError {
public:
    using SolverError::SolverError;
};

}  // namespace wsqopt
