#pragma once

#include <stdexcept>
#include <string>

namespace fracsteady {

// Base class for every failure the library reports on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Domain construction rejected (a >= b, too few nodes, ...).
class InvalidDomainError : public Error {
public:
  using Error::Error;
};

// Harvesting profile rejected (negative entry, all-zero vector, ...).
class InvalidProfileError : public Error {
public:
  using Error::Error;
};

// Only the one-dimensional operator is implemented.
class UnsupportedDimensionError : public Error {
public:
  using Error::Error;
};

// Dense factorization or linear solve did not reach the required residual.
class SingularOperatorError : public Error {
public:
  using Error::Error;
};

// Generic precondition violation on an operation argument.
class InvalidArgumentError : public Error {
public:
  using Error::Error;
};

// Inverse power iteration exhausted its iteration budget.
class EigensolverFailureError : public Error {
public:
  using Error::Error;
};

// Threshold construction requires lambda > lambda1.
class TheoremHypothesisError : public Error {
public:
  using Error::Error;
};

// The gap function phi1 - theta*e failed to stay above alpha*phi1.
class DegenerateGapError : public Error {
public:
  using Error::Error;
};

// monotone_solve was handed an unordered (lower, upper) pair.
class InvalidPairError : public Error {
public:
  using Error::Error;
};

// Iteration cap reached before the stopping test was met.
class NonConvergenceError : public Error {
public:
  using Error::Error;
};

// Malformed or inconsistent run configuration (CLI exit code 2).
class ConfigError : public Error {
public:
  using Error::Error;
};

// Filesystem failure while emitting artifacts.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace fracsteady
