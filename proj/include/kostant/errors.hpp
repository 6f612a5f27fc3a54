#pragma once

#include <stdexcept>
#include <string>

namespace kostant {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown (family, rank) pair for a catalog diagram.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// Malformed diagram, active set or configuration input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Root/coroot/Weyl operations requested on a graph that is not a finite Dynkin diagram.
class NonCrystallographicError : public Error {
 public:
  using Error::Error;
};

/// Root closure exceeded its cap.
class NonFiniteTypeError : public Error {
 public:
  using Error::Error;
};

/// Weyl group larger than the oracle cap.
class OracleTooLargeError : public Error {
 public:
  using Error::Error;
};

class IllegalMoveError : public Error {
 public:
  IllegalMoveError(const std::string& what, int step, int vertex)
      : Error(what), step_(step), vertex_(vertex) {}

  /// Zero-based index of the offending move in its sequence (-1 when not applicable).
  int step() const noexcept { return step_; }
  int vertex() const noexcept { return vertex_; }

 private:
  int step_;
  int vertex_;
};

class GraphTooLargeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a partial function (e.g. element not in W^J).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations disagreed. Always a bug or a counterexample.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class DegenerateDatumError : public Error {
 public:
  using Error::Error;
};

}  // namespace kostant
