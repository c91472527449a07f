#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kripkelab {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

/// A node, set id, or grid coordinate outside its container.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A relation or node set without the required shape (not a partial order,
/// not downward-closed, ...).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Enumeration or table growth would exceed the configured element budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, unsigned rank)
      : Error(what), rank_(rank) {}

  unsigned rank() const noexcept { return rank_; }

 private:
  unsigned rank_;
};

class MonotonicityError : public Error {
 public:
  using Error::Error;
};

/// An extent references an id that is not in the universe table.
class ClosureError : public Error {
 public:
  using Error::Error;
};

/// A transition between nodes that are not ordered.
class OrderError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at column " + std::to_string(position + 1)),
        position_(position) {}

  /// Zero-based offset into the input text.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Wrong free-variable shape: open sentence where a closed one is needed,
/// or stray free variables in a separation/collection formula.
class ArityError : public Error {
 public:
  using Error::Error;
};

class EmptyRestrictionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at a node outside the restricted node set.
class DomainError : public Error {
 public:
  using Error::Error;
};

class IncompatibleError : public Error {
 public:
  using Error::Error;
};

class NoRoomError : public Error {
 public:
  using Error::Error;
};

/// The finite grid ran out of cells; an artifact of truncating N to K.
class GridTooSmallError : public Error {
 public:
  using Error::Error;
};

class SaturationError : public Error {
 public:
  using Error::Error;
};

}  // namespace kripkelab
