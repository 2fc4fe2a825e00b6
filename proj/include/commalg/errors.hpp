#pragma once

#include <stdexcept>
#include <string>

namespace commalg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

class FieldMismatchError : public Error {
 public:
  explicit FieldMismatchError(const std::string& what) : Error(what) {}
};

/// Two named generators fail to commute; carries a basis column where
/// the commutator is nonzero.
class NonCommutingError : public Error {
 public:
  NonCommutingError(std::string a, std::string b, int column)
      : Error("generators '" + a + "' and '" + b +
              "' do not commute (witness column " + std::to_string(column) + ")"),
        first(std::move(a)),
        second(std::move(b)),
        witnessColumn(column) {}
  std::string first;
  std::string second;
  int witnessColumn;
};

class GlueError : public Error {
 public:
  enum class Kind { IdealsIntersect, NotIsomorphic, BadSpec };
  GlueError(Kind k, const std::string& what) : Error(what), kind(k) {}
  Kind kind;
};

class NotFaithfulError : public Error {
 public:
  explicit NotFaithfulError(const std::string& what) : Error(what) {}
};

class LengthTooLargeError : public Error {
 public:
  explicit LengthTooLargeError(const std::string& what) : Error(what) {}
};

class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

class FieldTooSmallError : public Error {
 public:
  explicit FieldTooSmallError(const std::string& what) : Error(what) {}
};

class NotFiniteLengthError : public Error {
 public:
  explicit NotFiniteLengthError(const std::string& what) : Error(what) {}
};

class IllFormedEndoError : public Error {
 public:
  explicit IllFormedEndoError(const std::string& what) : Error(what) {}
};

class UnknownFamilyError : public Error {
 public:
  explicit UnknownFamilyError(const std::string& what) : Error(what) {}
};

/// Diagram text errors with a precise location.
class DiagramError : public Error {
 public:
  enum class Kind { Syntax, DuplicateEdge, UnknownName, Cycle };
  DiagramError(Kind k, int line, int col, const std::string& what)
      : Error("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        kind(k),
        line(line),
        col(col) {}
  Kind kind;
  int line;
  int col;
};

}  // namespace commalg
