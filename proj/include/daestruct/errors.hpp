// Error types shared across the library. All index values carried in
// errors and witnesses are 1-based, matching the file formats and the
// public API.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace daestruct {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- signature matrix construction and I/O ---

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class DuplicateEntry : public Error {
public:
  using Error::Error;
};

class NegativeOrder : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

class SizeMismatch : public Error {
public:
  using Error::Error;
};

// --- DAE source frontend ---

class SyntaxError : public Error {
public:
  SyntaxError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

class DerOfNonVariable : public Error {
public:
  DerOfNonVariable(int line, int column, const std::string& target)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
              ": der applied to non-variable '" + target + "'"),
        line(line),
        column(column),
        target(target) {}
  int line;
  int column;
  std::string target;
};

class NonPositiveDerOrder : public Error {
public:
  NonPositiveDerOrder(int line, int column, long long order)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
              ": derivative order must be >= 1, got " + std::to_string(order)),
        line(line),
        column(column) {}
  int line;
  int column;
};

class NonSquareModel : public Error {
public:
  NonSquareModel(int equations, int variables)
      : Error("model is not square: " + std::to_string(equations) + " equations, " +
              std::to_string(variables) + " variables"),
        equations(equations),
        variables(variables) {}
  int equations;
  int variables;
};

// --- structural analysis ---

// Hall-condition violator certifying that no complete transversal exists:
// a set of rows whose union of finite-entry columns is smaller than the set.
// cols is exactly the neighborhood of rows, both sorted ascending.
struct IllPosedWitness {
  std::vector<int> rows;
  std::vector<int> cols;

  friend bool operator==(const IllPosedWitness&, const IllPosedWitness&) = default;
};

class StructurallyIllPosed : public Error {
public:
  explicit StructurallyIllPosed(IllPosedWitness w)
      : Error("structurally ill-posed: " + std::to_string(w.rows.size()) +
              " rows share only " + std::to_string(w.cols.size()) + " columns"),
        witness(std::move(w)) {}
  IllPosedWitness witness;
};

class TooLarge : public Error {
public:
  using Error::Error;
};

class NotPerfectlyMatched : public Error {
public:
  using Error::Error;
};

class NotOptimalTransversal : public Error {
public:
  using Error::Error;
};

// --- benchmark fitting ---

class InsufficientPoints : public Error {
public:
  using Error::Error;
};

class NonPositiveTime : public Error {
public:
  using Error::Error;
};

// Violation of an internal invariant that should be unreachable; the CLI
// maps this to its own exit code to distinguish bugs from bad input.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace daestruct
