// Frontend for a small equation-oriented modeling language.
//
//   param M1, M2;            declared opaque symbols (no occurrences)
//   input p1, p2;            likewise opaque
//   var x, z;                unknowns, in column order
//   eq f1: expr;             equation "expr = 0"
//   eq f2: lhs = rhs;        both sides are scanned
//
// Expressions: identifiers, numeric literals, + - * / ^, parentheses and
// function application. `der` is reserved: der(x) and der(x, k) with an
// integer literal k >= 1 mark derivative occurrences, and nested
// applications sum their orders. Undeclared identifiers are opaque.
// `#` starts a line comment.
#pragma once

#include <string>
#include <vector>

#include "daestruct/sigma.hpp"

namespace daestruct {

struct VarOccurrence {
  int variable;  // 1-based column index into DaeModel::variables
  int order;     // derivative order, >= 0

  friend bool operator==(const VarOccurrence&, const VarOccurrence&) = default;
};

struct DaeEquation {
  std::string name;
  std::vector<VarOccurrence> occurrences;  // in source order, duplicates possible
};

struct DaeModel {
  std::vector<std::string> variables;  // column order
  std::vector<std::string> inputs;
  std::vector<std::string> params;
  std::vector<DaeEquation> equations;  // row order
};

DaeModel parse_model(const std::string& source);

// sigma(i,j) = max derivative order over equation i's occurrences of
// variable j; no occurrence, no entry. Rows/columns are labeled with the
// equation/variable names. Throws NonSquareModel when counts differ.
SignatureMatrix build_signature(const DaeModel& model);

}  // namespace daestruct
