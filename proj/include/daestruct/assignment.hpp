// Maximum-value transversal of a signature matrix: a bijection between
// rows and columns using only finite entries, maximizing the entry sum.
// Solved as a linear assignment problem with shortest augmenting paths in
// exact integer arithmetic.
#pragma once

#include <cstdint>
#include <vector>

#include "daestruct/sigma.hpp"

namespace daestruct {

struct Assignment {
  std::vector<int> row_to_col;  // position i-1 holds the column matched to row i (1-based)
  std::vector<int> col_to_row;  // inverse
  std::int64_t value = 0;       // sum of sigma over the matched pairs

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Assignment plus the terminal dual variables of the internal minimization
// (cost(i,j) = max_order - sigma(i,j), all costs >= 0). At termination:
//   row_duals[i-1] + col_duals[j-1] <= cost(i,j)   for every entry (i,j)
// with equality on every assigned pair (reduced-cost optimality).
struct MvtSolution {
  Assignment assignment;
  std::vector<std::int64_t> row_duals;
  std::vector<std::int64_t> col_duals;
};

// Throws StructurallyIllPosed (with a Hall violator extracted from the
// failed augmentation's reachable set) when no complete transversal exists.
// Deterministic; ties between equal-value augmenting choices prefer the
// lowest column index.
Assignment max_value_transversal(const SignatureMatrix& m);
MvtSolution max_value_transversal_detailed(const SignatureMatrix& m);

// Exhaustive oracle over all transversals, n <= 10 (throws TooLarge above).
// Keeps the first maximum in row-major, ascending-column search order, i.e.
// the lexicographically smallest optimal row_to_col. Throws
// StructurallyIllPosed (smallest, then lexicographically first, violator)
// when no complete transversal exists.
Assignment brute_force_mvt(const SignatureMatrix& m);

}  // namespace daestruct
