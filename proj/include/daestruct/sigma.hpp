// Sparse signature matrix: sigma(i,j) is the highest derivative order of
// variable j in equation i, and "absent" (no entry) stands for minus
// infinity. Entries are kept sparse; no sentinel values are stored.
//
// Convention used across the library: row/column indices are 1-based in
// all public values (matching the file formats), while std::vector fields
// are indexed positionally from 0, position k corresponding to index k+1.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "daestruct/errors.hpp"

namespace daestruct {

struct SigmaTriplet {
  int row;   // 1-based
  int col;   // 1-based
  std::int64_t order;

  friend bool operator==(const SigmaTriplet&, const SigmaTriplet&) = default;
};

class SignatureMatrix {
public:
  // Validates indices in [1,n], orders >= 0, and (row,col) uniqueness.
  static SignatureMatrix from_triplets(int n, const std::vector<SigmaTriplet>& entries);
  static SignatureMatrix from_triplets(int n, const std::vector<SigmaTriplet>& entries,
                                       std::vector<std::string> row_labels,
                                       std::vector<std::string> col_labels);

  int size() const { return n_; }
  int nnz() const { return nnz_; }

  // Highest derivative order at (i,j), or nullopt when the entry is absent.
  std::optional<std::int64_t> order(int i, int j) const;

  // Row i's entries as (column, order), sorted by column. Columns are 1-based.
  const std::vector<std::pair<int, std::int64_t>>& row(int i) const;

  // All entries sorted by (row, col).
  std::vector<SigmaTriplet> triplets() const;

  // Largest finite order; 0 for a matrix with no entries.
  std::int64_t max_order() const { return max_order_; }

  bool has_labels() const { return !row_labels_.empty(); }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  friend bool operator==(const SignatureMatrix& a, const SignatureMatrix& b);

private:
  SignatureMatrix() = default;

  int n_ = 0;
  int nnz_ = 0;
  std::int64_t max_order_ = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> rows_;  // [i-1] -> sorted (col, order)
  std::vector<std::string> row_labels_;  // empty when unlabeled, else size n
  std::vector<std::string> col_labels_;
};

// Row/column permutation. row_perm[k] is the original row placed at
// permuted position k+1 (both 1-based values).
struct Permutation {
  std::vector<int> row_perm;
  std::vector<int> col_perm;

  static Permutation identity(int n);
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

// Permuted copy: result(i,j) = m(row_perm[i-1], col_perm[j-1]); labels move
// along. Throws SizeMismatch when the permutation does not fit m, Error when
// it is not a bijection.
SignatureMatrix permute(const SignatureMatrix& m, const Permutation& p);

// Sigma exchange format.
//
//   # comment                      (ignored, as are blank lines)
//   n <N>                          (first directive; `n <R> <C>` is reserved
//                                   for rectangular data and accepted only
//                                   when R == C)
//   rows <name-1> ... <name-N>     (optional)
//   cols <name-1> ... <name-N>     (optional)
//   s <i> <j> <order>              (one entry, 1-based, order >= 0)
//
// The writer canonicalizes: entries sorted by (row, col), labels emitted
// when present, no comments.
SignatureMatrix read_sigma_file(const std::string& text);
std::string write_sigma_file(const SignatureMatrix& m);

}  // namespace daestruct
