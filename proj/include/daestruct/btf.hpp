// Dulmage-Mendelsohn decomposition and fine block triangular form of a
// sparse pattern: connected components, maximum matching, the coarse
// partition into under-, well- and over-determined parts, and the fine
// decomposition of the well-determined part into irreducible diagonal
// blocks in block upper triangular order.
#pragma once

#include <vector>

#include "daestruct/sigma.hpp"

namespace daestruct {

// Bipartite pattern (rows = equations, columns = variables). Derived from a
// SignatureMatrix's pattern or built directly; not edited afterwards.
class IncidenceGraph {
public:
  IncidenceGraph(int n_rows, int n_cols, const std::vector<std::pair<int, int>>& edges);
  static IncidenceGraph from_pattern(const SignatureMatrix& m);

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  int n_edges() const { return n_edges_; }
  const std::vector<int>& row_adj(int i) const { return row_adj_[i - 1]; }  // sorted columns
  const std::vector<int>& col_adj(int j) const { return col_adj_[j - 1]; }  // sorted rows

private:
  int n_rows_;
  int n_cols_;
  int n_edges_ = 0;
  std::vector<std::vector<int>> row_adj_;
  std::vector<std::vector<int>> col_adj_;
};

// Connected components of the bipartite graph; isolated rows/columns form
// singleton components. Ordered by smallest row index, components without
// rows last by smallest column index; members sorted ascending.
struct Component {
  std::vector<int> rows;
  std::vector<int> cols;

  friend bool operator==(const Component&, const Component&) = default;
};
std::vector<Component> connected_components(const IncidenceGraph& g);

// Maximum-cardinality matching (Hopcroft-Karp). 0 = unmatched.
struct Matching {
  std::vector<int> row_mate;  // position i-1: column matched to row i, or 0
  std::vector<int> col_mate;  // position j-1: row matched to column j, or 0
  int size = 0;
};
Matching maximum_matching(const IncidenceGraph& g);

// Coarse decomposition with respect to a maximum matching, by alternating-
// path reachability. V* collects nodes reachable from some unmatched row
// (F-node), H* from some unmatched column (X-node), S* the rest; a node is
// trivially reachable from itself. All sets sorted ascending.
struct CoarseDecomposition {
  std::vector<int> HF, SF, VF;  // rows
  std::vector<int> HX, SX, VX;  // columns
};
CoarseDecomposition coarse_decompose(const IncidenceGraph& g, const Matching& m);

// Fine BTF of a square, perfectly matched pattern. blocks are in topological
// order (ties broken by smallest original row index); in permuted
// coordinates every entry satisfies block_of_row <= block_of_col, each
// diagonal block is square and irreducible, and the matched pairs lie on
// the block diagonals.
struct IndexRange {
  int begin;  // 1-based, inclusive
  int end;    // exclusive

  int size() const { return end - begin; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct BtfBlock {
  IndexRange rows;  // permuted row coordinates
  IndexRange cols;  // permuted column coordinates

  friend bool operator==(const BtfBlock&, const BtfBlock&) = default;
};

struct FineBtf {
  Permutation permutation;
  std::vector<BtfBlock> blocks;
  std::vector<int> block_of_row;  // position k: block ordinal (0-based) of permuted row k+1
  std::vector<int> block_of_col;

  int n_blocks() const { return static_cast<int>(blocks.size()); }
  // Original-index row/column lists of one block, in permuted (paired) order.
  std::vector<int> block_rows(int b) const;
  std::vector<int> block_cols(int b) const;
};

// Throws NotPerfectlyMatched unless g is square and m matches every row.
FineBtf fine_decompose(const IncidenceGraph& g, const Matching& m);

// Full pipeline on a square signature matrix: components, maximum matching,
// coarse sets when deficient (converted into an IllPosedWitness and thrown
// as StructurallyIllPosed), fine decomposition otherwise.
FineBtf btf(const SignatureMatrix& m);

// Brute-force irreducibility test: |neighborhood(f)| >= |f| + 1 for every
// proper nonempty row subset f. Dimensions capped at 15 (throws TooLarge).
bool check_strong_hall(const IncidenceGraph& g);

}  // namespace daestruct
