// Canonical offsets of a signature matrix: the elementwise-smallest
// nonnegative integer duals (c, d) with d_j - c_i >= sigma(i,j) on every
// entry and equality on an optimal transversal, computed by fixed-point
// iteration; structural index and structural Jacobian pattern; the full
// analysis pipelines (block-wise and unblocked).
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "daestruct/assignment.hpp"
#include "daestruct/btf.hpp"
#include "daestruct/sigma.hpp"

namespace daestruct {

struct OffsetVectors {
  std::vector<std::int64_t> c;  // equation offsets, position i-1
  std::vector<std::int64_t> d;  // variable offsets, position j-1

  friend bool operator==(const OffsetVectors&, const OffsetVectors&) = default;
};

struct FixedPointRun {
  OffsetVectors offsets;
  int sweeps = 0;  // q: executed sweeps, counting the final one that changes nothing
};

// From c = 0, d = 0 repeat { d_j := max over entries (i,j) of sigma + c_i;
// c_i := d_T(i) - sigma(i,T(i)) } until a sweep changes nothing. Divergence
// (any c_i > n * (max_order + 1), or no convergence within n + 1 sweeps)
// certifies that t is not optimal: NotOptimalTransversal. Optional trace
// receives the offsets after each sweep.
FixedPointRun global_offsets_fixed_point(const SignatureMatrix& m, const Assignment& t,
                                         std::vector<OffsetVectors>* trace = nullptr);

// Same fixed point computed block-wise: each outer sweep runs one d-then-c
// update per diagonal block, blocks in topological order, so coupling
// entries of earlier rows seed later blocks' column maxima. Transversals
// are per block, in local block coordinates. Result equals the global
// fixed point exactly; for a single block the run (including q) is
// identical to global_offsets_fixed_point.
FixedPointRun block_offsets(const SignatureMatrix& m, const FineBtf& decomposition,
                            const std::vector<Assignment>& block_transversals);

// Puts the per-block transversals (local coordinates) into one global
// assignment in original coordinates.
Assignment assemble_transversal(const SignatureMatrix& m, const FineBtf& decomposition,
                                const std::vector<Assignment>& block_transversals);

// max_i c_i, plus 1 when some d_j = 0.
std::int64_t structural_index(const OffsetVectors& o);

// Entries with d_j - c_i = sigma(i,j), sorted by (row, col). Every
// transversal-tight entry qualifies, so each row and column is hit.
std::vector<std::pair<int, int>> jacobian_pattern(const SignatureMatrix& m,
                                                  const OffsetVectors& o);

struct PhaseTimings {
  double btf_seconds = 0.0;
  double transversal_seconds = 0.0;
  double offsets_seconds = 0.0;
};

struct AnalysisReport {
  bool wellposed = false;
  std::optional<IllPosedWitness> witness;  // set when !wellposed
  FineBtf btf;
  Assignment transversal;
  OffsetVectors offsets;
  std::int64_t structural_index = 0;
  std::vector<std::pair<int, int>> jacobian_pattern;
  int iterations_q = 0;
  PhaseTimings timings;
};

// BTF, per-block maximum-value transversals, block offsets, index, Jacobian
// pattern. Ill-posedness short-circuits after the matching with
// wellposed = false and a witness instead of throwing.
AnalysisReport analyze(const SignatureMatrix& m);

// Baseline without decomposition: global transversal and global fixed
// point; the report carries a single trivial block over the whole matrix.
// Offsets, index and Jacobian pattern agree with analyze().
AnalysisReport analyze_unblocked(const SignatureMatrix& m);

}  // namespace daestruct
