#include "daestruct/offsets.hpp"

#include <algorithm>
#include <chrono>

#include "daestruct/errors.hpp"

namespace daestruct {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Column-wise entry lists: for each column j the (row, sigma) pairs.
std::vector<std::vector<std::pair<int, std::int64_t>>> columns_of(const SignatureMatrix& m) {
  std::vector<std::vector<std::pair<int, std::int64_t>>> cols(m.size());
  for (int i = 1; i <= m.size(); ++i)
    for (const auto& [j, order] : m.row(i)) cols[j - 1].push_back({i, order});
  return cols;
}

// Checks t is a bijection over the pattern of m; returns sigma(i, t(i)).
std::vector<std::int64_t> transversal_sigmas(const SignatureMatrix& m, const Assignment& t) {
  const int n = m.size();
  if (static_cast<int>(t.row_to_col.size()) != n)
    throw NotPerfectlyMatched("transversal length differs from matrix size");
  std::vector<char> used(n + 1, 0);
  std::vector<std::int64_t> sig(n);
  for (int i = 1; i <= n; ++i) {
    int j = t.row_to_col[i - 1];
    if (j < 1 || j > n || used[j]) throw NotPerfectlyMatched("transversal is not a bijection");
    used[j] = 1;
    auto order = m.order(i, j);
    if (!order) throw NotPerfectlyMatched("transversal pair outside the pattern");
    sig[i - 1] = *order;
  }
  return sig;
}

}  // namespace

FixedPointRun global_offsets_fixed_point(const SignatureMatrix& m, const Assignment& t,
                                         std::vector<OffsetVectors>* trace) {
  const int n = m.size();
  const std::vector<std::int64_t> sig_t = transversal_sigmas(m, t);
  const auto cols = columns_of(m);
  const std::int64_t bound = static_cast<std::int64_t>(n) * (m.max_order() + 1);

  OffsetVectors cur{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0)};
  for (int sweep = 1; sweep <= n + 1; ++sweep) {
    OffsetVectors next = cur;
    for (int j = 1; j <= n; ++j) {
      std::int64_t dj = 0;
      for (const auto& [i, order] : cols[j - 1]) dj = std::max(dj, order + cur.c[i - 1]);
      next.d[j - 1] = dj;
    }
    for (int i = 1; i <= n; ++i) {
      next.c[i - 1] = next.d[t.row_to_col[i - 1] - 1] - sig_t[i - 1];
      if (next.c[i - 1] > bound)
        throw NotOptimalTransversal("equation offsets exceed the convergence bound");
    }
    bool changed = next != cur;
    cur = std::move(next);
    if (trace) trace->push_back(cur);
    if (!changed) return {cur, sweep};
  }
  throw NotOptimalTransversal("offset iteration did not converge");
}

namespace {

struct BlockMaps {
  std::vector<int> row_of_block;   // flattened global rows, block by block
  std::vector<int> global_t;       // global row -> global col, position i-1
  std::vector<std::int64_t> sig_t; // sigma on the assembled transversal
};

BlockMaps resolve_blocks(const SignatureMatrix& m, const FineBtf& deco,
                         const std::vector<Assignment>& ts) {
  const int n = m.size();
  if (static_cast<int>(deco.permutation.row_perm.size()) != n ||
      static_cast<int>(deco.permutation.col_perm.size()) != n)
    throw SizeMismatch("decomposition does not cover the matrix");
  if (static_cast<int>(ts.size()) != deco.n_blocks())
    throw SizeMismatch("one transversal per block required");

  BlockMaps maps;
  maps.global_t.assign(n, 0);
  std::vector<char> col_used(n + 1, 0);
  for (int b = 0; b < deco.n_blocks(); ++b) {
    const std::vector<int> rows = deco.block_rows(b);
    const std::vector<int> cols = deco.block_cols(b);
    const int size = static_cast<int>(rows.size());
    if (static_cast<int>(ts[b].row_to_col.size()) != size)
      throw NotPerfectlyMatched("block transversal length differs from block size");
    std::vector<char> local_used(size + 1, 0);
    for (int k = 1; k <= size; ++k) {
      int local = ts[b].row_to_col[k - 1];
      if (local < 1 || local > size || local_used[local])
        throw NotPerfectlyMatched("block transversal is not a bijection");
      local_used[local] = 1;
      int gr = rows[k - 1], gc = cols[local - 1];
      if (gr < 1 || gr > n || gc < 1 || gc > n || maps.global_t[gr - 1] != 0 || col_used[gc])
        throw SizeMismatch("decomposition blocks overlap");
      maps.global_t[gr - 1] = gc;
      col_used[gc] = 1;
    }
  }
  for (int i = 1; i <= n; ++i)
    if (maps.global_t[i - 1] == 0) throw SizeMismatch("decomposition misses a row");

  maps.sig_t.resize(n);
  for (int i = 1; i <= n; ++i) {
    auto order = m.order(i, maps.global_t[i - 1]);
    if (!order) throw NotPerfectlyMatched("transversal pair outside the pattern");
    maps.sig_t[i - 1] = *order;
  }
  return maps;
}

}  // namespace

FixedPointRun block_offsets(const SignatureMatrix& m, const FineBtf& decomposition,
                            const std::vector<Assignment>& block_transversals) {
  const int n = m.size();
  const BlockMaps maps = resolve_blocks(m, decomposition, block_transversals);
  const auto cols = columns_of(m);
  const std::int64_t bound = static_cast<std::int64_t>(n) * (m.max_order() + 1);

  OffsetVectors o{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0)};
  for (int pass = 1; pass <= n + 1; ++pass) {
    bool changed = false;
    for (int b = 0; b < decomposition.n_blocks(); ++b) {
      // One d-then-c sweep on this block; earlier blocks' offsets are
      // already current within this pass, the block's own rows still hold
      // the previous pass, so a single block reproduces the global sweep.
      for (int gc : decomposition.block_cols(b)) {
        std::int64_t dj = 0;
        for (const auto& [i, order] : cols[gc - 1]) dj = std::max(dj, order + o.c[i - 1]);
        if (dj != o.d[gc - 1]) {
          o.d[gc - 1] = dj;
          changed = true;
        }
      }
      for (int gr : decomposition.block_rows(b)) {
        std::int64_t ci = o.d[maps.global_t[gr - 1] - 1] - maps.sig_t[gr - 1];
        if (ci > bound)
          throw NotOptimalTransversal("equation offsets exceed the convergence bound");
        if (ci != o.c[gr - 1]) {
          o.c[gr - 1] = ci;
          changed = true;
        }
      }
    }
    if (!changed) return {o, pass};
  }
  throw NotOptimalTransversal("offset iteration did not converge");
}

Assignment assemble_transversal(const SignatureMatrix& m, const FineBtf& decomposition,
                                const std::vector<Assignment>& block_transversals) {
  const int n = m.size();
  const BlockMaps maps = resolve_blocks(m, decomposition, block_transversals);
  Assignment a;
  a.row_to_col = maps.global_t;
  a.col_to_row.resize(n);
  for (int i = 1; i <= n; ++i) {
    a.col_to_row[maps.global_t[i - 1] - 1] = i;
    a.value += maps.sig_t[i - 1];
  }
  return a;
}

std::int64_t structural_index(const OffsetVectors& o) {
  std::int64_t top = 0;
  for (std::int64_t ci : o.c) top = std::max(top, ci);
  for (std::int64_t dj : o.d)
    if (dj == 0) return top + 1;
  return top;
}

std::vector<std::pair<int, int>> jacobian_pattern(const SignatureMatrix& m,
                                                  const OffsetVectors& o) {
  const int n = m.size();
  if (static_cast<int>(o.c.size()) != n || static_cast<int>(o.d.size()) != n)
    throw SizeMismatch("offset vectors do not match the matrix size");
  std::vector<std::pair<int, int>> out;
  for (const SigmaTriplet& t : m.triplets())
    if (o.d[t.col - 1] - o.c[t.row - 1] == t.order) out.push_back({t.row, t.col});
  return out;
}

namespace {

FineBtf trivial_btf(int n) {
  FineBtf f;
  f.permutation = Permutation::identity(n);
  f.blocks.push_back({{1, n + 1}, {1, n + 1}});
  f.block_of_row.assign(n, 0);
  f.block_of_col.assign(n, 0);
  return f;
}

void check_duality(const SignatureMatrix& m, const AnalysisReport& rep) {
  const int n = m.size();
  std::int64_t sum = 0;
  for (int i = 0; i < n; ++i) {
    if (rep.offsets.c[i] < 0 || rep.offsets.d[i] < 0)
      throw InternalError("negative offsets after convergence");
    sum += rep.offsets.d[i] - rep.offsets.c[i];
  }
  if (sum != rep.transversal.value)
    throw InternalError("offset gap does not equal the transversal value");
  for (const SigmaTriplet& t : m.triplets()) {
    std::int64_t slack = rep.offsets.d[t.col - 1] - rep.offsets.c[t.row - 1] - t.order;
    if (slack < 0) throw InternalError("offsets violate feasibility on an entry");
    if (rep.transversal.row_to_col[t.row - 1] == t.col && slack != 0)
      throw InternalError("offsets not tight on the transversal");
  }
}

SignatureMatrix block_submatrix(const SignatureMatrix& m, const FineBtf& deco, int b,
                                const std::vector<int>& col_block,
                                const std::vector<int>& col_local) {
  const std::vector<int> rows = deco.block_rows(b);
  std::vector<SigmaTriplet> entries;
  for (int k = 1; k <= static_cast<int>(rows.size()); ++k)
    for (const auto& [c, order] : m.row(rows[k - 1]))
      if (col_block[c] == b) entries.push_back({k, col_local[c], order});
  return SignatureMatrix::from_triplets(static_cast<int>(rows.size()), entries);
}

}  // namespace

AnalysisReport analyze(const SignatureMatrix& m) {
  AnalysisReport rep;
  auto start = std::chrono::steady_clock::now();
  try {
    rep.btf = btf(m);
  } catch (const StructurallyIllPosed& e) {
    rep.timings.btf_seconds = seconds_since(start);
    rep.wellposed = false;
    rep.witness = e.witness;
    return rep;
  }
  rep.timings.btf_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  const int n = m.size();
  std::vector<int> col_block(n + 1, -1), col_local(n + 1, 0);
  for (int b = 0; b < rep.btf.n_blocks(); ++b) {
    const std::vector<int> cols = rep.btf.block_cols(b);
    for (int k = 1; k <= static_cast<int>(cols.size()); ++k) {
      col_block[cols[k - 1]] = b;
      col_local[cols[k - 1]] = k;
    }
  }
  std::vector<Assignment> per_block;
  per_block.reserve(rep.btf.n_blocks());
  for (int b = 0; b < rep.btf.n_blocks(); ++b) {
    try {
      per_block.push_back(
          max_value_transversal(block_submatrix(m, rep.btf, b, col_block, col_local)));
    } catch (const StructurallyIllPosed&) {
      throw InternalError("diagonal block of a matched pattern lost its transversal");
    }
  }
  rep.transversal = assemble_transversal(m, rep.btf, per_block);
  rep.timings.transversal_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  FixedPointRun run = block_offsets(m, rep.btf, per_block);
  rep.offsets = run.offsets;
  rep.iterations_q = run.sweeps;
  rep.structural_index = structural_index(rep.offsets);
  rep.jacobian_pattern = jacobian_pattern(m, rep.offsets);
  rep.timings.offsets_seconds = seconds_since(start);

  rep.wellposed = true;
  check_duality(m, rep);
  return rep;
}

AnalysisReport analyze_unblocked(const SignatureMatrix& m) {
  AnalysisReport rep;
  auto start = std::chrono::steady_clock::now();
  Assignment t;
  try {
    t = max_value_transversal(m);
  } catch (const StructurallyIllPosed& e) {
    rep.timings.transversal_seconds = seconds_since(start);
    rep.wellposed = false;
    rep.witness = e.witness;
    return rep;
  }
  rep.transversal = std::move(t);
  rep.timings.transversal_seconds = seconds_since(start);

  rep.btf = trivial_btf(m.size());

  start = std::chrono::steady_clock::now();
  FixedPointRun run = global_offsets_fixed_point(m, rep.transversal);
  rep.offsets = run.offsets;
  rep.iterations_q = run.sweeps;
  rep.structural_index = structural_index(rep.offsets);
  rep.jacobian_pattern = jacobian_pattern(m, rep.offsets);
  rep.timings.offsets_seconds = seconds_since(start);

  rep.wellposed = true;
  check_duality(m, rep);
  return rep;
}

}  // namespace daestruct
