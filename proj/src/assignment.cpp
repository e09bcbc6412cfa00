#include "daestruct/assignment.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "daestruct/errors.hpp"

namespace daestruct {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Shortest-augmenting-path assignment solver on the minimization mirror
// cost(i,j) = max_order - sigma(i,j) >= 0. Classic structure: column
// reduction, reduction transfer, two augmenting-row-reduction passes, then
// Dijkstra augmentation per remaining free row. All indices 0-based here.
struct Solver {
  int n;
  // Row- and column-wise views of the cost matrix.
  std::vector<std::vector<std::pair<int, std::int64_t>>> row_entries;  // (col, cost)
  std::vector<std::vector<std::pair<int, std::int64_t>>> col_entries;  // (row, cost)
  std::vector<std::int64_t> v;      // column duals of the minimization
  std::vector<int> rowsol, colsol;  // -1 = unassigned
  IllPosedWitness witness;          // 1-based, filled on failure
  bool failed = false;

  explicit Solver(const SignatureMatrix& m) : n(m.size()) {
    row_entries.resize(n);
    col_entries.resize(n);
    const std::int64_t top = m.max_order();
    for (int i = 1; i <= n; ++i)
      for (const auto& [j, order] : m.row(i)) {
        row_entries[i - 1].push_back({j - 1, top - order});
        col_entries[j - 1].push_back({i - 1, top - order});
      }
    v.assign(n, 0);
    rowsol.assign(n, -1);
    colsol.assign(n, -1);
  }

  static std::int64_t cost_of(const std::vector<std::pair<int, std::int64_t>>& row, int j) {
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const auto& e, int col) { return e.first < col; });
    if (it == row.end() || it->first != j) throw InternalError("cost lookup outside pattern");
    return it->second;
  }

  void fail(int freerow, const std::vector<std::int64_t>& dist) {
    failed = true;
    witness.rows.push_back(freerow + 1);
    for (int j = 0; j < n; ++j)
      if (dist[j] < kInf) {
        witness.cols.push_back(j + 1);
        witness.rows.push_back(colsol[j] + 1);
      }
    std::sort(witness.rows.begin(), witness.rows.end());
    std::sort(witness.cols.begin(), witness.cols.end());
  }

  bool solve() {
    for (int i = 0; i < n; ++i)
      if (row_entries[i].empty()) {
        failed = true;
        witness.rows.push_back(i + 1);
        return false;
      }

    std::vector<int> free_rows = heuristics();

    std::vector<std::int64_t> dist(n);
    std::vector<int> pred(n);
    std::vector<char> done(n);
    for (int f : free_rows) {
      if (!augment(f, dist, pred, done)) return false;
    }
    return true;
  }

  // Column reduction, reduction transfer and two augmenting-row-reduction
  // passes. Returns the rows still unassigned.
  std::vector<int> heuristics() {
    std::vector<int> matches(n, 0);
    for (int j = n - 1; j >= 0; --j) {
      if (col_entries[j].empty()) continue;  // v stays 0, column unassigned
      int imin = -1;
      std::int64_t cmin = kInf;
      for (const auto& [i, cost] : col_entries[j])
        if (cost < cmin) {
          cmin = cost;
          imin = i;
        }
      v[j] = cmin;
      if (++matches[imin] == 1) {
        rowsol[imin] = j;
        colsol[j] = imin;
      }
    }

    std::vector<int> free_rows;
    for (int i = 0; i < n; ++i) {
      if (matches[i] == 0) {
        free_rows.push_back(i);
      } else if (matches[i] == 1 && row_entries[i].size() >= 2) {
        int j1 = rowsol[i];
        std::int64_t slack = kInf;
        for (const auto& [j, cost] : row_entries[i])
          if (j != j1) slack = std::min(slack, cost - v[j]);
        v[j1] -= slack;
      }
    }

    // Two passes; a displaced row is normally reprocessed immediately after
    // a strict dual improvement, but single-entry rows yield no improvement
    // and a cap keeps each pass linear, so those go to the next pass.
    std::vector<int> next;
    const long cap = 4L * n;
    for (int pass = 0; pass < 2; ++pass) {
      long immediate = 0;
      next.clear();
      for (std::size_t k = 0; k < free_rows.size();) {
        int i = free_rows[k++];
        std::int64_t umin = kInf, usubmin = kInf;
        int j1 = -1, j2 = -1;
        for (const auto& [j, cost] : row_entries[i]) {
          std::int64_t h = cost - v[j];
          if (h < usubmin) {
            if (h >= umin) {
              usubmin = h;
              j2 = j;
            } else {
              usubmin = umin;
              j2 = j1;
              umin = h;
              j1 = j;
            }
          }
        }
        int displaced = colsol[j1];
        bool improved = false;
        if (usubmin == kInf) {
          // single-entry row: take its only column
        } else if (umin < usubmin) {
          v[j1] -= usubmin - umin;
          improved = true;
        } else if (displaced >= 0) {
          j1 = j2;
          displaced = colsol[j2];
        }
        rowsol[i] = j1;
        colsol[j1] = i;
        if (displaced >= 0) {
          rowsol[displaced] = -1;
          if (improved && immediate < cap) {
            ++immediate;
            free_rows[--k] = displaced;
          } else {
            next.push_back(displaced);
          }
        }
      }
      std::swap(free_rows, next);
    }
    return free_rows;
  }

  bool augment(int f, std::vector<std::int64_t>& dist, std::vector<int>& pred,
               std::vector<char>& done) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), char(0));
    using Item = std::pair<std::int64_t, int>;  // (distance, column): lowest column wins ties
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (const auto& [j, cost] : row_entries[f]) {
      dist[j] = cost - v[j];
      pred[j] = f;
      pq.push({dist[j], j});
    }

    int endofpath = -1;
    std::int64_t mu = 0;
    while (!pq.empty()) {
      auto [d, j] = pq.top();
      pq.pop();
      if (done[j] || d != dist[j]) continue;  // stale queue entry
      done[j] = true;
      mu = d;
      if (colsol[j] < 0) {
        endofpath = j;
        break;
      }
      int i = colsol[j];
      std::int64_t base = d - (cost_of(row_entries[i], j) - v[j]);
      for (const auto& [j2, cost] : row_entries[i]) {
        if (done[j2]) continue;
        std::int64_t nd = base + cost - v[j2];
        if (nd < dist[j2]) {
          dist[j2] = nd;
          pred[j2] = i;
          pq.push({nd, j2});
        }
      }
    }
    if (endofpath < 0) {
      fail(f, dist);
      return false;
    }

    for (int j = 0; j < n; ++j)
      if (done[j]) v[j] += dist[j] - mu;

    for (int j = endofpath;;) {
      int i = pred[j];
      colsol[j] = i;
      std::swap(rowsol[i], j);
      if (i == f) break;
    }
    return true;
  }
};

Assignment to_assignment(const SignatureMatrix& m, const Solver& s) {
  Assignment a;
  a.row_to_col.resize(s.n);
  a.col_to_row.resize(s.n);
  for (int i = 0; i < s.n; ++i) {
    a.row_to_col[i] = s.rowsol[i] + 1;
    a.col_to_row[s.rowsol[i]] = i + 1;
    a.value += *m.order(i + 1, s.rowsol[i] + 1);
  }
  return a;
}

}  // namespace

Assignment max_value_transversal(const SignatureMatrix& m) {
  Solver s(m);
  if (!s.solve()) throw StructurallyIllPosed(std::move(s.witness));
  return to_assignment(m, s);
}

MvtSolution max_value_transversal_detailed(const SignatureMatrix& m) {
  Solver s(m);
  if (!s.solve()) throw StructurallyIllPosed(std::move(s.witness));
  MvtSolution sol;
  sol.assignment = to_assignment(m, s);
  sol.col_duals = s.v;
  sol.row_duals.resize(s.n);
  for (int i = 0; i < s.n; ++i)
    sol.row_duals[i] = Solver::cost_of(s.row_entries[i], s.rowsol[i]) - s.v[s.rowsol[i]];
  return sol;
}

namespace {

// Lexicographically earliest row-subset Hall violator of minimum size.
IllPosedWitness brute_force_witness(const SignatureMatrix& m) {
  const int n = m.size();
  std::vector<int> pick;
  std::vector<char> gamma(n + 1);
  IllPosedWitness w;
  // Enumerates k-combinations of rows in lexicographic order.
  auto search = [&](auto&& self, int next, int remaining) -> bool {
    if (remaining == 0) {
      std::fill(gamma.begin(), gamma.end(), char(0));
      int count = 0;
      for (int r : pick)
        for (const auto& [j, order] : m.row(r))
          if (!gamma[j]) {
            gamma[j] = 1;
            ++count;
          }
      if (count >= static_cast<int>(pick.size())) return false;
      w.rows = pick;
      for (int j = 1; j <= n; ++j)
        if (gamma[j]) w.cols.push_back(j);
      return true;
    }
    for (int r = next; r + remaining <= n + 1; ++r) {
      pick.push_back(r);
      if (self(self, r + 1, remaining - 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= n; ++k)
    if (search(search, 1, k)) return w;
  throw InternalError("no Hall violator in a matrix without complete transversal");
}

}  // namespace

Assignment brute_force_mvt(const SignatureMatrix& m) {
  const int n = m.size();
  if (n > 10) throw TooLarge("brute_force_mvt is capped at n = 10");

  std::vector<int> current(n, 0);
  std::vector<char> used(n + 1, 0);
  std::vector<int> best;
  std::int64_t best_value = 0;
  bool found = false;
  auto search = [&](auto&& self, int i, std::int64_t value) -> void {
    if (i > n) {
      if (!found || value > best_value) {
        found = true;
        best_value = value;
        best = current;
      }
      return;
    }
    for (const auto& [j, order] : m.row(i)) {
      if (used[j]) continue;
      used[j] = 1;
      current[i - 1] = j;
      self(self, i + 1, value + order);
      used[j] = 0;
    }
  };
  search(search, 1, 0);
  if (!found) throw StructurallyIllPosed(brute_force_witness(m));

  Assignment a;
  a.row_to_col = best;
  a.col_to_row.resize(n);
  for (int i = 1; i <= n; ++i) a.col_to_row[best[i - 1] - 1] = i;
  a.value = best_value;
  return a;
}

}  // namespace daestruct
