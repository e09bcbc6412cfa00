#include "daestruct/btf.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "daestruct/errors.hpp"

namespace daestruct {

IncidenceGraph::IncidenceGraph(int n_rows, int n_cols,
                               const std::vector<std::pair<int, int>>& edges)
    : n_rows_(n_rows), n_cols_(n_cols) {
  if (n_rows < 0 || n_cols < 0) throw IndexOutOfRange("negative incidence graph dimension");
  row_adj_.resize(n_rows);
  col_adj_.resize(n_cols);
  for (const auto& [i, j] : edges) {
    if (i < 1 || i > n_rows || j < 1 || j > n_cols)
      throw IndexOutOfRange("incidence edge outside the graph");
    row_adj_[i - 1].push_back(j);
    col_adj_[j - 1].push_back(i);
  }
  for (auto& adj : row_adj_) {
    std::sort(adj.begin(), adj.end());
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
      throw DuplicateEntry("repeated incidence edge");
    n_edges_ += static_cast<int>(adj.size());
  }
  for (auto& adj : col_adj_) std::sort(adj.begin(), adj.end());
}

IncidenceGraph IncidenceGraph::from_pattern(const SignatureMatrix& m) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m.nnz());
  for (const SigmaTriplet& t : m.triplets()) edges.push_back({t.row, t.col});
  return IncidenceGraph(m.size(), m.size(), edges);
}

std::vector<Component> connected_components(const IncidenceGraph& g) {
  const int nr = g.n_rows(), nc = g.n_cols();
  std::vector<char> row_seen(nr + 1, 0), col_seen(nc + 1, 0);
  std::vector<Component> out;

  for (int start = 1; start <= nr; ++start) {
    if (row_seen[start]) continue;
    Component comp;
    std::queue<std::pair<bool, int>> bfs;  // (is_row, index)
    row_seen[start] = 1;
    bfs.push({true, start});
    while (!bfs.empty()) {
      auto [is_row, node] = bfs.front();
      bfs.pop();
      if (is_row) {
        comp.rows.push_back(node);
        for (int j : g.row_adj(node))
          if (!col_seen[j]) {
            col_seen[j] = 1;
            bfs.push({false, j});
          }
      } else {
        comp.cols.push_back(node);
        for (int i : g.col_adj(node))
          if (!row_seen[i]) {
            row_seen[i] = 1;
            bfs.push({true, i});
          }
      }
    }
    std::sort(comp.rows.begin(), comp.rows.end());
    std::sort(comp.cols.begin(), comp.cols.end());
    out.push_back(std::move(comp));
  }
  for (int j = 1; j <= nc; ++j)
    if (!col_seen[j]) out.push_back(Component{{}, {j}});  // isolated column
  return out;
}

namespace {

constexpr int kInfDist = std::numeric_limits<int>::max();

// Hopcroft-Karp phase helpers, 1-based with mate 0 = unmatched. dist[0]
// doubles as the virtual sink reached through any unmatched column.
bool hk_bfs(const IncidenceGraph& g, const std::vector<int>& row_mate,
            const std::vector<int>& col_mate, std::vector<int>& dist) {
  std::queue<int> q;
  for (int r = 1; r <= g.n_rows(); ++r) {
    if (row_mate[r - 1] == 0) {
      dist[r] = 0;
      q.push(r);
    } else {
      dist[r] = kInfDist;
    }
  }
  dist[0] = kInfDist;
  while (!q.empty()) {
    int r = q.front();
    q.pop();
    if (dist[r] >= dist[0]) continue;
    for (int c : g.row_adj(r)) {
      int r2 = col_mate[c - 1];
      if (dist[r2] == kInfDist) {
        dist[r2] = dist[r] + 1;
        if (r2 != 0) q.push(r2);
      }
    }
  }
  return dist[0] != kInfDist;
}

bool hk_dfs(const IncidenceGraph& g, int r, std::vector<int>& row_mate,
            std::vector<int>& col_mate, std::vector<int>& dist) {
  for (int c : g.row_adj(r)) {
    int r2 = col_mate[c - 1];
    if (dist[r2] == dist[r] + 1 && (r2 == 0 || hk_dfs(g, r2, row_mate, col_mate, dist))) {
      row_mate[r - 1] = c;
      col_mate[c - 1] = r;
      return true;
    }
  }
  dist[r] = kInfDist;
  return false;
}

}  // namespace

Matching maximum_matching(const IncidenceGraph& g) {
  Matching m;
  m.row_mate.assign(g.n_rows(), 0);
  m.col_mate.assign(g.n_cols(), 0);
  std::vector<int> dist(g.n_rows() + 1);
  while (hk_bfs(g, m.row_mate, m.col_mate, dist)) {
    for (int r = 1; r <= g.n_rows(); ++r)
      if (m.row_mate[r - 1] == 0 && hk_dfs(g, r, m.row_mate, m.col_mate, dist)) ++m.size;
  }
  return m;
}

CoarseDecomposition coarse_decompose(const IncidenceGraph& g, const Matching& m) {
  const int nr = g.n_rows(), nc = g.n_cols();
  std::vector<char> vrow(nr + 1, 0), vcol(nc + 1, 0);  // V*: reached from unmatched rows
  std::vector<char> hrow(nr + 1, 0), hcol(nc + 1, 0);  // H*: reached from unmatched columns

  // Row -> column along any edge, column -> row along its matched edge.
  std::queue<int> rq;
  for (int r = 1; r <= nr; ++r)
    if (m.row_mate[r - 1] == 0) {
      vrow[r] = 1;
      rq.push(r);
    }
  while (!rq.empty()) {
    int r = rq.front();
    rq.pop();
    for (int c : g.row_adj(r)) {
      if (vcol[c]) continue;
      vcol[c] = 1;
      int r2 = m.col_mate[c - 1];
      if (r2 != 0 && !vrow[r2]) {
        vrow[r2] = 1;
        rq.push(r2);
      }
    }
  }

  // Column -> row along any edge, row -> column along its matched edge.
  std::queue<int> cq;
  for (int c = 1; c <= nc; ++c)
    if (m.col_mate[c - 1] == 0) {
      hcol[c] = 1;
      cq.push(c);
    }
  while (!cq.empty()) {
    int c = cq.front();
    cq.pop();
    for (int r : g.col_adj(c)) {
      if (hrow[r]) continue;
      hrow[r] = 1;
      int c2 = m.row_mate[r - 1];
      if (c2 != 0 && !hcol[c2]) {
        hcol[c2] = 1;
        cq.push(c2);
      }
    }
  }

  CoarseDecomposition d;
  for (int r = 1; r <= nr; ++r) {
    if (vrow[r])
      d.VF.push_back(r);
    else if (hrow[r])
      d.HF.push_back(r);
    else
      d.SF.push_back(r);
  }
  for (int c = 1; c <= nc; ++c) {
    if (vcol[c])
      d.VX.push_back(c);
    else if (hcol[c])
      d.HX.push_back(c);
    else
      d.SX.push_back(c);
  }
  return d;
}

FineBtf fine_decompose(const IncidenceGraph& g, const Matching& m) {
  const int n = g.n_rows();
  if (g.n_cols() != n || n == 0) throw NotPerfectlyMatched("square nonempty pattern required");
  for (int r = 1; r <= n; ++r)
    if (m.row_mate[r - 1] == 0) throw NotPerfectlyMatched("matching does not cover every row");

  // Row digraph of the matching condensation: a non-matched entry (r, c)
  // induces mate(c) -> r, so block upper triangularity in the output means
  // every edge leaves a later-or-equal block.
  std::vector<std::vector<int>> adj(n + 1);
  for (int r = 1; r <= n; ++r)
    for (int c : g.row_adj(r)) {
      int u = m.col_mate[c - 1];
      if (u != r) adj[u].push_back(r);
    }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  // Iterative Tarjan.
  std::vector<int> index(n + 1, -1), lowlink(n + 1, 0), scc_of(n + 1, -1);
  std::vector<char> on_stack(n + 1, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> sccs;
  struct Frame {
    int v;
    std::size_t next_edge;
  };
  std::vector<Frame> frames;
  int counter = 0;
  for (int start = 1; start <= n; ++start) {
    if (index[start] != -1) continue;
    frames.push_back({start, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      int v = f.v;
      if (f.next_edge == 0) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      if (f.next_edge < adj[v].size()) {
        int w = adj[v][f.next_edge++];
        if (index[w] == -1)
          frames.push_back({w, 0});
        else if (on_stack[w])
          lowlink[v] = std::min(lowlink[v], index[w]);
      } else {
        frames.pop_back();
        if (!frames.empty())
          lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
        if (lowlink[v] == index[v]) {
          std::vector<int> scc;
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            scc_of[w] = static_cast<int>(sccs.size());
            scc.push_back(w);
            if (w == v) break;
          }
          std::sort(scc.begin(), scc.end());
          sccs.push_back(std::move(scc));
        }
      }
    }
  }

  // Kahn over the condensation, sinks first so block 1 receives all cross
  // edges; ties resolved by the smallest original row index in the block.
  const int nscc = static_cast<int>(sccs.size());
  std::vector<int> out_degree(nscc, 0);
  std::vector<std::vector<int>> preds(nscc);  // preds[b]: blocks with an edge into b
  {
    std::vector<std::pair<int, int>> cross;
    for (int u = 1; u <= n; ++u)
      for (int r : adj[u])
        if (scc_of[u] != scc_of[r]) cross.push_back({scc_of[u], scc_of[r]});
    std::sort(cross.begin(), cross.end());
    cross.erase(std::unique(cross.begin(), cross.end()), cross.end());
    for (const auto& [a, b] : cross) {
      ++out_degree[a];
      preds[b].push_back(a);
    }
  }
  using HeapItem = std::pair<int, int>;  // (smallest row of scc, scc id)
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;
  for (int s = 0; s < nscc; ++s)
    if (out_degree[s] == 0) heap.push({sccs[s][0], s});

  FineBtf out;
  out.block_of_row.resize(n);
  out.block_of_col.resize(n);
  int pos = 1;
  while (!heap.empty()) {
    auto [min_row, s] = heap.top();
    heap.pop();
    int b = out.n_blocks();
    IndexRange range{pos, pos + static_cast<int>(sccs[s].size())};
    out.blocks.push_back({range, range});
    for (int r : sccs[s]) {
      out.permutation.row_perm.push_back(r);
      out.permutation.col_perm.push_back(m.row_mate[r - 1]);
      out.block_of_row[pos - 1] = b;
      out.block_of_col[pos - 1] = b;
      ++pos;
    }
    for (int p : preds[s])
      if (--out_degree[p] == 0) heap.push({sccs[p][0], p});
  }
  if (pos != n + 1) throw InternalError("condensation order left blocks unplaced");
  return out;
}

std::vector<int> FineBtf::block_rows(int b) const {
  const IndexRange& r = blocks[b].rows;
  return std::vector<int>(permutation.row_perm.begin() + (r.begin - 1),
                          permutation.row_perm.begin() + (r.end - 1));
}

std::vector<int> FineBtf::block_cols(int b) const {
  const IndexRange& r = blocks[b].cols;
  return std::vector<int>(permutation.col_perm.begin() + (r.begin - 1),
                          permutation.col_perm.begin() + (r.end - 1));
}

FineBtf btf(const SignatureMatrix& m) {
  IncidenceGraph g = IncidenceGraph::from_pattern(m);
  Matching match = maximum_matching(g);
  if (match.size < m.size()) {
    CoarseDecomposition coarse = coarse_decompose(g, match);
    IllPosedWitness w;
    w.rows.reserve(coarse.SF.size() + coarse.VF.size());
    for (int r : coarse.SF) w.rows.push_back(r);
    for (int r : coarse.VF) w.rows.push_back(r);
    std::sort(w.rows.begin(), w.rows.end());
    std::vector<char> seen(m.size() + 1, 0);
    for (int r : w.rows)
      for (int c : g.row_adj(r))
        if (!seen[c]) {
          seen[c] = 1;
          w.cols.push_back(c);
        }
    std::sort(w.cols.begin(), w.cols.end());
    throw StructurallyIllPosed(std::move(w));
  }
  return fine_decompose(g, match);
}

bool check_strong_hall(const IncidenceGraph& g) {
  const int nr = g.n_rows(), nc = g.n_cols();
  if (nr > 15 || nc > 15) throw TooLarge("check_strong_hall is capped at 15");
  if (nr == 0) return true;
  std::vector<unsigned> row_mask(nr);
  for (int r = 1; r <= nr; ++r)
    for (int c : g.row_adj(r)) row_mask[r - 1] |= 1u << (c - 1);
  for (unsigned sub = 1; sub + 1 < (1u << nr); ++sub) {
    unsigned gamma = 0;
    int size = 0;
    for (int r = 0; r < nr; ++r)
      if (sub & (1u << r)) {
        gamma |= row_mask[r];
        ++size;
      }
    if (__builtin_popcount(gamma) < size + 1) return false;
  }
  return true;
}

}  // namespace daestruct
