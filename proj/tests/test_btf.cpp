#include "daestruct/btf.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "testutil.hpp"

using namespace daestruct;
using namespace testutil;

namespace {

IncidenceGraph random_graph(std::mt19937_64& eng, int nr, int nc, double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= nr; ++i)
    for (int j = 1; j <= nc; ++j)
      if (coin(eng) < density) edges.push_back({i, j});
  return IncidenceGraph(nr, nc, edges);
}

void check_matching(const IncidenceGraph& g, const Matching& m) {
  int count = 0;
  for (int r = 1; r <= g.n_rows(); ++r) {
    int c = m.row_mate[r - 1];
    if (c == 0) continue;
    ++count;
    CHECK(m.col_mate[c - 1] == r);
    const auto& adj = g.row_adj(r);
    CHECK(std::binary_search(adj.begin(), adj.end(), c));
  }
  CHECK(count == m.size);
}

}  // namespace

TEST_CASE("incidence graph validates and sorts") {
  CHECK_THROWS_AS(IncidenceGraph(-1, 2, {}), IndexOutOfRange);
  CHECK_THROWS_AS(IncidenceGraph(2, 2, {{0, 1}}), IndexOutOfRange);
  CHECK_THROWS_AS(IncidenceGraph(2, 2, {{1, 3}}), IndexOutOfRange);
  CHECK_THROWS_AS(IncidenceGraph(2, 2, {{1, 1}, {1, 1}}), DuplicateEntry);

  IncidenceGraph g(2, 3, {{1, 3}, {1, 1}, {2, 2}});
  CHECK(g.n_edges() == 3);
  CHECK(g.row_adj(1) == std::vector<int>{1, 3});
  CHECK(g.col_adj(2) == std::vector<int>{2});

  IncidenceGraph crane = IncidenceGraph::from_pattern(crane_sigma());
  CHECK(crane.n_rows() == 8);
  CHECK(crane.n_edges() == 22);
}

TEST_CASE("connected components order and membership") {
  // Two proper components plus an isolated row and two isolated columns.
  IncidenceGraph g(4, 4, {{1, 1}, {3, 1}, {2, 3}});
  std::vector<Component> comps = connected_components(g);
  REQUIRE(comps.size() == 5);
  CHECK(comps[0] == Component{{1, 3}, {1}});
  CHECK(comps[1] == Component{{2}, {3}});
  CHECK(comps[2] == Component{{4}, {}});
  CHECK(comps[3] == Component{{}, {2}});
  CHECK(comps[4] == Component{{}, {4}});
}

TEST_CASE("crane is a single component") {
  std::vector<Component> comps =
      connected_components(IncidenceGraph::from_pattern(crane_sigma()));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].rows.size() == 8);
  CHECK(comps[0].cols.size() == 8);
}

TEST_CASE("maximum matching agrees with the exhaustive count") {
  std::mt19937_64 eng(7);
  std::uniform_int_distribution<int> rows(0, 9), cols(1, 8);
  std::uniform_real_distribution<double> dens(0.05, 0.9);
  for (int t = 0; t < 300; ++t) {
    IncidenceGraph g = random_graph(eng, rows(eng), cols(eng), dens(eng));
    Matching m = maximum_matching(g);
    check_matching(g, m);
    CHECK(m.size == brute_matching_size(g));
  }
  CHECK(maximum_matching(IncidenceGraph::from_pattern(crane_sigma())).size == 8);
}

TEST_CASE("coarse decomposition partitions and forbidden blocks") {
  std::mt19937_64 eng(11);
  std::uniform_int_distribution<int> rows(1, 9), cols(1, 9);
  std::uniform_real_distribution<double> dens(0.05, 0.9);
  for (int t = 0; t < 300; ++t) {
    IncidenceGraph g = random_graph(eng, rows(eng), cols(eng), dens(eng));
    Matching m = maximum_matching(g);
    CoarseDecomposition d = coarse_decompose(g, m);

    // 0 = H, 1 = S, 2 = V; -1 = unclassified.
    std::vector<int> rcat(g.n_rows() + 1, -1), ccat(g.n_cols() + 1, -1);
    for (int r : d.HF) rcat[r] = 0;
    for (int r : d.SF) { CHECK(rcat[r] == -1); rcat[r] = 1; }
    for (int r : d.VF) { CHECK(rcat[r] == -1); rcat[r] = 2; }
    for (int c : d.HX) ccat[c] = 0;
    for (int c : d.SX) { CHECK(ccat[c] == -1); ccat[c] = 1; }
    for (int c : d.VX) { CHECK(ccat[c] == -1); ccat[c] = 2; }
    for (int r = 1; r <= g.n_rows(); ++r) CHECK(rcat[r] != -1);
    for (int c = 1; c <= g.n_cols(); ++c) CHECK(ccat[c] != -1);

    // Unmatched rows are V-rows, unmatched columns H-columns; matched pairs
    // stay in one part, so the S parts pair up.
    CHECK(d.SF.size() == d.SX.size());
    for (int r = 1; r <= g.n_rows(); ++r) {
      int c = m.row_mate[r - 1];
      if (c == 0)
        CHECK(rcat[r] == 2);
      else
        CHECK(rcat[r] == ccat[c]);
    }
    for (int c = 1; c <= g.n_cols(); ++c)
      if (m.col_mate[c - 1] == 0) CHECK(ccat[c] == 0);

    // No edges from S-rows into H-columns, nor from V-rows anywhere but V.
    for (int r = 1; r <= g.n_rows(); ++r)
      for (int c : g.row_adj(r)) {
        CHECK_FALSE((rcat[r] == 1 && ccat[c] == 0));
        CHECK_FALSE((rcat[r] == 2 && ccat[c] != 2));
      }
  }
}

TEST_CASE("crane fine decomposition golden") {
  FineBtf f = btf(crane_sigma());
  CHECK(f.permutation.row_perm == std::vector<int>{3, 4, 5, 6, 1, 2, 7, 8});
  CHECK(f.permutation.col_perm == std::vector<int>{7, 8, 3, 4, 5, 6, 1, 2});
  REQUIRE(f.n_blocks() == 7);
  CHECK(f.blocks[4] == BtfBlock{{5, 7}, {5, 7}});
  CHECK(f.block_rows(4) == std::vector<int>{1, 2});
  CHECK(f.block_cols(4) == std::vector<int>{5, 6});
  CHECK(f.block_rows(0) == std::vector<int>{3});
  CHECK(f.block_cols(0) == std::vector<int>{7});
  CHECK(f.block_of_row == std::vector<int>{0, 1, 2, 3, 4, 4, 5, 6});
  CHECK(f.block_of_col == std::vector<int>{0, 1, 2, 3, 4, 4, 5, 6});

  SignatureMatrix m = crane_sigma();
  CHECK(is_block_upper(m, f));
  CHECK(diagonal_is_matched(m, f));
  CHECK(all_blocks_strong_hall(m, f));
}

TEST_CASE("crane blocks refine the coarser four-group form") {
  // A valid but reducible grouping of the same matrix; every irreducible
  // block must land inside exactly one group, and the groups must be
  // exactly covered.
  const std::vector<std::set<int>> grows = {{3, 4, 5, 6}, {1, 2}, {8}, {7}};
  const std::vector<std::set<int>> gcols = {{3, 4, 7, 8}, {5, 6}, {2}, {1}};
  FineBtf f = btf(crane_sigma());
  std::vector<std::set<int>> covered_rows(4), covered_cols(4);
  for (int b = 0; b < f.n_blocks(); ++b) {
    std::vector<int> rows = f.block_rows(b), cols = f.block_cols(b);
    int home = -1;
    for (int gidx = 0; gidx < 4; ++gidx) {
      bool rin = std::all_of(rows.begin(), rows.end(),
                             [&](int r) { return grows[gidx].count(r) > 0; });
      if (rin) {
        CHECK(home == -1);
        home = gidx;
      }
    }
    REQUIRE(home != -1);
    for (int r : rows) covered_rows[home].insert(r);
    for (int c : cols) {
      CHECK(gcols[home].count(c) > 0);
      covered_cols[home].insert(c);
    }
  }
  CHECK(covered_rows == grows);
  CHECK(covered_cols == gcols);
}

TEST_CASE("merging the first four crane blocks breaks irreducibility") {
  // Rows f3..f6 against columns d, r, u1, u2: f5 and f6 see only {d, r}.
  IncidenceGraph merged(4, 4, {{1, 1}, {1, 3}, {2, 2}, {2, 4}, {3, 1}, {3, 2}, {4, 2}});
  CHECK_FALSE(check_strong_hall(merged));
}

TEST_CASE("strong Hall basics and cap") {
  CHECK(check_strong_hall(IncidenceGraph(1, 1, {{1, 1}})));
  CHECK(check_strong_hall(IncidenceGraph(2, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}})));
  CHECK_FALSE(check_strong_hall(IncidenceGraph(2, 2, {{1, 1}, {2, 2}})));
  std::vector<std::pair<int, int>> diag16;
  for (int i = 1; i <= 16; ++i) diag16.push_back({i, i});
  CHECK_THROWS_AS(check_strong_hall(IncidenceGraph(16, 16, diag16)), TooLarge);
}

TEST_CASE("fine decomposition invariants on random well-posed patterns") {
  std::mt19937_64 eng(23);
  std::uniform_int_distribution<int> size(1, 12);
  std::uniform_real_distribution<double> dens(0.2, 0.95);
  int decomposed = 0, multi_block = 0;
  for (int t = 0; t < 300; ++t) {
    SignatureMatrix m = random_sigma(eng, size(eng), dens(eng), 2);
    FineBtf f;
    try {
      f = btf(m);
    } catch (const StructurallyIllPosed& e) {
      // Deficiency witness: strictly more rows than their whole neighborhood.
      CHECK(e.witness.rows.size() > e.witness.cols.size());
      std::set<int> hood;
      for (int r : e.witness.rows)
        for (const auto& [c, order] : m.row(r)) hood.insert(c);
      CHECK(std::vector<int>(hood.begin(), hood.end()) == e.witness.cols);
      continue;
    }
    ++decomposed;
    if (f.n_blocks() > 1) ++multi_block;
    CHECK(is_block_upper(m, f));
    CHECK(diagonal_is_matched(m, f));
    CHECK(all_blocks_strong_hall(m, f));
    int covered = 0;
    for (int b = 0; b < f.n_blocks(); ++b) {
      CHECK(f.blocks[b].rows == f.blocks[b].cols);
      covered += f.blocks[b].rows.size();
    }
    CHECK(covered == m.size());
  }
  CHECK(decomposed > 100);
  CHECK(multi_block > 20);
}

TEST_CASE("btf witness on the fixture") {
  try {
    btf(read_sigma_file(read_file(fixture_path("illposed.sig"))));
    CHECK(false);
  } catch (const StructurallyIllPosed& e) {
    CHECK(e.witness.rows == std::vector<int>{1, 2});
    CHECK(e.witness.cols == std::vector<int>{1});
  }
}

TEST_CASE("fine decomposition rejects bad input") {
  IncidenceGraph rect(2, 3, {{1, 1}, {2, 2}});
  CHECK_THROWS_AS(fine_decompose(rect, maximum_matching(rect)), NotPerfectlyMatched);
  IncidenceGraph sq(2, 2, {{1, 1}});
  CHECK_THROWS_AS(fine_decompose(sq, maximum_matching(sq)), NotPerfectlyMatched);
}
