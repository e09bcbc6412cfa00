#include "daestruct/offsets.hpp"

#include <random>

#include "doctest.h"
#include "testutil.hpp"

using namespace daestruct;
using namespace testutil;

namespace {

FineBtf single_block(int n) {
  FineBtf f;
  f.permutation = Permutation::identity(n);
  f.blocks.push_back({{1, n + 1}, {1, n + 1}});
  f.block_of_row.assign(n, 0);
  f.block_of_col.assign(n, 0);
  return f;
}

const std::vector<std::int64_t> crane_c = {2, 2, 0, 0, 2, 2, 4, 4};
const std::vector<std::int64_t> crane_d = {4, 4, 2, 2, 2, 2, 0, 0};

}  // namespace

TEST_CASE("crane offsets via the global fixed point") {
  SignatureMatrix m = crane_sigma();
  Assignment t = max_value_transversal(m);
  std::vector<OffsetVectors> trace;
  FixedPointRun run = global_offsets_fixed_point(m, t, &trace);
  CHECK(run.offsets.c == crane_c);
  CHECK(run.offsets.d == crane_d);
  CHECK(run.sweeps == 5);
  REQUIRE(static_cast<int>(trace.size()) == run.sweeps);
  CHECK(trace.back() == run.offsets);
  // The iteration only ever raises offsets.
  for (std::size_t s = 1; s < trace.size(); ++s)
    for (int k = 0; k < 8; ++k) {
      CHECK(trace[s].c[k] >= trace[s - 1].c[k]);
      CHECK(trace[s].d[k] >= trace[s - 1].d[k]);
    }
  CHECK(structural_index(run.offsets) == 5);
}

TEST_CASE("textbook two-by-two fixed point") {
  SignatureMatrix m = sigma_from_grid({{1, 0}, {0, -1}});
  Assignment t = max_value_transversal(m);
  CHECK(t.row_to_col == std::vector<int>{2, 1});
  FixedPointRun run = global_offsets_fixed_point(m, t);
  CHECK(run.offsets.c == std::vector<std::int64_t>{0, 1});
  CHECK(run.offsets.d == std::vector<std::int64_t>{1, 0});
  CHECK(run.sweeps == 2);
}

TEST_CASE("already-canonical start converges in one sweep") {
  SignatureMatrix m = sigma_from_grid({{0, -1}, {-1, 0}});
  FixedPointRun run = global_offsets_fixed_point(m, max_value_transversal(m));
  CHECK(run.sweeps == 1);
  CHECK(run.offsets.c == std::vector<std::int64_t>{0, 0});
  CHECK(run.offsets.d == std::vector<std::int64_t>{0, 0});
}

TEST_CASE("non-optimal transversals are detected, not looped on") {
  // Anti-diagonal assignment of a diagonally dominant matrix never settles.
  SignatureMatrix slow = sigma_from_grid({{1, 0}, {0, 1}});
  Assignment bad{{2, 1}, {2, 1}, 0};
  CHECK_THROWS_AS(global_offsets_fixed_point(slow, bad), NotOptimalTransversal);
  SignatureMatrix fast = sigma_from_grid({{5, 0}, {0, 5}});
  CHECK_THROWS_AS(global_offsets_fixed_point(fast, bad), NotOptimalTransversal);
}

TEST_CASE("fixed point validates the transversal") {
  SignatureMatrix m = crane_sigma();
  Assignment short_t{{1, 2}, {1, 2}, 0};
  CHECK_THROWS_AS(global_offsets_fixed_point(m, short_t), NotPerfectlyMatched);
  Assignment dup{{1, 1, 2, 3, 4, 5, 6, 7}, {}, 0};
  CHECK_THROWS_AS(global_offsets_fixed_point(m, dup), NotPerfectlyMatched);
  Assignment offpattern{{2, 1, 3, 4, 5, 6, 7, 8}, {}, 0};  // (1,2) is absent
  CHECK_THROWS_AS(global_offsets_fixed_point(m, offpattern), NotPerfectlyMatched);
}

TEST_CASE("offsets equal the elementwise smallest optimal duals") {
  std::mt19937_64 eng(310);
  std::uniform_int_distribution<int> size(1, 4);
  std::uniform_real_distribution<double> dens(0.3, 1.0);
  int done = 0;
  while (done < 120) {
    SignatureMatrix m = random_sigma(eng, size(eng), dens(eng), 2);
    Assignment t;
    try {
      t = max_value_transversal(m);
    } catch (const StructurallyIllPosed&) {
      continue;
    }
    ++done;
    FixedPointRun run = global_offsets_fixed_point(m, t);
    CHECK(run.offsets == dual_optimal_meet(m));
  }
}

TEST_CASE("block offsets on the crane equal the global ones in fewer passes") {
  SignatureMatrix m = crane_sigma();
  AnalysisReport rep = analyze(m);
  REQUIRE(rep.wellposed);
  CHECK(rep.offsets.c == crane_c);
  CHECK(rep.offsets.d == crane_d);
  CHECK(rep.iterations_q == 3);
  CHECK(rep.structural_index == 5);
  CHECK(rep.transversal.value == 0);
  CHECK(rep.transversal.row_to_col == std::vector<int>{6, 5, 7, 8, 3, 4, 1, 2});

  AnalysisReport flat = analyze_unblocked(m);
  REQUIRE(flat.wellposed);
  CHECK(flat.offsets == rep.offsets);
  CHECK(flat.iterations_q == 5);
  CHECK(flat.structural_index == 5);
  CHECK(flat.btf.n_blocks() == 1);
}

TEST_CASE("a single block runs exactly like the global fixed point") {
  SignatureMatrix m = crane_sigma();
  Assignment t = max_value_transversal(m);
  FixedPointRun global = global_offsets_fixed_point(m, t);
  FixedPointRun blocked = block_offsets(m, single_block(8), {t});
  CHECK(blocked.offsets == global.offsets);
  CHECK(blocked.sweeps == global.sweeps);
}

TEST_CASE("block offsets validate the decomposition") {
  SignatureMatrix m = crane_sigma();
  FineBtf deco = btf(m);
  CHECK_THROWS_AS(block_offsets(m, deco, {}), SizeMismatch);
  FineBtf half = single_block(4);
  CHECK_THROWS_AS(block_offsets(m, half, {Assignment{{1, 2, 3, 4}, {1, 2, 3, 4}, 0}}),
                  SizeMismatch);
  Assignment dup{{1, 1, 2, 3, 4, 5, 6, 7}, {}, 0};
  CHECK_THROWS_AS(block_offsets(m, single_block(8), {dup}), NotPerfectlyMatched);
}

TEST_CASE("crane structural Jacobian pattern") {
  SignatureMatrix m = crane_sigma();
  AnalysisReport rep = analyze(m);
  std::vector<std::pair<int, int>> want = {
      {1, 1}, {1, 5}, {1, 6}, {2, 2}, {2, 5}, {2, 6}, {3, 3}, {3, 7}, {4, 4},
      {4, 8}, {5, 3}, {5, 4}, {5, 5}, {6, 4}, {6, 5}, {7, 1}, {8, 2}};
  CHECK(rep.jacobian_pattern == want);
  CHECK(jacobian_pattern(m, rep.offsets) == want);
  CHECK_THROWS_AS(jacobian_pattern(m, OffsetVectors{{0}, {0}}), SizeMismatch);
}

TEST_CASE("structural index cases") {
  CHECK(structural_index({{0, 0}, {1, 2}}) == 0);        // no zero column offset
  CHECK(structural_index({{0, 0}, {1, 0}}) == 1);        // zero present
  CHECK(structural_index({{3, 1}, {2, 2}}) == 3);
  SignatureMatrix ode = sigma_from_grid({{1}});
  AnalysisReport rep = analyze(ode);
  CHECK(rep.offsets.c == std::vector<std::int64_t>{0});
  CHECK(rep.offsets.d == std::vector<std::int64_t>{1});
  CHECK(rep.structural_index == 0);
}

TEST_CASE("coupling can break per-block offset rigidity") {
  // The same diagonal block appears twice; the coupling entry lifts the
  // second copy's offsets by a non-constant shift, so block results cannot
  // in general be translated copies of the standalone ones.
  SignatureMatrix m = sigma_from_grid({{1, 0, -1, -1},
                                       {0, 0, -1, 2},
                                       {-1, -1, 1, 0},
                                       {-1, -1, 0, 0}});
  AnalysisReport rep = analyze(m);
  REQUIRE(rep.wellposed);
  CHECK(rep.offsets.c == std::vector<std::int64_t>{0, 0, 1, 2});
  CHECK(rep.offsets.d == std::vector<std::int64_t>{1, 0, 2, 2});
  CHECK(rep.offsets == analyze_unblocked(m).offsets);

  SignatureMatrix corner = sigma_from_grid({{1, 0}, {0, 0}});
  AnalysisReport alone = analyze(corner);
  std::vector<std::int64_t> shift = {rep.offsets.c[2] - alone.offsets.c[0],
                                     rep.offsets.c[3] - alone.offsets.c[1]};
  CHECK(shift[0] != shift[1]);
}

TEST_CASE("blocked and unblocked pipelines agree on random instances") {
  std::mt19937_64 eng(555);
  std::uniform_int_distribution<int> size(1, 10);
  std::uniform_real_distribution<double> dens(0.25, 1.0);
  int done = 0;
  while (done < 150) {
    SignatureMatrix m = random_sigma(eng, size(eng), dens(eng), 3);
    AnalysisReport a = analyze(m);
    AnalysisReport b = analyze_unblocked(m);
    CHECK(a.wellposed == b.wellposed);
    if (!a.wellposed) {
      REQUIRE(a.witness.has_value());
      REQUIRE(b.witness.has_value());
      continue;
    }
    ++done;
    CHECK(a.offsets == b.offsets);
    CHECK(a.transversal.value == b.transversal.value);
    CHECK(a.structural_index == b.structural_index);
    CHECK(a.jacobian_pattern == b.jacobian_pattern);
    // The Jacobian pattern keeps every transversal pair, hence every row
    // and column.
    std::vector<char> row_hit(m.size() + 1, 0), col_hit(m.size() + 1, 0);
    for (const auto& [i, j] : a.jacobian_pattern) {
      row_hit[i] = 1;
      col_hit[j] = 1;
    }
    for (int k = 1; k <= m.size(); ++k) {
      CHECK(row_hit[k]);
      CHECK(col_hit[k]);
    }
  }
}
