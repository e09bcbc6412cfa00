#include <string>
#include <vector>

#include "daestruct/errors.hpp"
#include "daestruct/offsets.hpp"
#include "daestruct/report.hpp"
#include "daestruct/sigma.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace daestruct;
using namespace testutil;

namespace {

const std::vector<std::int64_t> kCraneC = {2, 2, 0, 0, 2, 2, 4, 4};
const std::vector<std::int64_t> kCraneD = {4, 4, 2, 2, 2, 2, 0, 0};

SignatureMatrix illposed_sigma() { return sigma_from_grid({{0, -1}, {0, -1}}); }

}  // namespace

TEST_CASE("make_report flattens the crane analysis") {
  SignatureMatrix m = crane_sigma(true);
  AnalysisReport rep = analyze(m);
  ReportDocument doc = make_report(m, rep);

  CHECK(doc.n == 8);
  CHECK(doc.wellposed);
  CHECK_FALSE(doc.witness.has_value());
  const std::vector<ReportBlock> blocks = {{{3}, {7}}, {{4}, {8}}, {{5}, {3}}, {{6}, {4}},
                                           {{1, 2}, {5, 6}}, {{7}, {1}}, {{8}, {2}}};
  CHECK(doc.blocks == blocks);
  const std::vector<std::pair<int, int>> transversal = {{1, 6}, {2, 5}, {3, 7}, {4, 8},
                                                        {5, 3}, {6, 4}, {7, 1}, {8, 2}};
  CHECK(doc.transversal == transversal);
  CHECK(doc.transversal_value == 0);
  CHECK(doc.c == kCraneC);
  CHECK(doc.d == kCraneD);
  CHECK(doc.structural_index == 5);
  CHECK(doc.jacobian_pattern == rep.jacobian_pattern);
  CHECK(doc.jacobian_pattern.size() == 17);
  CHECK(doc.iterations_q == 3);
  CHECK(doc.row_labels == std::vector<std::string>{"f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8"});
  CHECK(doc.col_labels == std::vector<std::string>{"x", "z", "d", "r", "theta", "tau", "u1", "u2"});
  CHECK_FALSE(doc.timings.has_value());

  ReportDocument timed = make_report(m, rep, true);
  REQUIRE(timed.timings.has_value());
  CHECK(timed.timings->btf_seconds >= 0.0);
  CHECK(timed.timings->transversal_seconds >= 0.0);
  CHECK(timed.timings->offsets_seconds >= 0.0);

  SignatureMatrix bare = crane_sigma(false);
  ReportDocument unlabeled = make_report(bare, analyze(bare));
  CHECK(unlabeled.row_labels.empty());
  CHECK(unlabeled.col_labels.empty());
}

TEST_CASE("reports survive a JSON round trip byte-for-byte") {
  SignatureMatrix m = crane_sigma(true);
  AnalysisReport rep = analyze(m);

  ReportDocument doc = make_report(m, rep);
  std::string text = report_to_json(doc);
  CHECK(report_to_json(doc) == text);
  CHECK(report_from_json(text) == doc);
  CHECK(report_to_json(report_from_json(text)) == text);

  // Keys come out alphabetically, so serialization is order-stable.
  CHECK(text.rfind("{\n  \"blocks\":", 0) == 0);

  ReportDocument timed = make_report(m, rep, true);
  CHECK(report_from_json(report_to_json(timed)) == timed);

  SignatureMatrix bad = illposed_sigma();
  ReportDocument sick = make_report(bad, analyze(bad));
  REQUIRE(sick.witness.has_value());
  CHECK(sick.witness->rows == std::vector<int>{1, 2});
  CHECK(sick.witness->cols == std::vector<int>{1});
  CHECK(report_from_json(report_to_json(sick)) == sick);
}

TEST_CASE("report_from_json rejects malformed documents") {
  CHECK_THROWS_AS(report_from_json("not json at all"), ParseError);
  CHECK_THROWS_AS(report_from_json("{}"), ParseError);
  const char* bad_pairs =
      "{\"blocks\": [], \"c\": [], \"col_labels\": [], \"d\": [], \"iterations_q\": 0,"
      " \"jacobian_pattern\": [], \"n\": 0, \"row_labels\": [], \"structural_index\": 0,"
      " \"transversal\": [[1], [2]], \"transversal_value\": 0, \"wellposed\": true}";
  CHECK_THROWS_WITH_AS(report_from_json(bad_pairs),
                       "line 0: expected an array of [row, col] pairs", ParseError);
}

TEST_CASE("render_text draws the permuted grid with block ruling") {
  SignatureMatrix m = sigma_from_grid({{1, 0}, {0, -1}});
  AnalysisReport rep = analyze(m);
  CHECK(render_text(m, rep) ==
        "n: 2\n"
        "blocks: 2 (sizes 1 1)\n"
        "transversal value: 0\n"
        "c: 0 1\n"
        "d: 1 0\n"
        "structural index: 2\n"
        "iterations: 2\n"
        "jacobian entries: 3\n"
        "  | 2 | 1 |\n"
        "-----------\n"
        "1 | 0 | 1 |\n"
        "-----------\n"
        "2 | . | 0 |\n"
        "-----------\n");
}

TEST_CASE("render_text uses labels and groups coupled columns") {
  SignatureMatrix m = crane_sigma(true);
  std::string text = render_text(m, analyze(m));
  CHECK(text.find("blocks: 7 (sizes 1 1 1 1 2 1 1)") != std::string::npos);
  CHECK(text.find("structural index: 5") != std::string::npos);
  CHECK(text.find("| u1 | u2 |") != std::string::npos);
  CHECK(text.find("| theta tau |") != std::string::npos);
}

TEST_CASE("render_text reports ill-posedness with the witness") {
  SignatureMatrix bare = illposed_sigma();
  CHECK(render_text(bare, analyze(bare)) ==
        "structurally ill-posed\n"
        "witness rows: 1 2\n"
        "witness cols: 1\n");

  SignatureMatrix labeled = SignatureMatrix::from_triplets(
      2, {{1, 1, 0}, {2, 1, 0}}, {"ra", "rb"}, {"ca", "cb"});
  CHECK(render_text(labeled, analyze(labeled)) ==
        "structurally ill-posed\n"
        "witness rows: ra rb\n"
        "witness cols: ca\n");
}

TEST_CASE("render_text omits the grid past 60 rows") {
  std::vector<SigmaTriplet> diag;
  for (int i = 1; i <= 61; ++i) diag.push_back({i, i, 0});
  SignatureMatrix m = SignatureMatrix::from_triplets(61, diag);
  std::string text = render_text(m, analyze(m));
  CHECK(text.find("matrix larger than 60, grid omitted\n") != std::string::npos);
  CHECK(text.find("---") == std::string::npos);
  CHECK(text.find(" | ") == std::string::npos);
}
