// Serialization of analysis results: a flat document with deterministic
// JSON form (sorted keys, sorted index lists) and a human-readable text
// rendering of the permuted signature matrix with block separators.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "daestruct/offsets.hpp"
#include "daestruct/sigma.hpp"

namespace daestruct {

struct ReportBlock {
  std::vector<int> rows;  // original indices, sorted
  std::vector<int> cols;

  friend bool operator==(const ReportBlock&, const ReportBlock&) = default;
};

struct ReportTimings {
  double btf_seconds = 0.0;
  double transversal_seconds = 0.0;
  double offsets_seconds = 0.0;

  friend bool operator==(const ReportTimings&, const ReportTimings&) = default;
};

struct ReportDocument {
  int n = 0;
  bool wellposed = false;
  std::optional<IllPosedWitness> witness;
  std::vector<ReportBlock> blocks;
  std::vector<std::pair<int, int>> transversal;  // (row, col), sorted by row
  std::int64_t transversal_value = 0;
  std::vector<std::int64_t> c;
  std::vector<std::int64_t> d;
  std::int64_t structural_index = 0;
  std::vector<std::pair<int, int>> jacobian_pattern;  // sorted (row, col)
  int iterations_q = 0;
  std::vector<std::string> row_labels;  // empty when unlabeled
  std::vector<std::string> col_labels;
  std::optional<ReportTimings> timings;  // emitted only on request

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

ReportDocument make_report(const SignatureMatrix& m, const AnalysisReport& analysis,
                           bool include_timings = false);

// Deterministic: two calls on equal documents yield identical bytes.
std::string report_to_json(const ReportDocument& doc);
ReportDocument report_from_json(const std::string& json_text);

// Permuted sigma with ASCII block ruling, plus the summary lines. Matrices
// larger than 60 print the summary with a truncation notice instead of the
// grid.
std::string render_text(const SignatureMatrix& m, const AnalysisReport& analysis);

}  // namespace daestruct
