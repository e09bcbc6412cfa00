#include "daestruct/report.hpp"

#include <algorithm>

#include "daestruct/errors.hpp"
#include "json.hpp"

namespace daestruct {

ReportDocument make_report(const SignatureMatrix& m, const AnalysisReport& analysis,
                           bool include_timings) {
  ReportDocument doc;
  doc.n = m.size();
  doc.wellposed = analysis.wellposed;
  if (analysis.witness) {
    IllPosedWitness w = *analysis.witness;
    std::sort(w.rows.begin(), w.rows.end());
    std::sort(w.cols.begin(), w.cols.end());
    doc.witness = std::move(w);
  }
  for (int b = 0; b < analysis.btf.n_blocks(); ++b) {
    ReportBlock block{analysis.btf.block_rows(b), analysis.btf.block_cols(b)};
    std::sort(block.rows.begin(), block.rows.end());
    std::sort(block.cols.begin(), block.cols.end());
    doc.blocks.push_back(std::move(block));
  }
  for (int i = 1; i <= static_cast<int>(analysis.transversal.row_to_col.size()); ++i) {
    int j = analysis.transversal.row_to_col[i - 1];
    if (j != 0) doc.transversal.push_back({i, j});
  }
  doc.transversal_value = analysis.transversal.value;
  doc.c = analysis.offsets.c;
  doc.d = analysis.offsets.d;
  doc.structural_index = analysis.structural_index;
  doc.jacobian_pattern = analysis.jacobian_pattern;
  doc.iterations_q = analysis.iterations_q;
  if (m.has_labels()) {
    doc.row_labels = m.row_labels();
    doc.col_labels = m.col_labels();
  }
  if (include_timings)
    doc.timings = ReportTimings{analysis.timings.btf_seconds,
                                analysis.timings.transversal_seconds,
                                analysis.timings.offsets_seconds};
  return doc;
}

namespace {

nlohmann::json pairs_to_json(const std::vector<std::pair<int, int>>& pairs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [a, b] : pairs) arr.push_back({a, b});
  return arr;
}

std::vector<std::pair<int, int>> pairs_from_json(const nlohmann::json& arr) {
  std::vector<std::pair<int, int>> out;
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2)
      throw ParseError(0, "expected an array of [row, col] pairs");
    out.push_back({item[0].get<int>(), item[1].get<int>()});
  }
  return out;
}

}  // namespace

std::string report_to_json(const ReportDocument& doc) {
  nlohmann::json j;
  j["n"] = doc.n;
  j["wellposed"] = doc.wellposed;
  if (doc.witness)
    j["witness"] = {{"rows", doc.witness->rows}, {"cols", doc.witness->cols}};
  j["blocks"] = nlohmann::json::array();
  for (const ReportBlock& b : doc.blocks)
    j["blocks"].push_back({{"rows", b.rows}, {"cols", b.cols}});
  j["transversal"] = pairs_to_json(doc.transversal);
  j["transversal_value"] = doc.transversal_value;
  j["c"] = doc.c;
  j["d"] = doc.d;
  j["structural_index"] = doc.structural_index;
  j["jacobian_pattern"] = pairs_to_json(doc.jacobian_pattern);
  j["iterations_q"] = doc.iterations_q;
  j["row_labels"] = doc.row_labels;
  j["col_labels"] = doc.col_labels;
  if (doc.timings)
    j["timings"] = {{"btf_seconds", doc.timings->btf_seconds},
                    {"transversal_seconds", doc.timings->transversal_seconds},
                    {"offsets_seconds", doc.timings->offsets_seconds}};
  return j.dump(2);
}

ReportDocument report_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, e.what());
  }
  try {
    ReportDocument doc;
    doc.n = j.at("n").get<int>();
    doc.wellposed = j.at("wellposed").get<bool>();
    if (j.contains("witness")) {
      IllPosedWitness w;
      w.rows = j["witness"].at("rows").get<std::vector<int>>();
      w.cols = j["witness"].at("cols").get<std::vector<int>>();
      doc.witness = std::move(w);
    }
    for (const auto& b : j.at("blocks"))
      doc.blocks.push_back({b.at("rows").get<std::vector<int>>(),
                            b.at("cols").get<std::vector<int>>()});
    doc.transversal = pairs_from_json(j.at("transversal"));
    doc.transversal_value = j.at("transversal_value").get<std::int64_t>();
    doc.c = j.at("c").get<std::vector<std::int64_t>>();
    doc.d = j.at("d").get<std::vector<std::int64_t>>();
    doc.structural_index = j.at("structural_index").get<std::int64_t>();
    doc.jacobian_pattern = pairs_from_json(j.at("jacobian_pattern"));
    doc.iterations_q = j.at("iterations_q").get<int>();
    doc.row_labels = j.at("row_labels").get<std::vector<std::string>>();
    doc.col_labels = j.at("col_labels").get<std::vector<std::string>>();
    if (j.contains("timings"))
      doc.timings = ReportTimings{j["timings"].at("btf_seconds").get<double>(),
                                  j["timings"].at("transversal_seconds").get<double>(),
                                  j["timings"].at("offsets_seconds").get<double>()};
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, e.what());
  }
}

namespace {

std::string name_of(const std::vector<std::string>& labels, int index) {
  if (!labels.empty()) return labels[index - 1];
  return std::to_string(index);
}

}  // namespace

std::string render_text(const SignatureMatrix& m, const AnalysisReport& analysis) {
  std::string out;
  if (!analysis.wellposed) {
    out += "structurally ill-posed\n";
    if (analysis.witness) {
      out += "witness rows:";
      for (int r : analysis.witness->rows) out += " " + name_of(m.row_labels(), r);
      out += "\nwitness cols:";
      for (int c : analysis.witness->cols) out += " " + name_of(m.col_labels(), c);
      out += "\n";
    }
    return out;
  }

  const int n = m.size();
  out += "n: " + std::to_string(n) + "\n";
  out += "blocks: " + std::to_string(analysis.btf.n_blocks()) + " (sizes";
  for (const BtfBlock& b : analysis.btf.blocks) out += " " + std::to_string(b.rows.size());
  out += ")\n";
  out += "transversal value: " + std::to_string(analysis.transversal.value) + "\n";
  out += "c:";
  for (std::int64_t v : analysis.offsets.c) out += " " + std::to_string(v);
  out += "\nd:";
  for (std::int64_t v : analysis.offsets.d) out += " " + std::to_string(v);
  out += "\nstructural index: " + std::to_string(analysis.structural_index) + "\n";
  out += "iterations: " + std::to_string(analysis.iterations_q) + "\n";
  out += "jacobian entries: " + std::to_string(analysis.jacobian_pattern.size()) + "\n";

  if (n > 60) {
    out += "matrix larger than 60, grid omitted\n";
    return out;
  }

  // Permuted grid with one separator column/line per block boundary.
  const auto& rp = analysis.btf.permutation.row_perm;
  const auto& cp = analysis.btf.permutation.col_perm;
  std::vector<std::string> col_names(n), row_names(n);
  std::vector<std::size_t> width(n);
  for (int k = 0; k < n; ++k) {
    col_names[k] = name_of(m.col_labels(), cp[k]);
    row_names[k] = name_of(m.row_labels(), rp[k]);
    width[k] = col_names[k].size();
  }
  std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      auto order = m.order(rp[r], cp[k]);
      cells[r][k] = order ? std::to_string(*order) : ".";
      width[k] = std::max(width[k], cells[r][k].size());
    }
  std::size_t row_name_width = 0;
  for (const std::string& s : row_names) row_name_width = std::max(row_name_width, s.size());

  auto pad = [](const std::string& s, std::size_t w) {
    return std::string(w - s.size(), ' ') + s;
  };
  std::string header = std::string(row_name_width, ' ');
  for (int k = 0; k < n; ++k) {
    header += analysis.btf.block_of_col[k] != (k ? analysis.btf.block_of_col[k - 1] : -1)
                  ? " | "
                  : " ";
    header += pad(col_names[k], width[k]);
  }
  header += " |";
  out += header + "\n";
  std::string ruler(header.size(), '-');
  for (int r = 0; r < n; ++r) {
    if (r == 0 || analysis.btf.block_of_row[r] != analysis.btf.block_of_row[r - 1])
      out += ruler + "\n";
    std::string line = pad(row_names[r], row_name_width);
    for (int k = 0; k < n; ++k) {
      line += analysis.btf.block_of_col[k] != (k ? analysis.btf.block_of_col[k - 1] : -1)
                  ? " | "
                  : " ";
      line += pad(cells[r][k], width[k]);
    }
    line += " |";
    out += line + "\n";
  }
  out += ruler + "\n";
  return out;
}

}  // namespace daestruct
