// daestruct: structural analysis of sparse DAE signature matrices.
//
// Subcommands: analyze (full pipeline to JSON/text), dm (decomposition
// diagnostics), gen (random block instances), bench (scaling comparison).
// Exit codes: 0 success, 1 structurally ill-posed input, 2 input error,
// 3 internal invariant violation.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "daestruct/btf.hpp"
#include "daestruct/dae.hpp"
#include "daestruct/errors.hpp"
#include "daestruct/generator.hpp"
#include "daestruct/offsets.hpp"
#include "daestruct/report.hpp"
#include "daestruct/sigma.hpp"
#include "json.hpp"

namespace {

using namespace daestruct;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open output file '" + path + "'");
  file << content;
  if (!file.good()) throw Error("failed writing output file '" + path + "'");
}

SignatureMatrix load_matrix(const std::string& path, const std::string& format) {
  const std::string text = read_input(path);
  if (format == "dae") return build_signature(parse_model(text));
  return read_sigma_file(text);
}

int cmd_analyze(const std::string& input, const std::string& format, bool no_btf,
                const std::string& output, bool timings) {
  SignatureMatrix m = load_matrix(input, format);
  AnalysisReport rep = no_btf ? analyze_unblocked(m) : analyze(m);
  if (output == "text") {
    std::cout << render_text(m, rep);
  } else {
    std::cout << report_to_json(make_report(m, rep, timings)) << "\n";
  }
  return rep.wellposed ? 0 : 1;
}

int cmd_dm(const std::string& input, const std::string& format) {
  SignatureMatrix m = load_matrix(input, format);
  IncidenceGraph g = IncidenceGraph::from_pattern(m);
  Matching match = maximum_matching(g);
  CoarseDecomposition coarse = coarse_decompose(g, match);

  nlohmann::json j;
  j["n_rows"] = g.n_rows();
  j["n_cols"] = g.n_cols();
  j["matching_size"] = match.size;
  j["components"] = nlohmann::json::array();
  for (const Component& comp : connected_components(g))
    j["components"].push_back({{"rows", comp.rows}, {"cols", comp.cols}});
  j["coarse"] = {{"HF", coarse.HF}, {"SF", coarse.SF}, {"VF", coarse.VF},
                 {"HX", coarse.HX}, {"SX", coarse.SX}, {"VX", coarse.VX}};

  // Fine decomposition of the well-determined part: the whole matrix when
  // perfectly matched, otherwise the square SF x SX corner.
  std::vector<int> rows, cols;
  if (match.size == m.size()) {
    for (int i = 1; i <= m.size(); ++i) rows.push_back(i);
    cols = rows;
  } else {
    rows = coarse.SF;
    cols = coarse.SX;
  }
  if (rows.empty()) {
    j["fine"] = nullptr;
  } else {
    std::vector<int> col_local(g.n_cols() + 1, 0);
    for (std::size_t k = 0; k < cols.size(); ++k) col_local[cols[k]] = static_cast<int>(k) + 1;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (int c : g.row_adj(rows[k]))
        if (col_local[c] != 0) edges.push_back({static_cast<int>(k) + 1, col_local[c]});
    IncidenceGraph sub(static_cast<int>(rows.size()), static_cast<int>(cols.size()), edges);
    Matching sub_match;
    sub_match.row_mate.resize(rows.size());
    sub_match.col_mate.resize(cols.size());
    sub_match.size = static_cast<int>(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      int mate = col_local[match.row_mate[rows[k] - 1]];
      sub_match.row_mate[k] = mate;
      sub_match.col_mate[mate - 1] = static_cast<int>(k) + 1;
    }
    FineBtf fine = fine_decompose(sub, sub_match);
    nlohmann::json blocks = nlohmann::json::array();
    for (int b = 0; b < fine.n_blocks(); ++b) {
      std::vector<int> brows, bcols;
      for (int local : fine.block_rows(b)) brows.push_back(rows[local - 1]);
      for (int local : fine.block_cols(b)) bcols.push_back(cols[local - 1]);
      std::sort(brows.begin(), brows.end());
      std::sort(bcols.begin(), bcols.end());
      blocks.push_back({{"rows", brows}, {"cols", bcols}});
    }
    std::vector<int> row_perm, col_perm;
    for (int local : fine.permutation.row_perm) row_perm.push_back(rows[local - 1]);
    for (int local : fine.permutation.col_perm) col_perm.push_back(cols[local - 1]);
    j["fine"] = {{"blocks", blocks}, {"row_perm", row_perm}, {"col_perm", col_perm}};
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_gen(int p, int N, std::uint64_t seed, const std::string& out, bool use_sentinel,
            std::int64_t sentinel) {
  SignatureMatrix m = generate_sigma(GenConfig::with_defaults(N, p, seed));
  std::string content;
  if (use_sentinel) {
    content = write_sentinel_grid(m, sentinel);
  } else {
    content = "# generator " + std::string(generator_algorithm_id()) + "\n";
    content += "# p " + std::to_string(p) + " N " + std::to_string(N) + " seed " +
               std::to_string(seed) + "\n";
    content += write_sigma_file(m);
  }
  write_output(out, content);
  return 0;
}

int cmd_bench(const std::string& method, int N, const std::vector<int>& sizes, int trials,
              const std::string& csv_path, std::uint64_t seed) {
  std::vector<BenchResult> results;
  if (method == "esmm" || method == "both")
    results.push_back(run_bench(BenchMethod::esmm, N, sizes, trials, seed));
  if (method == "smm" || method == "both")
    results.push_back(run_bench(BenchMethod::smm, N, sizes, trials, seed));

  std::string csv;
  for (std::size_t k = 0; k < results.size(); ++k) {
    std::string part = bench_csv(results[k], N, seed);
    if (k > 0) part.erase(0, part.find('\n') + 1);  // single header for combined output
    csv += part;
  }
  if (!csv_path.empty()) {
    write_output(csv_path, csv);
    char line[128];
    for (const BenchResult& r : results) {
      std::snprintf(line, sizeof line, "fit method=%s mu=%.6e nu=%.6f\n", r.method.c_str(),
                    r.fitted_mu, r.fitted_nu);
      std::cout << line;
    }
  } else {
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural analysis of sparse DAE signature matrices"};
  app.require_subcommand(1);

  std::string input, format = "sigma", output = "json";
  bool no_btf = false, timings = false;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Run the full structural analysis");
  analyze_cmd->add_option("input", input, "input file, or - for stdin")->required();
  analyze_cmd->add_option("--format", format, "input format")
      ->check(CLI::IsMember({"sigma", "dae"}));
  analyze_cmd->add_option("--output", output, "output mode")
      ->check(CLI::IsMember({"json", "text"}));
  analyze_cmd->add_flag("--no-btf", no_btf, "skip the decomposition, solve globally");
  analyze_cmd->add_flag("--timings", timings, "include per-phase timings in the report");

  std::string dm_input, dm_format = "sigma";
  CLI::App* dm_cmd = app.add_subcommand("dm", "Print decomposition diagnostics");
  dm_cmd->add_option("input", dm_input, "input file, or - for stdin")->required();
  dm_cmd->add_option("--format", dm_format, "input format")
      ->check(CLI::IsMember({"sigma", "dae"}));

  int gen_p = 0, gen_N = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::int64_t sentinel = 0;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random block instance");
  gen_cmd->add_option("--p", gen_p, "number of diagonal blocks")->required();
  gen_cmd->add_option("--N", gen_N, "block size")->required();
  gen_cmd->add_option("--seed", gen_seed, "random seed")->required();
  gen_cmd->add_option("--out", gen_out, "output file (default stdout)");
  CLI::Option* sentinel_opt = gen_cmd->add_option(
      "--sentinel", sentinel, "write a dense grid with this placeholder for absent entries");

  std::string bench_method = "both", bench_csv_path;
  int bench_N = 10, bench_trials = 3;
  std::vector<int> bench_sizes = {400, 800, 1200, 1600};
  std::uint64_t bench_seed = 1;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Compare blocked and unblocked analysis");
  bench_cmd->add_option("--method", bench_method, "esmm, smm or both")
      ->check(CLI::IsMember({"esmm", "smm", "both"}));
  bench_cmd->add_option("--N", bench_N, "block size");
  bench_cmd->add_option("--sizes", bench_sizes, "matrix sizes")->delimiter(',');
  bench_cmd->add_option("--trials", bench_trials, "trials per size");
  bench_cmd->add_option("--csv", bench_csv_path, "CSV output file (default stdout)");
  bench_cmd->add_option("--seed", bench_seed, "random seed");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(analyze_cmd))
      return cmd_analyze(input, format, no_btf, output, timings);
    if (app.got_subcommand(dm_cmd)) return cmd_dm(dm_input, dm_format);
    if (app.got_subcommand(gen_cmd))
      return cmd_gen(gen_p, gen_N, gen_seed, gen_out, sentinel_opt->count() > 0, sentinel);
    if (app.got_subcommand(bench_cmd))
      return cmd_bench(bench_method, bench_N, bench_sizes, bench_trials, bench_csv_path,
                       bench_seed);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const daestruct::StructurallyIllPosed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const daestruct::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const daestruct::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
