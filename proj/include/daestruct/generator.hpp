// Random block-structured signature matrices for benchmarking, power-law
// fitting of timing data, and the benchmark driver comparing the block
// decomposition pipeline (esmm) against the unblocked baseline (smm).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "daestruct/sigma.hpp"

namespace daestruct {

struct GenConfig {
  int block_size = 0;   // N
  int block_count = 0;  // p; the matrix is n = N * p
  std::uint64_t seed = 0;

  // Diagonal template cells: always finite, sampled from these values.
  std::vector<std::pair<std::int64_t, double>> diag_values;
  // Superdiagonal template cells: nullopt = absent.
  std::vector<std::pair<std::optional<std::int64_t>, double>> offdiag_values;

  // diag {0,1,2,3} at {0.7,0.1,0.1,0.1}; offdiag {absent,0,1,2} at
  // {0.925,0.025,0.025,0.025}.
  static GenConfig with_defaults(int block_size, int block_count, std::uint64_t seed);
};

// Identifier of the sampling scheme, recorded in generated file metadata:
// mt19937_64 seeded with cfg.seed, u = (next() >> 11) * 2^-53, inverse CDF
// over the value list in listed order, cells visited row-major, the
// diagonal template drawn before the superdiagonal one.
const char* generator_algorithm_id();

// One N x N diagonal template replicated on all p diagonal blocks, one
// superdiagonal template replicated on all p-1 superdiagonal blocks,
// everything else absent. Deterministic function of cfg.
SignatureMatrix generate_sigma(const GenConfig& cfg);

// Dense n x n grid with `sentinel` in place of absent entries, one row per
// line. Export-only interop form; the sigma reader does not accept it.
std::string write_sentinel_grid(const SignatureMatrix& m, std::int64_t sentinel);

// Least-squares fit of t ~ mu * n^nu on log-log data. Needs >= 3 points
// (InsufficientPoints) with positive times (NonPositiveTime).
// Returns (mu, nu).
std::pair<double, double> fit_power_law(const std::vector<std::pair<double, double>>& points);

enum class BenchMethod { esmm, smm };

struct TrialSample {
  int n;
  int trial;
  double seconds;
};

struct BenchResult {
  std::string method;
  std::vector<std::pair<int, double>> points;  // (n, median seconds), ascending n
  double fitted_mu = 0.0;
  double fitted_nu = 0.0;
  std::vector<TrialSample> samples;            // every trial, for CSV export
};

// For each n in sizes (each divisible by block_size): generate trials
// instances (seeds derived from seed, n and the trial number only, so both
// methods see identical instances) and time the analysis alone, excluding
// generation. Fits a power law through the per-size medians.
BenchResult run_bench(BenchMethod method, int block_size, const std::vector<int>& sizes,
                      int trials, std::uint64_t seed = 1);

// Header "method,N,n,trial,seconds", one row per trial, then the fit
// summary as a trailing `# fit ...` comment line.
std::string bench_csv(const BenchResult& result, int block_size, std::uint64_t seed);

}  // namespace daestruct
