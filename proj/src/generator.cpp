#include "daestruct/generator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "daestruct/errors.hpp"
#include "daestruct/offsets.hpp"

namespace daestruct {

GenConfig GenConfig::with_defaults(int block_size, int block_count, std::uint64_t seed) {
  GenConfig cfg;
  cfg.block_size = block_size;
  cfg.block_count = block_count;
  cfg.seed = seed;
  cfg.diag_values = {{0, 0.7}, {1, 0.1}, {2, 0.1}, {3, 0.1}};
  cfg.offdiag_values = {{std::nullopt, 0.925}, {0, 0.025}, {1, 0.025}, {2, 0.025}};
  return cfg;
}

const char* generator_algorithm_id() { return "mt19937_64/shift11-invcdf/row-major/v1"; }

namespace {

constexpr double kProbTolerance = 1e-12;

void check_distribution(const char* what, const std::vector<double>& probs) {
  if (probs.empty()) throw Error(std::string(what) + " template has no values");
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw Error(std::string(what) + " template has a negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kProbTolerance)
    throw Error(std::string(what) + " template probabilities do not sum to 1");
}

double next_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Inverse CDF over the listed probabilities, in listed order; the final
// value absorbs any floating-point remainder.
template <typename T>
const T& draw(std::mt19937_64& eng, const std::vector<std::pair<T, double>>& values) {
  double u = next_uniform(eng);
  double acc = 0.0;
  for (const auto& [value, p] : values) {
    acc += p;
    if (u < acc) return value;
  }
  return values.back().first;
}

}  // namespace

SignatureMatrix generate_sigma(const GenConfig& cfg) {
  const int N = cfg.block_size, p = cfg.block_count;
  if (N < 1 || p < 1) throw Error("generator needs block_size >= 1 and block_count >= 1");
  {
    std::vector<double> probs;
    for (const auto& [v, prob] : cfg.diag_values) {
      if (v < 0) throw Error("diagonal template values must be nonnegative");
      probs.push_back(prob);
    }
    check_distribution("diagonal", probs);
    probs.clear();
    for (const auto& [v, prob] : cfg.offdiag_values) {
      if (v && *v < 0) throw Error("superdiagonal template values must be nonnegative");
      probs.push_back(prob);
    }
    check_distribution("superdiagonal", probs);
  }

  std::mt19937_64 eng(cfg.seed);
  std::vector<std::int64_t> diag(static_cast<std::size_t>(N) * N);
  for (auto& cell : diag) cell = draw(eng, cfg.diag_values);
  std::vector<std::optional<std::int64_t>> offdiag(static_cast<std::size_t>(N) * N);
  for (auto& cell : offdiag) cell = draw(eng, cfg.offdiag_values);

  std::vector<SigmaTriplet> entries;
  entries.reserve(diag.size() * p + offdiag.size() * (p > 1 ? p - 1 : 0));
  for (int b = 0; b < p; ++b)
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        entries.push_back({b * N + r + 1, b * N + c + 1, diag[r * N + c]});
  for (int b = 0; b + 1 < p; ++b)
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        if (offdiag[r * N + c])
          entries.push_back({b * N + r + 1, (b + 1) * N + c + 1, *offdiag[r * N + c]});
  return SignatureMatrix::from_triplets(N * p, entries);
}

std::string write_sentinel_grid(const SignatureMatrix& m, std::int64_t sentinel) {
  const int n = m.size();
  std::string out;
  for (int i = 1; i <= n; ++i) {
    auto it = m.row(i).begin();
    const auto end = m.row(i).end();
    for (int j = 1; j <= n; ++j) {
      std::int64_t value = sentinel;
      if (it != end && it->first == j) {
        value = it->second;
        if (value == sentinel) throw Error("sentinel collides with a finite entry");
        ++it;
      }
      if (j > 1) out += ' ';
      out += std::to_string(value);
    }
    out += '\n';
  }
  return out;
}

std::pair<double, double> fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw InsufficientPoints("power-law fit needs at least 3 points");
  std::vector<double> lx, ly;
  for (const auto& [x, y] : points) {
    if (x <= 0.0) throw Error("power-law fit needs positive sizes");
    if (y <= 0.0) throw NonPositiveTime("power-law fit needs positive times");
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) throw Error("power-law fit needs at least two distinct sizes");
  const double nu = sxy / sxx;
  const double mu = std::exp(my - nu * mx);
  return {mu, nu};
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t instance_seed(std::uint64_t seed, int n, int trial) {
  return mix64(mix64(mix64(seed) ^ static_cast<std::uint64_t>(n)) ^
               static_cast<std::uint64_t>(trial));
}

}  // namespace

BenchResult run_bench(BenchMethod method, int block_size, const std::vector<int>& sizes,
                      int trials, std::uint64_t seed) {
  if (block_size < 1) throw Error("benchmark needs block_size >= 1");
  if (trials < 1) throw Error("benchmark needs at least one trial");
  if (sizes.empty()) throw Error("benchmark needs at least one size");
  std::vector<int> ns = sizes;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (int n : ns)
    if (n < block_size || n % block_size != 0)
      throw Error("every size must be a positive multiple of block_size");

  BenchResult result;
  result.method = method == BenchMethod::esmm ? "esmm" : "smm";
  for (int n : ns) {
    std::vector<double> times;
    for (int trial = 1; trial <= trials; ++trial) {
      GenConfig cfg = GenConfig::with_defaults(block_size, n / block_size,
                                               instance_seed(seed, n, trial));
      SignatureMatrix m = generate_sigma(cfg);
      auto start = std::chrono::steady_clock::now();
      AnalysisReport rep = method == BenchMethod::esmm ? analyze(m) : analyze_unblocked(m);
      double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (!rep.wellposed)
        throw InternalError("generated benchmark instance reported ill-posed");
      times.push_back(secs);
      result.samples.push_back({n, trial, secs});
    }
    std::vector<double> sorted = times;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    double median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    result.points.push_back({n, median});
  }
  auto [mu, nu] = fit_power_law(
      [&] {
        std::vector<std::pair<double, double>> pts;
        for (const auto& [n, t] : result.points) pts.push_back({static_cast<double>(n), t});
        return pts;
      }());
  result.fitted_mu = mu;
  result.fitted_nu = nu;
  return result;
}

std::string bench_csv(const BenchResult& result, int block_size, std::uint64_t seed) {
  std::string out = "method,N,n,trial,seconds\n";
  char line[160];
  for (const TrialSample& s : result.samples) {
    std::snprintf(line, sizeof line, "%s,%d,%d,%d,%.9e\n", result.method.c_str(), block_size,
                  s.n, s.trial, s.seconds);
    out += line;
  }
  std::snprintf(line, sizeof line, "# fit method=%s N=%d seed=%llu mu=%.6e nu=%.6f\n",
                result.method.c_str(), block_size, static_cast<unsigned long long>(seed),
                result.fitted_mu, result.fitted_nu);
  out += line;
  return out;
}

}  // namespace daestruct
