#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace werboot {

// A per-utterance ratio series cut into K consecutive blocks of d entries.
// Trailing entries that do not fill a block are dropped at construction and
// reported through `dropped`.
struct BlockedSeries {
  std::vector<double> z;
  std::size_t block_size = 0;   // d, >= 1
  std::size_t num_blocks = 0;   // K, >= 2
  std::size_t dropped = 0;
};

// Throws InvalidConfig when d < 1 and InsufficientBlocks when fewer than
// two full blocks fit.
BlockedSeries make_blocked_series(std::span<const double> z,
                                  std::size_t block_size);

// Blockwise variance estimator:
//   sigma2_hat = (d / K) * sum_k (block_mean_k - overall_mean)^2
// Nonnegative; zero exactly when all block means coincide.
double blockwise_variance(const BlockedSeries& series);

// Produces a Z series of length n from a derived seed. Implementations must
// be deterministic in (n, seed).
using SeriesGenerator =
    std::function<std::vector<double>(std::size_t n, std::uint64_t seed)>;

// Block-size rule d_n. `sqrt` is floor(sqrt(n)); `sqrt_aligned` additionally
// rounds to the nearest positive multiple of `align`, for lining estimator
// blocks up with a known generator block size; `fixed` ignores n.
struct BlockRule {
  enum class Kind { sqrt, sqrt_aligned, fixed };
  Kind kind = Kind::sqrt;
  std::size_t param = 0;  // align for sqrt_aligned, d for fixed

  std::size_t operator()(std::size_t n) const;
  std::string name() const;

  static BlockRule parse(const std::string& text);  // "sqrt" | "sqrt-aligned:A" | "fixed:D"
};

struct CurvePoint {
  std::size_t n = 0;
  std::size_t block_size = 0;
  std::size_t num_blocks = 0;
  std::size_t dropped = 0;
  double mean_sigma2 = 0.0;  // mean of sigma2_hat over the trials
  double sd_sigma2 = 0.0;    // spread of sigma2_hat over the trials
  double oracle_sigma2 = 0.0;
};

struct CurveConfig {
  std::vector<std::size_t> n_grid;
  BlockRule d_rule;
  std::size_t trials = 200;
  // The target n*Var(mean of Z) is estimated brute-force: generate
  // oracle_datasets fresh series of length oracle_n, take the sample
  // variance of their means, multiply by oracle_n. For generators with
  // i.i.d. blocks that product does not depend on n, so one reference n
  // serves the whole grid. 0 means "first grid entry".
  std::size_t oracle_datasets = 20000;
  std::size_t oracle_n = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

// For each grid n: draw `trials` series, compute sigma2_hat with block size
// d_rule(n), and report mean and spread next to the Monte Carlo oracle
// target. Trials use derived per-trial seeds, so the output is
// jobs-invariant.
std::vector<CurvePoint> consistency_curve(const SeriesGenerator& generator,
                                          const CurveConfig& config);

}  // namespace werboot
