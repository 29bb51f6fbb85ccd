#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "werboot/data.hpp"
#include "werboot/rng.hpp"

namespace werboot {

// Settings for the block-correlated error-count generator: n utterances of
// m words each, split into consecutive blocks of d utterances. Within a
// block, error counts are coupled through a Gaussian copula with
// equicorrelation rho; marginally every count stays Binom(m, wer).
struct SynthConfig {
  std::uint32_t utterances = 3000;       // n, must be divisible by block_size
  std::uint32_t words_per_utterance = 100;  // m
  double wer_a = 0.10;
  double wer_b = 0.095;
  std::uint32_t block_size = 30;  // d
  double rho = 0.0;               // in [0, 1)
  std::uint64_t seed = 0;
};

// Throws InvalidConfig on out-of-range fields or when block_size does not
// divide utterances.
void validate(const SynthConfig& config);

// Fills `out` with one draw from N(0, Sigma_d), Sigma_d the equicorrelation
// matrix with off-diagonal rho. One-factor construction
//   v_s = sqrt(rho) * w_0 + sqrt(1 - rho) * w_s
// with w_0..w_d independent standard normals, which realizes Sigma_d
// exactly in O(d). Normals come from the inverse CDF of stream uniforms.
void sample_equicorrelated_gaussians(std::span<double> out, double rho,
                                     SplitMix64& rng);

// Smallest e in [0, m] with BinomCDF(e; m, p) >= u. The CDF is accumulated
// through the multiplicative pmf recurrence in long double; requires
// m * ln(1/(1-p)) small enough that the pmf at zero does not underflow
// (ample for utterance-sized m).
std::uint32_t binomial_quantile(double u, std::uint32_t m, double p);

// Per-utterance error counts for both systems, block-major order. Each
// (block, system) pair draws from its own derived stream, so blocks and
// systems are mutually independent and generation parallelizes without
// changing the output.
struct ErrorCounts {
  std::vector<std::uint32_t> errors_a;
  std::vector<std::uint32_t> errors_b;
};

ErrorCounts generate_error_counts(const SynthConfig& config);

// Full dataset with synthetic utterance and block ids, exportable through
// save_counts.
EvalDataset generate_dataset(const SynthConfig& config);

// Z_i = (e_i^B - e_i^A) / m for each utterance; the per-utterance series
// the variance estimator runs on.
std::vector<double> z_series(const ErrorCounts& counts, std::uint32_t m);

}  // namespace werboot
