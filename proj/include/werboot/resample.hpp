#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "werboot/data.hpp"

namespace werboot {

enum class StatisticKind { wer_a, wer_b, abs_diff, rel_diff };
enum class ResampleMode { ordinary, blockwise };

const char* to_string(StatisticKind kind);
const char* to_string(ResampleMode mode);
StatisticKind parse_statistic(const std::string& name);
ResampleMode parse_mode(const std::string& name);

struct BootstrapConfig {
  std::uint32_t replicates = 1000;
  std::uint64_t seed = 0;
  ResampleMode mode = ResampleMode::blockwise;
  StatisticKind statistic = StatisticKind::abs_diff;
  double alpha = 0.05;
  unsigned jobs = 1;  // worker threads; results are jobs-invariant
};

// Throws InvalidConfig when replicates < 2 or alpha is outside (0, 1).
void validate(const BootstrapConfig& config);

// Column totals of a (possibly resampled) multiset of records; every
// statistic is a function of these three sums.
struct Totals {
  std::uint64_t words = 0;
  std::uint64_t errors_a = 0;
  std::uint64_t errors_b = 0;
};

// Throws ZeroReferenceLength when words == 0; ZeroBaselineWer when rel_diff
// is requested with errors_a == 0.
double statistic_from_totals(const Totals& totals, StatisticKind kind);

double evaluate_statistic(const EvalDataset& dataset, StatisticKind kind);

// Flat per-record counts with blocks as contiguous index ranges; the form
// the resampling inner loop runs on. Built once per dataset.
struct ScoredCounts {
  std::vector<std::uint32_t> words;
  std::vector<std::uint32_t> errors_a;
  std::vector<std::uint32_t> errors_b;
  std::vector<std::size_t> block_offsets;  // size K+1

  std::size_t size() const { return words.size(); }
  std::size_t num_blocks() const {
    return block_offsets.empty() ? 0 : block_offsets.size() - 1;
  }
};

ScoredCounts scored_counts(const EvalDataset& dataset);

// B replicate statistics. Ordinary mode resamples records with replacement;
// blockwise mode resamples whole blocks with replacement, so replicate word
// totals vary with the drawn blocks. Replicate b consumes its own stream
// seeded by mix_seed(seed, b) regardless of mode, which makes the output
// deterministic, independent of worker count, and identical across modes
// when every block is a singleton.
std::vector<double> bootstrap_replicates(const ScoredCounts& counts,
                                         const BootstrapConfig& config);
std::vector<double> bootstrap_replicates(const EvalDataset& dataset,
                                         const BootstrapConfig& config);

// Nearest-rank empirical percentiles: index for quantile q is ceil(q*B)
// clamped to [1, B], no interpolation; endpoints are always elements of the
// sample. Returns the (alpha/2, 1-alpha/2) pair. Throws EmptySamples.
std::pair<double, double> percentile_interval(std::span<const double> samples,
                                              double alpha);

struct GaussianInterval {
  double mean = 0.0;
  double std_error = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Mean and unbiased (B-1 denominator) standard deviation of the replicates;
// interval is mean +/- z_{1-alpha/2} * std_error. Throws InsufficientSamples
// when fewer than two samples are given.
GaussianInterval gaussian_interval(std::span<const double> samples,
                                   double alpha);

struct CiReport {
  StatisticKind statistic = StatisticKind::abs_diff;
  ResampleMode mode = ResampleMode::blockwise;
  double point_estimate = 0.0;
  double replicate_mean = 0.0;
  double std_error = 0.0;
  std::pair<double, double> percentile_ci;
  std::pair<double, double> gaussian_ci;
  std::uint32_t replicates = 0;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  PartitionSummary dataset_summary;
};

// Point estimate on the original dataset plus both interval flavors from a
// fresh replicate set. When replicates_out is given it receives the raw
// replicate statistics (for dumps and histograms).
CiReport run_ci(const EvalDataset& dataset, const BootstrapConfig& config,
                std::vector<double>* replicates_out = nullptr);

}  // namespace werboot
