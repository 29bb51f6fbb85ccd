#include "werboot/study.hpp"

#include <algorithm>
#include <numeric>

#include "parallel.hpp"
#include "werboot/errors.hpp"
#include "werboot/rng.hpp"

namespace werboot {

namespace {

// Sub-stream tags separating dataset generation from resampling so the two
// never consume correlated randomness.
constexpr std::uint64_t kGenStream = 0x47454E44;   // "GEND"
constexpr std::uint64_t kBootStream = 0x424F4F54;  // "BOOT"

// ScoredCounts straight from generator output: every record has m words and
// blocks are the generator's consecutive runs of d records.
ScoredCounts counts_from_synth(const ErrorCounts& counts,
                               const SynthConfig& synth) {
  ScoredCounts out;
  const std::size_t n = counts.errors_a.size();
  out.words.assign(n, synth.words_per_utterance);
  out.errors_a = counts.errors_a;
  out.errors_b = counts.errors_b;
  const std::size_t d = synth.block_size;
  out.block_offsets.reserve(n / d + 1);
  for (std::size_t offset = 0; offset <= n; offset += d) {
    out.block_offsets.push_back(offset);
  }
  return out;
}

}  // namespace

void validate(const StudyConfig& config) {
  validate(config.synth);
  if (config.simulations < 1) {
    throw InvalidConfig("study needs at least 1 simulation");
  }
  if (!config.run_ordinary && !config.run_blockwise) {
    throw InvalidConfig("study needs at least one resampling mode enabled");
  }
  BootstrapConfig boot;
  boot.replicates = config.replicates;
  boot.alpha = config.alpha;
  validate(boot);
}

StudyResult run_study(const StudyConfig& config) {
  validate(config);

  std::vector<ResampleMode> modes;
  if (config.run_ordinary) modes.push_back(ResampleMode::ordinary);
  if (config.run_blockwise) modes.push_back(ResampleMode::blockwise);

  StudyResult result;
  result.config = config;
  result.true_delta = config.synth.wer_b - config.synth.wer_a;
  result.methods.resize(modes.size());
  for (std::size_t mi = 0; mi < modes.size(); ++mi) {
    result.methods[mi].mode = modes[mi];
    result.methods[mi].rows.resize(config.simulations);
  }

  const std::uint64_t gen_stream = mix_seed(config.seed, kGenStream);
  const std::uint64_t boot_stream = mix_seed(config.seed, kBootStream);
  const double truth = result.true_delta;

  detail::parallel_for(config.jobs, config.simulations, [&](std::size_t s) {
    SynthConfig synth = config.synth;
    synth.seed = mix_seed(gen_stream, s);
    const ErrorCounts errors = generate_error_counts(synth);
    const ScoredCounts counts = counts_from_synth(errors, synth);

    BootstrapConfig boot;
    boot.replicates = config.replicates;
    boot.seed = mix_seed(boot_stream, s);
    boot.statistic = StatisticKind::abs_diff;
    boot.alpha = config.alpha;
    boot.jobs = 1;  // parallelism lives at the simulation level

    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
      boot.mode = modes[mi];
      const auto replicates = bootstrap_replicates(counts, boot);
      const auto [plo, phi] = percentile_interval(replicates, config.alpha);
      const auto gauss = gaussian_interval(replicates, config.alpha);

      SimulationRow& row = result.methods[mi].rows[s];
      row.percentile_lo = plo;
      row.percentile_hi = phi;
      row.percentile_covered = plo <= truth && truth <= phi;
      row.gaussian_lo = gauss.lo;
      row.gaussian_hi = gauss.hi;
      row.gaussian_covered = gauss.lo <= truth && truth <= gauss.hi;
    }
  });

  for (MethodResult& method : result.methods) {
    double width_sum = 0.0;
    double gauss_width_sum = 0.0;
    std::size_t covered = 0;
    std::size_t gauss_covered = 0;
    for (const SimulationRow& row : method.rows) {
      width_sum += row.percentile_hi - row.percentile_lo;
      gauss_width_sum += row.gaussian_hi - row.gaussian_lo;
      covered += row.percentile_covered ? 1 : 0;
      gauss_covered += row.gaussian_covered ? 1 : 0;
    }
    const auto sims = static_cast<double>(method.rows.size());
    method.avg_width = width_sum / sims;
    method.coverage = static_cast<double>(covered) / sims;
    method.gaussian_avg_width = gauss_width_sum / sims;
    method.gaussian_coverage = static_cast<double>(gauss_covered) / sims;
  }
  return result;
}

std::vector<StripRow> emit_ci_strip(const StudyResult& result,
                                    std::size_t first_k) {
  std::vector<StripRow> strip;
  for (const MethodResult& method : result.methods) {
    const std::size_t k = std::min(first_k, method.rows.size());
    for (std::size_t s = 0; s < k; ++s) {
      StripRow row;
      row.mode = method.mode;
      row.sim = s;
      row.lo = method.rows[s].percentile_lo;
      row.hi = method.rows[s].percentile_hi;
      row.covered = method.rows[s].percentile_covered;
      strip.push_back(row);
    }
  }
  return strip;
}

}  // namespace werboot
