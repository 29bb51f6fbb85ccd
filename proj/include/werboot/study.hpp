#pragma once

#include <cstdint>
#include <vector>

#include "werboot/resample.hpp"
#include "werboot/synth.hpp"

namespace werboot {

// Coverage experiment: simulate many datasets from one SynthConfig, compute
// a confidence interval for the absolute WER difference on each with the
// requested resampling modes, and tally how often the intervals cover the
// configured truth wer_b - wer_a.
struct StudyConfig {
  SynthConfig synth;  // synth.seed is ignored; per-simulation seeds are
                      // derived from `seed` below
  std::uint32_t replicates = 1000;
  std::uint32_t simulations = 1000;
  double alpha = 0.05;
  bool run_ordinary = true;
  bool run_blockwise = true;
  std::uint64_t seed = 0;
  unsigned jobs = 1;  // parallelizes over simulations; results jobs-invariant
};

// Throws InvalidConfig when simulations < 1, no mode is enabled, or the
// embedded synth/bootstrap settings are invalid.
void validate(const StudyConfig& config);

// One simulated dataset's intervals. Coverage in the headline summary is
// judged on the percentile interval; the gaussian interval is tracked
// alongside for comparison.
struct SimulationRow {
  double percentile_lo = 0.0;
  double percentile_hi = 0.0;
  bool percentile_covered = false;
  double gaussian_lo = 0.0;
  double gaussian_hi = 0.0;
  bool gaussian_covered = false;
};

struct MethodResult {
  ResampleMode mode = ResampleMode::ordinary;
  double avg_width = 0.0;  // mean percentile-interval width
  double coverage = 0.0;   // fraction of percentile intervals covering truth
  double gaussian_avg_width = 0.0;
  double gaussian_coverage = 0.0;
  std::vector<SimulationRow> rows;  // one per simulation
};

struct StudyResult {
  StudyConfig config;
  double true_delta = 0.0;  // wer_b - wer_a
  std::vector<MethodResult> methods;  // ordinary first when both are run
};

// Both modes reuse the same simulated dataset and the same replicate seed
// within a simulation, so mode comparisons are paired and a singleton-block
// configuration makes the two methods coincide row for row.
StudyResult run_study(const StudyConfig& config);

// Plot-ready rows for the first `first_k` simulations of every method
// (percentile intervals). first_k is clamped to the simulation count.
struct StripRow {
  ResampleMode mode = ResampleMode::ordinary;
  std::size_t sim = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool covered = false;
};

std::vector<StripRow> emit_ci_strip(const StudyResult& result,
                                    std::size_t first_k);

}  // namespace werboot
