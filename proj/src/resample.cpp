#include "werboot/resample.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "werboot/errors.hpp"
#include "werboot/normal.hpp"
#include "werboot/rng.hpp"

namespace werboot {

const char* to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::wer_a: return "wer_a";
    case StatisticKind::wer_b: return "wer_b";
    case StatisticKind::abs_diff: return "abs_diff";
    case StatisticKind::rel_diff: return "rel_diff";
  }
  return "?";
}

const char* to_string(ResampleMode mode) {
  return mode == ResampleMode::ordinary ? "ordinary" : "blockwise";
}

StatisticKind parse_statistic(const std::string& name) {
  if (name == "wer_a") return StatisticKind::wer_a;
  if (name == "wer_b") return StatisticKind::wer_b;
  if (name == "abs_diff") return StatisticKind::abs_diff;
  if (name == "rel_diff") return StatisticKind::rel_diff;
  throw InvalidConfig("unknown statistic '" + name +
                      "' (expected wer_a, wer_b, abs_diff or rel_diff)");
}

ResampleMode parse_mode(const std::string& name) {
  if (name == "ordinary") return ResampleMode::ordinary;
  if (name == "blockwise") return ResampleMode::blockwise;
  throw InvalidConfig("unknown mode '" + name +
                      "' (expected ordinary or blockwise)");
}

void validate(const BootstrapConfig& config) {
  if (config.replicates < 2) {
    throw InvalidConfig("replicates must be at least 2");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw InvalidConfig("alpha must lie strictly in (0, 1)");
  }
}

double statistic_from_totals(const Totals& totals, StatisticKind kind) {
  if (totals.words == 0) {
    throw ZeroReferenceLength("statistic over zero reference words");
  }
  const auto words = static_cast<double>(totals.words);
  switch (kind) {
    case StatisticKind::wer_a:
      return static_cast<double>(totals.errors_a) / words;
    case StatisticKind::wer_b:
      return static_cast<double>(totals.errors_b) / words;
    case StatisticKind::abs_diff:
      return (static_cast<double>(totals.errors_b) -
              static_cast<double>(totals.errors_a)) /
             words;
    case StatisticKind::rel_diff:
      if (totals.errors_a == 0) {
        throw ZeroBaselineWer("rel_diff is undefined when system A has no errors");
      }
      // (dW / WER_A) = (sum e_b - sum e_a) / sum e_a; word totals cancel.
      return (static_cast<double>(totals.errors_b) -
              static_cast<double>(totals.errors_a)) /
             static_cast<double>(totals.errors_a);
  }
  throw InvalidConfig("unknown statistic kind");
}

namespace {

Totals dataset_totals(const ScoredCounts& counts) {
  Totals t;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    t.words += counts.words[i];
    t.errors_a += counts.errors_a[i];
    t.errors_b += counts.errors_b[i];
  }
  return t;
}

}  // namespace

ScoredCounts scored_counts(const EvalDataset& dataset) {
  ScoredCounts out;
  const std::size_t n = dataset.records.size();
  out.words.reserve(n);
  out.errors_a.reserve(n);
  out.errors_b.reserve(n);
  out.block_offsets.reserve(dataset.blocks.size() + 1);
  out.block_offsets.push_back(0);
  for (const auto& block : dataset.blocks) {
    for (const std::size_t i : block.records) {
      const auto& r = dataset.records[i];
      out.words.push_back(r.words);
      out.errors_a.push_back(r.errors_a);
      out.errors_b.push_back(r.errors_b);
    }
    out.block_offsets.push_back(out.words.size());
  }
  return out;
}

double evaluate_statistic(const EvalDataset& dataset, StatisticKind kind) {
  Totals t;
  for (const auto& r : dataset.records) {
    t.words += r.words;
    t.errors_a += r.errors_a;
    t.errors_b += r.errors_b;
  }
  return statistic_from_totals(t, kind);
}

std::vector<double> bootstrap_replicates(const ScoredCounts& counts,
                                         const BootstrapConfig& config) {
  validate(config);
  if (counts.size() == 0) {
    throw EmptyDataset("bootstrap over an empty dataset");
  }

  const std::size_t n = counts.size();
  const std::size_t num_blocks = counts.num_blocks();

  std::vector<Totals> block_totals;
  if (config.mode == ResampleMode::blockwise) {
    block_totals.resize(num_blocks);
    for (std::size_t k = 0; k < num_blocks; ++k) {
      Totals t;
      for (std::size_t i = counts.block_offsets[k];
           i < counts.block_offsets[k + 1]; ++i) {
        t.words += counts.words[i];
        t.errors_a += counts.errors_a[i];
        t.errors_b += counts.errors_b[i];
      }
      block_totals[k] = t;
    }
  }

  std::vector<double> replicates(config.replicates);
  detail::parallel_for(config.jobs, config.replicates, [&](std::size_t b) {
    SplitMix64 rng(mix_seed(config.seed, b));
    Totals t;
    if (config.mode == ResampleMode::ordinary) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(rng.bounded(n));
        t.words += counts.words[j];
        t.errors_a += counts.errors_a[j];
        t.errors_b += counts.errors_b[j];
      }
    } else {
      for (std::size_t k = 0; k < num_blocks; ++k) {
        const auto j = static_cast<std::size_t>(rng.bounded(num_blocks));
        t.words += block_totals[j].words;
        t.errors_a += block_totals[j].errors_a;
        t.errors_b += block_totals[j].errors_b;
      }
    }
    replicates[b] = statistic_from_totals(t, config.statistic);
  });
  return replicates;
}

std::vector<double> bootstrap_replicates(const EvalDataset& dataset,
                                         const BootstrapConfig& config) {
  return bootstrap_replicates(scored_counts(dataset), config);
}

std::pair<double, double> percentile_interval(std::span<const double> samples,
                                              double alpha) {
  if (samples.empty()) {
    throw EmptySamples("percentile_interval over an empty sample set");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidConfig("alpha must lie strictly in (0, 1)");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto b = static_cast<double>(sorted.size());
  const auto rank = [&](double q) {
    auto r = static_cast<std::size_t>(std::ceil(q * b));
    r = std::clamp<std::size_t>(r, 1, sorted.size());
    return sorted[r - 1];
  };
  return {rank(alpha / 2.0), rank(1.0 - alpha / 2.0)};
}

GaussianInterval gaussian_interval(std::span<const double> samples,
                                   double alpha) {
  if (samples.size() < 2) {
    throw InsufficientSamples(
        "gaussian_interval needs at least two samples");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidConfig("alpha must lie strictly in (0, 1)");
  }
  GaussianInterval out;
  // A constant replicate list collapses exactly to that constant; computing
  // the mean by summation would otherwise leave rounding noise in the
  // deviations and a nonzero standard error.
  bool all_equal = true;
  for (const double x : samples) all_equal &= x == samples.front();
  if (all_equal) {
    out.mean = samples.front();
    out.lo = out.hi = samples.front();
    return out;
  }
  double sum = 0.0;
  for (const double x : samples) sum += x;
  out.mean = sum / static_cast<double>(samples.size());
  double ss = 0.0;
  for (const double x : samples) {
    const double d = x - out.mean;
    ss += d * d;
  }
  out.std_error = std::sqrt(ss / static_cast<double>(samples.size() - 1));
  const double half = z_value(alpha) * out.std_error;
  out.lo = out.mean - half;
  out.hi = out.mean + half;
  return out;
}

CiReport run_ci(const EvalDataset& dataset, const BootstrapConfig& config,
                std::vector<double>* replicates_out) {
  validate(config);
  CiReport report;
  report.statistic = config.statistic;
  report.mode = config.mode;
  report.replicates = config.replicates;
  report.seed = config.seed;
  report.alpha = config.alpha;
  report.dataset_summary = partition_summary(dataset);
  report.point_estimate = evaluate_statistic(dataset, config.statistic);

  std::vector<double> replicates = bootstrap_replicates(dataset, config);
  report.percentile_ci = percentile_interval(replicates, config.alpha);
  const GaussianInterval g = gaussian_interval(replicates, config.alpha);
  report.replicate_mean = g.mean;
  report.std_error = g.std_error;
  report.gaussian_ci = {g.lo, g.hi};
  if (replicates_out) *replicates_out = std::move(replicates);
  return report;
}

}  // namespace werboot
