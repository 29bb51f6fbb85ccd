#include "werboot/blockvar.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include "parallel.hpp"
#include "werboot/errors.hpp"
#include "werboot/rng.hpp"

namespace werboot {

namespace {

// Sub-stream tags so curve trials and the oracle draws never overlap even
// when they share a base seed.
constexpr std::uint64_t kTrialStream = 0x54524941;   // "TRIA"
constexpr std::uint64_t kOracleStream = 0x4F52434C;  // "ORCL"

std::size_t parse_size(std::string_view text, const std::string& context) {
  std::size_t value = 0;
  const auto* first = text.data();
  const auto* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value == 0) {
    throw InvalidConfig(context + ": expected a positive integer, got '" +
                        std::string(text) + "'");
  }
  return value;
}

}  // namespace

BlockedSeries make_blocked_series(std::span<const double> z,
                                  std::size_t block_size) {
  if (block_size == 0) {
    throw InvalidConfig("block size must be at least 1");
  }
  const std::size_t num_blocks = z.size() / block_size;
  if (num_blocks < 2) {
    throw InsufficientBlocks(
        "blockwise variance needs at least 2 full blocks; series of length " +
        std::to_string(z.size()) + " yields " + std::to_string(num_blocks) +
        " block(s) of size " + std::to_string(block_size));
  }
  BlockedSeries out;
  out.block_size = block_size;
  out.num_blocks = num_blocks;
  out.dropped = z.size() - num_blocks * block_size;
  out.z.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(
                                          num_blocks * block_size));
  return out;
}

double blockwise_variance(const BlockedSeries& series) {
  const std::size_t d = series.block_size;
  const std::size_t num_blocks = series.num_blocks;
  const std::size_t kept = d * num_blocks;

  double overall = 0.0;
  for (std::size_t i = 0; i < kept; ++i) overall += series.z[i];
  overall /= static_cast<double>(kept);

  double sum_sq = 0.0;
  for (std::size_t k = 0; k < num_blocks; ++k) {
    double block_mean = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      block_mean += series.z[k * d + j];
    }
    block_mean /= static_cast<double>(d);
    const double dev = block_mean - overall;
    sum_sq += dev * dev;
  }
  return static_cast<double>(d) / static_cast<double>(num_blocks) * sum_sq;
}

std::size_t BlockRule::operator()(std::size_t n) const {
  switch (kind) {
    case Kind::fixed:
      return param;
    case Kind::sqrt: {
      auto d = static_cast<std::size_t>(
          std::floor(std::sqrt(static_cast<double>(n))));
      return d == 0 ? 1 : d;
    }
    case Kind::sqrt_aligned: {
      const auto root = std::floor(std::sqrt(static_cast<double>(n)));
      auto multiples = static_cast<std::size_t>(
          std::llround(root / static_cast<double>(param)));
      if (multiples == 0) multiples = 1;
      return multiples * param;
    }
  }
  return 1;  // unreachable
}

std::string BlockRule::name() const {
  switch (kind) {
    case Kind::sqrt:
      return "sqrt";
    case Kind::sqrt_aligned:
      return "sqrt-aligned:" + std::to_string(param);
    case Kind::fixed:
      return "fixed:" + std::to_string(param);
  }
  return "sqrt";  // unreachable
}

BlockRule BlockRule::parse(const std::string& text) {
  BlockRule rule;
  if (text == "sqrt") {
    rule.kind = Kind::sqrt;
    return rule;
  }
  const std::string_view view(text);
  constexpr std::string_view kAligned = "sqrt-aligned:";
  constexpr std::string_view kFixed = "fixed:";
  if (view.starts_with(kAligned)) {
    rule.kind = Kind::sqrt_aligned;
    rule.param = parse_size(view.substr(kAligned.size()),
                            "block rule '" + text + "'");
    return rule;
  }
  if (view.starts_with(kFixed)) {
    rule.kind = Kind::fixed;
    rule.param = parse_size(view.substr(kFixed.size()),
                            "block rule '" + text + "'");
    return rule;
  }
  throw InvalidConfig("unknown block rule '" + text +
                      "' (expected sqrt, sqrt-aligned:A, or fixed:D)");
}

std::vector<CurvePoint> consistency_curve(const SeriesGenerator& generator,
                                          const CurveConfig& config) {
  if (config.n_grid.empty()) {
    throw InvalidConfig("consistency curve needs a non-empty n grid");
  }
  if (config.trials < 2) {
    throw InvalidConfig("consistency curve needs at least 2 trials per n");
  }
  if (config.oracle_datasets < 2) {
    throw InvalidConfig("consistency curve needs at least 2 oracle datasets");
  }

  const std::size_t oracle_n =
      config.oracle_n != 0 ? config.oracle_n : config.n_grid.front();

  // Oracle target: the sample variance of `oracle_datasets` independent
  // series means, scaled by the series length.
  const std::uint64_t oracle_seed = mix_seed(config.seed, kOracleStream);
  std::vector<double> oracle_means(config.oracle_datasets);
  detail::parallel_for(config.jobs, config.oracle_datasets,
                       [&](std::size_t i) {
                         const auto z =
                             generator(oracle_n, mix_seed(oracle_seed, i));
                         double m = 0.0;
                         for (double v : z) m += v;
                         oracle_means[i] = m / static_cast<double>(z.size());
                       });
  double grand = 0.0;
  for (double m : oracle_means) grand += m;
  grand /= static_cast<double>(oracle_means.size());
  double var_of_means = 0.0;
  for (double m : oracle_means) {
    const double dev = m - grand;
    var_of_means += dev * dev;
  }
  var_of_means /= static_cast<double>(oracle_means.size() - 1);
  const double oracle_sigma2 = static_cast<double>(oracle_n) * var_of_means;

  std::vector<CurvePoint> curve;
  curve.reserve(config.n_grid.size());
  const std::uint64_t trial_seed = mix_seed(config.seed, kTrialStream);
  for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
    const std::size_t n = config.n_grid[g];
    const std::size_t d = config.d_rule(n);
    if (d < 1 || d >= n) {
      throw InvalidConfig("block rule " + config.d_rule.name() + " gives d=" +
                          std::to_string(d) + " at n=" + std::to_string(n) +
                          "; need 1 <= d < n");
    }
    const std::uint64_t grid_seed = mix_seed(trial_seed, g);

    std::vector<double> estimates(config.trials);
    std::size_t dropped = 0;
    std::size_t num_blocks = 0;
    detail::parallel_for(config.jobs, config.trials, [&](std::size_t t) {
      const auto z = generator(n, mix_seed(grid_seed, t));
      const auto blocked = make_blocked_series(z, d);
      estimates[t] = blockwise_variance(blocked);
      if (t == 0) {
        dropped = blocked.dropped;
        num_blocks = blocked.num_blocks;
      }
    });

    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(estimates.size());
    double var = 0.0;
    for (double e : estimates) {
      const double dev = e - mean;
      var += dev * dev;
    }
    var /= static_cast<double>(estimates.size() - 1);

    CurvePoint point;
    point.n = n;
    point.block_size = d;
    point.num_blocks = num_blocks;
    point.dropped = dropped;
    point.mean_sigma2 = mean;
    point.sd_sigma2 = std::sqrt(var);
    point.oracle_sigma2 = oracle_sigma2;
    curve.push_back(point);
  }
  return curve;
}

}  // namespace werboot
