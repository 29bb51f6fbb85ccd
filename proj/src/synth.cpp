#include "werboot/synth.hpp"

#include <cmath>

#include "werboot/errors.hpp"
#include "werboot/normal.hpp"

namespace werboot {

namespace {

// Stream tags for the two systems; blocks of one system and any block of
// the other never share a stream.
constexpr std::uint64_t kSystemATag = 0x41;
constexpr std::uint64_t kSystemBTag = 0x42;

constexpr double kLargestBelowOne = 0x1.fffffffffffffp-1;

}  // namespace

void validate(const SynthConfig& config) {
  if (config.utterances == 0) {
    throw InvalidConfig("utterance count must be positive");
  }
  if (config.words_per_utterance == 0) {
    throw InvalidConfig("words per utterance must be positive");
  }
  if (config.block_size == 0 || config.utterances % config.block_size != 0) {
    throw InvalidConfig("block size must be positive and divide the utterance count");
  }
  if (!(config.wer_a >= 0.0 && config.wer_a <= 1.0) ||
      !(config.wer_b >= 0.0 && config.wer_b <= 1.0)) {
    throw InvalidConfig("ground-truth WERs must lie in [0, 1]");
  }
  if (!(config.rho >= 0.0 && config.rho < 1.0)) {
    throw InvalidConfig("rho must lie in [0, 1)");
  }
}

void sample_equicorrelated_gaussians(std::span<double> out, double rho,
                                     SplitMix64& rng) {
  const double shared_weight = std::sqrt(rho);
  const double own_weight = std::sqrt(1.0 - rho);
  const double shared = gaussian_quantile(rng.uniform_open());
  for (double& v : out) {
    v = shared_weight * shared + own_weight * gaussian_quantile(rng.uniform_open());
  }
}

std::uint32_t binomial_quantile(double u, std::uint32_t m, double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return u > 0.0 ? m : 0;
  const long double q = 1.0L - static_cast<long double>(p);
  long double pmf = std::pow(q, static_cast<long double>(m));
  long double cdf = pmf;
  const long double odds = static_cast<long double>(p) / q;
  const auto target = static_cast<long double>(u);
  std::uint32_t e = 0;
  while (cdf < target && e < m) {
    pmf *= odds * static_cast<long double>(m - e) / static_cast<long double>(e + 1);
    ++e;
    cdf += pmf;
  }
  return e;
}

ErrorCounts generate_error_counts(const SynthConfig& config) {
  validate(config);
  const std::uint32_t d = config.block_size;
  const std::uint32_t num_blocks = config.utterances / d;

  ErrorCounts out;
  out.errors_a.resize(config.utterances);
  out.errors_b.resize(config.utterances);

  std::vector<double> gaussians(d);
  const auto fill_system = [&](std::vector<std::uint32_t>& errors,
                               std::uint64_t tag, double wer) {
    for (std::uint32_t block = 0; block < num_blocks; ++block) {
      SplitMix64 rng(mix_seed(mix_seed(config.seed, block), tag));
      sample_equicorrelated_gaussians(gaussians, config.rho, rng);
      for (std::uint32_t s = 0; s < d; ++s) {
        // Clamp keeps the copula uniform strictly below 1 so the quantile
        // stays defined for extreme normal draws.
        const double u =
            std::min(gaussian_cdf(gaussians[s]), kLargestBelowOne);
        errors[static_cast<std::size_t>(block) * d + s] =
            binomial_quantile(u, config.words_per_utterance, wer);
      }
    }
  };
  fill_system(out.errors_a, kSystemATag, config.wer_a);
  fill_system(out.errors_b, kSystemBTag, config.wer_b);
  return out;
}

EvalDataset generate_dataset(const SynthConfig& config) {
  const ErrorCounts counts = generate_error_counts(config);
  const std::uint32_t d = config.block_size;

  const auto digits = [](std::uint32_t limit) {
    std::uint32_t width = 1;
    while (limit >= 10) {
      limit /= 10;
      ++width;
    }
    return width;
  };
  const std::uint32_t utt_width = digits(config.utterances);
  const std::uint32_t block_width = digits(config.utterances / d);

  const auto padded = [](const char* prefix, std::uint32_t value,
                         std::uint32_t width) {
    std::string digits_str = std::to_string(value);
    std::string out(prefix);
    out.append(width > digits_str.size() ? width - digits_str.size() : 0, '0');
    out += digits_str;
    return out;
  };

  std::vector<UtteranceRecord> records;
  records.reserve(config.utterances);
  for (std::uint32_t i = 0; i < config.utterances; ++i) {
    UtteranceRecord r;
    r.utt_id = padded("u", i + 1, utt_width);
    r.block_id = padded("b", i / d + 1, block_width);
    r.words = config.words_per_utterance;
    r.errors_a = counts.errors_a[i];
    r.errors_b = counts.errors_b[i];
    records.push_back(std::move(r));
  }
  return dataset_from_records(std::move(records));
}

std::vector<double> z_series(const ErrorCounts& counts, std::uint32_t m) {
  std::vector<double> z(counts.errors_a.size());
  const auto denom = static_cast<double>(m);
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = (static_cast<double>(counts.errors_b[i]) -
            static_cast<double>(counts.errors_a[i])) /
           denom;
  }
  return z;
}

}  // namespace werboot
