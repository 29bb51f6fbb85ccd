#pragma once

#include <cstdint>

namespace werboot {

// Name of the generator, recorded in report headers so results can be
// reproduced bit-exactly elsewhere.
inline constexpr const char* kRngName = "splitmix64";

namespace detail {

// Finalizer of splitmix64 (Steele, Lea, Flood 2014): a full-avalanche
// 64-bit mixing function.
inline std::uint64_t avalanche64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Derives an independent stream seed from (base, index). Used everywhere a
// keyed sub-stream is needed: replicate b of a bootstrap run, block b of a
// synthetic draw, simulation i of a study. Mixing through the splitmix64
// avalanche makes the derived streams order-insensitive, so parallel
// execution reproduces sequential output exactly.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  return detail::avalanche64(base + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// splitmix64: a counter-based 64-bit generator with period 2^64 and
// bit-exact output on every platform. Quality is more than adequate for
// Monte Carlo resampling and the state is a single word, which keeps
// per-stream seeding trivial.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return detail::avalanche64(state_);
  }

  // Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double strictly inside (0, 1); safe to feed to quantile
  // functions that reject the endpoints.
  double uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased draw in [0, n). Lemire's multiply-and-reject method; the
  // rejection loop is deterministic given the stream.
  std::uint64_t bounded(std::uint64_t n) {
    unsigned __int128 product =
        static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(n);
    auto low = static_cast<std::uint64_t>(product);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(next()) *
                  static_cast<unsigned __int128>(n);
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace werboot
