#include "werboot/align.hpp"

#include <doctest.h>

#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "werboot/errors.hpp"
#include "werboot/rng.hpp"

using werboot::AlignmentCounts;
using werboot::TokenSequence;

namespace {

TokenSequence seq(std::initializer_list<const char*> words) {
  TokenSequence s;
  for (const char* w : words) s.tokens.emplace_back(w);
  return s;
}

// Random sequence over a tiny alphabet; small lengths keep the oracle cheap
// while covering every alignment shape.
TokenSequence random_seq(werboot::SplitMix64& rng, std::size_t max_len,
                         std::size_t alphabet) {
  static const std::vector<std::string> kWords{"aa", "bb", "cc",
                                               "dd", "ee", "ff"};
  TokenSequence s;
  const auto len = static_cast<std::size_t>(rng.bounded(max_len + 1));
  for (std::size_t i = 0; i < len; ++i) {
    s.tokens.push_back(kWords[static_cast<std::size_t>(rng.bounded(alphabet))]);
  }
  return s;
}

}  // namespace

TEST_CASE("tokenize splits on whitespace runs") {
  CHECK(werboot::tokenize("a b  c") == seq({"a", "b", "c"}));
  CHECK(werboot::tokenize("  leading and   trailing  ") ==
        seq({"leading", "and", "trailing"}));
  CHECK(werboot::tokenize("tabs\tand\nnewlines") ==
        seq({"tabs", "and", "newlines"}));
  CHECK(werboot::tokenize("one") == seq({"one"}));
}

TEST_CASE("tokenize empty and blank inputs") {
  CHECK(werboot::tokenize("").empty());
  CHECK(werboot::tokenize("   \t \n ").empty());
}

TEST_CASE("tokenize case folding is ASCII-only and optional") {
  CHECK(werboot::tokenize("A b", true) == seq({"a", "b"}));
  CHECK(werboot::tokenize("A b", false) == seq({"A", "b"}));
  CHECK(werboot::tokenize("MiXeD CASE12!", true) == seq({"mixed", "case12!"}));
}

TEST_CASE("tokenize then rejoin is idempotent") {
  werboot::SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto original = random_seq(rng, 8, 3);
    std::string joined;
    for (const auto& token : original.tokens) {
      if (!joined.empty()) joined += ' ';
      joined += token;
    }
    CHECK(werboot::tokenize(joined) == original);
  }
}

TEST_CASE("align identity has zero errors") {
  const auto s = seq({"a", "b", "c"});
  const AlignmentCounts counts = werboot::align(s, s);
  CHECK(counts.substitutions == 0);
  CHECK(counts.insertions == 0);
  CHECK(counts.deletions == 0);
  CHECK(counts.reference_length == 3);
  CHECK(counts.total_errors() == 0);
}

TEST_CASE("align against empty hypothesis is all deletions") {
  const AlignmentCounts counts = werboot::align(seq({"a", "b", "c"}), seq({}));
  CHECK(counts.substitutions == 0);
  CHECK(counts.insertions == 0);
  CHECK(counts.deletions == 3);
  CHECK(counts.reference_length == 3);
}

TEST_CASE("align against empty reference is all insertions") {
  const AlignmentCounts counts = werboot::align(seq({}), seq({"x", "y"}));
  CHECK(counts.substitutions == 0);
  CHECK(counts.insertions == 2);
  CHECK(counts.deletions == 0);
  CHECK(counts.reference_length == 0);
}

TEST_CASE("align single substitution") {
  const AlignmentCounts counts =
      werboot::align(seq({"the", "cat", "sat"}), seq({"the", "bat", "sat"}));
  CHECK(counts.substitutions == 1);
  CHECK(counts.insertions == 0);
  CHECK(counts.deletions == 0);
  CHECK(counts.total_errors() == 1);
}

TEST_CASE("align total errors match the full-matrix oracle") {
  werboot::SplitMix64 rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto ref = random_seq(rng, 8, 3);
    const auto hyp = random_seq(rng, 8, 3);
    const auto oracle_distance = oracle::edit_distance(ref.tokens, hyp.tokens);
    const AlignmentCounts counts = werboot::align(ref, hyp);
    CHECK(counts.total_errors() == oracle_distance);
    CHECK(werboot::edit_distance(ref, hyp) == oracle_distance);
    CHECK(counts.reference_length == ref.size());
  }
}

TEST_CASE("alignment count bounds hold on random pairs") {
  werboot::SplitMix64 rng(404);
  for (int trial = 0; trial < 500; ++trial) {
    const auto ref = random_seq(rng, 8, 3);
    const auto hyp = random_seq(rng, 8, 3);
    const AlignmentCounts counts = werboot::align(ref, hyp);
    const auto nr = ref.size();
    const auto nh = hyp.size();
    const std::size_t diff = nr > nh ? nr - nh : nh - nr;
    CHECK(counts.total_errors() >= diff);
    CHECK(counts.total_errors() <= std::max(nr, nh));
    // Category counts must reconcile the two lengths.
    CHECK(nr + counts.insertions - counts.deletions == nh);
  }
}

TEST_CASE("edit distance is symmetric in its arguments") {
  // The split into categories is not (ties between optimal alignments may
  // break differently), but the optimum itself must match, and each
  // direction has to reconcile the length difference.
  werboot::SplitMix64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_seq(rng, 8, 3);
    const auto b = random_seq(rng, 8, 3);
    const AlignmentCounts fwd = werboot::align(a, b);
    const AlignmentCounts rev = werboot::align(b, a);
    CHECK(fwd.total_errors() == rev.total_errors());
    CHECK(a.size() + fwd.insertions - fwd.deletions == b.size());
    CHECK(b.size() + rev.insertions - rev.deletions == a.size());
  }
}

TEST_CASE("edit distance satisfies the triangle inequality") {
  werboot::SplitMix64 rng(59);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_seq(rng, 6, 3);
    const auto b = random_seq(rng, 6, 3);
    const auto c = random_seq(rng, 6, 3);
    const auto ab = werboot::edit_distance(a, b);
    const auto bc = werboot::edit_distance(b, c);
    const auto ac = werboot::edit_distance(a, c);
    CHECK(ac <= ab + bc);
  }
}

TEST_CASE("corpus_wer basic arithmetic") {
  std::vector<AlignmentCounts> no_errors(2);
  no_errors[0].reference_length = 10;
  no_errors[1].reference_length = 5;
  CHECK(werboot::corpus_wer(no_errors) == 0.0);

  std::vector<AlignmentCounts> tenth(2);
  tenth[0].substitutions = 1;
  tenth[0].reference_length = 10;
  tenth[1].insertions = 1;
  tenth[1].reference_length = 10;
  CHECK(werboot::corpus_wer(tenth) == doctest::Approx(0.10).epsilon(1e-15));
}

TEST_CASE("corpus_wer rejects a zero-word corpus") {
  std::vector<AlignmentCounts> empty_corpus(3);  // all reference_length 0
  CHECK_THROWS_AS(werboot::corpus_wer(empty_corpus),
                  werboot::ZeroReferenceLength);
  CHECK_THROWS_AS(werboot::corpus_wer({}), werboot::ZeroReferenceLength);
}
