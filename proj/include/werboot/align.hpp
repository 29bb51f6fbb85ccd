#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace werboot {

// An utterance as a list of words. Tokens never contain whitespace.
struct TokenSequence {
  std::vector<std::string> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  bool operator==(const TokenSequence&) const = default;
};

// Splits on runs of whitespace; optionally lowercases ASCII letters.
// The empty string yields an empty sequence. No other normalization is
// applied; callers wanting punctuation or Unicode casefolding must
// pre-normalize their transcripts.
TokenSequence tokenize(std::string_view text, bool case_fold = false);

// Error breakdown of a minimum-cost word alignment, unit costs for
// substitution, insertion and deletion.
struct AlignmentCounts {
  std::uint32_t substitutions = 0;
  std::uint32_t insertions = 0;
  std::uint32_t deletions = 0;
  std::uint32_t reference_length = 0;

  std::uint32_t total_errors() const {
    return substitutions + insertions + deletions;
  }
};

// Total word errors only: Levenshtein distance with a two-row table.
// O(min(|a|,|b|)) memory, used when the per-category split is not needed.
std::size_t edit_distance(const TokenSequence& a, const TokenSequence& b);

// Full alignment with per-category counts. Total errors equal
// edit_distance(reference, hypothesis). Where several minimum-cost traces
// exist, the backtrace prefers substitution, then deletion, then insertion,
// so per-category counts are deterministic.
AlignmentCounts align(const TokenSequence& reference,
                      const TokenSequence& hypothesis);

// Corpus word error rate: total errors over total reference words.
// Throws ZeroReferenceLength when the denominator is zero.
double corpus_wer(std::span<const AlignmentCounts> counts);

}  // namespace werboot
