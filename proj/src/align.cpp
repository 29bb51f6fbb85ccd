#include "werboot/align.hpp"

#include <algorithm>
#include <cctype>

#include "werboot/errors.hpp"

namespace werboot {

TokenSequence tokenize(std::string_view text, bool case_fold) {
  TokenSequence out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) {
      std::string token(text.substr(start, i - start));
      if (case_fold) {
        for (char& c : token) {
          c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
      }
      out.tokens.push_back(std::move(token));
    }
  }
  return out;
}

std::size_t edit_distance(const TokenSequence& a, const TokenSequence& b) {
  const auto& longer = a.size() >= b.size() ? a.tokens : b.tokens;
  const auto& shorter = a.size() >= b.size() ? b.tokens : a.tokens;
  const std::size_t m = shorter.size();

  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= longer.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = prev[j - 1] + (longer[i - 1] == shorter[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

AlignmentCounts align(const TokenSequence& reference,
                      const TokenSequence& hypothesis) {
  const std::size_t nr = reference.size();
  const std::size_t nh = hypothesis.size();
  const auto& ref = reference.tokens;
  const auto& hyp = hypothesis.tokens;

  // d[i][j] = distance between ref[0, i) and hyp[0, j), row-major.
  std::vector<std::uint32_t> d((nr + 1) * (nh + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return d[i * (nh + 1) + j];
  };
  for (std::size_t i = 0; i <= nr; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= nh; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= nr; ++i) {
    for (std::size_t j = 1; j <= nh; ++j) {
      const std::uint32_t sub = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const std::uint32_t del = at(i - 1, j) + 1;
      const std::uint32_t ins = at(i, j - 1) + 1;
      at(i, j) = std::min({sub, del, ins});
    }
  }

  AlignmentCounts counts;
  counts.reference_length = static_cast<std::uint32_t>(nr);
  // Backtrace preference: substitution/match, then deletion, then insertion.
  std::size_t i = nr, j = nh;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        at(i, j) == at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++counts.substitutions;
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++counts.deletions;
      --i;
    } else {
      ++counts.insertions;
      --j;
    }
  }
  return counts;
}

double corpus_wer(std::span<const AlignmentCounts> counts) {
  std::uint64_t errors = 0;
  std::uint64_t words = 0;
  for (const auto& c : counts) {
    errors += c.total_errors();
    words += c.reference_length;
  }
  if (words == 0) {
    throw ZeroReferenceLength("corpus_wer: total reference length is zero");
  }
  return static_cast<double>(errors) / static_cast<double>(words);
}

}  // namespace werboot
