#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace werboot {

// One scored utterance: reference word count plus total word errors of the
// two systems under comparison.
struct UtteranceRecord {
  std::string utt_id;
  std::string block_id;
  std::uint32_t words = 0;
  std::uint32_t errors_a = 0;
  std::uint32_t errors_b = 0;
};

// A correlated block: the indices (into EvalDataset::records) of the
// utterances sharing one block label.
struct Block {
  std::string id;
  std::vector<std::size_t> records;
};

// Validated, immutable evaluation dataset. Blocks partition the records:
// they are pairwise disjoint, cover every record, and appear in order of
// first appearance in the input. Every record has at least one reference
// word, so every block has a positive word total.
struct EvalDataset {
  std::vector<UtteranceRecord> records;
  std::vector<Block> blocks;

  std::size_t size() const { return records.size(); }
};

// Groups records by block label and validates the dataset invariants.
// Throws DuplicateUttId, EmptyReference, EmptyDataset.
EvalDataset dataset_from_records(std::vector<UtteranceRecord> records);

// Counts TSV: one `utt_id<TAB>block_id<TAB>m<TAB>e_a<TAB>e_b` record per
// line, UTF-8, blank lines and lines starting with '#' ignored.
EvalDataset load_counts(const std::filesystem::path& path);
void save_counts(const EvalDataset& dataset, const std::filesystem::path& path);

// Scores transcript triples with the align module. Files hold
// `utt_id<TAB>text` lines; the hypothesis files must cover exactly the
// reference's utterance ids. Block labels come from the optional block map
// (`utt_id<TAB>block_id`); without one, every utterance is its own block,
// which makes blockwise resampling coincide with ordinary resampling.
EvalDataset score_transcripts(const std::filesystem::path& reference,
                              const std::filesystem::path& hypothesis_a,
                              const std::filesystem::path& hypothesis_b,
                              const std::optional<std::filesystem::path>& block_map,
                              bool case_fold);

struct PartitionSummary {
  std::size_t utterances = 0;
  std::uint64_t total_words = 0;
  std::size_t num_blocks = 0;
  std::size_t block_size_min = 0;
  double block_size_median = 0.0;
  std::size_t block_size_max = 0;
};

PartitionSummary partition_summary(const EvalDataset& dataset);

}  // namespace werboot
