#include "werboot/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "werboot/align.hpp"
#include "werboot/errors.hpp"

namespace werboot {

namespace {

// Strips a trailing '\r' so CRLF files parse like LF files.
void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool skippable(const std::string& line) {
  if (line.empty() || line[0] == '#') return true;
  return line.find_first_not_of(" \t") == std::string::npos;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::uint32_t parse_count(const std::string& field, const std::string& path,
                          std::size_t line_no, const char* what) {
  std::uint32_t value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw ParseError(path, line_no,
                     std::string(what) + " is not a non-negative integer: '" +
                         field + "'");
  }
  return value;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open file: " + path.string());
  }
  return in;
}

// Parses a `utt_id<TAB>rest` line pair. A line without a tab is treated as
// an id with empty text, which lets hypothesis files carry empty outputs.
std::pair<std::string, std::string> split_id_text(const std::string& line) {
  const std::size_t tab = line.find('\t');
  if (tab == std::string::npos) return {line, ""};
  return {line.substr(0, tab), line.substr(tab + 1)};
}

struct TranscriptFile {
  std::vector<std::string> order;  // utt ids in file order
  std::unordered_map<std::string, std::string> text;
};

TranscriptFile load_transcript(const std::filesystem::path& path) {
  TranscriptFile out;
  auto in = open_or_throw(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (skippable(line)) continue;
    auto [id, text] = split_id_text(line);
    if (id.empty()) {
      throw ParseError(path.string(), line_no, "empty utterance id");
    }
    if (!out.text.emplace(id, std::move(text)).second) {
      throw DuplicateUttId(path.string() + ":" + std::to_string(line_no) +
                           ": duplicate utterance id '" + id + "'");
    }
    out.order.push_back(std::move(id));
  }
  return out;
}

std::unordered_map<std::string, std::string> load_block_map(
    const std::filesystem::path& path) {
  std::unordered_map<std::string, std::string> out;
  auto in = open_or_throw(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (skippable(line)) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(path.string(), line_no,
                       "expected 'utt_id<TAB>block_id'");
    }
    if (!out.emplace(fields[0], fields[1]).second) {
      throw DuplicateUttId(path.string() + ":" + std::to_string(line_no) +
                           ": duplicate utterance id '" + fields[0] + "'");
    }
  }
  return out;
}

}  // namespace

EvalDataset dataset_from_records(std::vector<UtteranceRecord> records) {
  if (records.empty()) {
    throw EmptyDataset("dataset contains no records");
  }

  EvalDataset ds;
  ds.records = std::move(records);

  std::unordered_set<std::string> seen_ids;
  seen_ids.reserve(ds.records.size());
  std::unordered_map<std::string, std::size_t> block_index;
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    const auto& r = ds.records[i];
    if (!seen_ids.insert(r.utt_id).second) {
      throw DuplicateUttId("duplicate utterance id '" + r.utt_id + "'");
    }
    if (r.words == 0) {
      throw EmptyReference("utterance '" + r.utt_id +
                           "' has an empty reference (m = 0)");
    }
    auto [it, inserted] = block_index.emplace(r.block_id, ds.blocks.size());
    if (inserted) {
      ds.blocks.push_back(Block{r.block_id, {}});
    }
    ds.blocks[it->second].records.push_back(i);
  }

  // Unreachable while m = 0 records are rejected above; kept as a guard on
  // the per-block word total the resampling engine divides by.
  for (const auto& block : ds.blocks) {
    std::uint64_t words = 0;
    for (const std::size_t i : block.records) words += ds.records[i].words;
    if (words == 0) {
      throw EmptyBlock("block '" + block.id + "' has zero total words");
    }
  }
  return ds;
}

EvalDataset load_counts(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::vector<UtteranceRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (skippable(line)) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 5) {
      throw ParseError(path.string(), line_no,
                       "expected 5 tab-separated fields, got " +
                           std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      throw ParseError(path.string(), line_no, "empty utterance id");
    }
    if (fields[1].empty()) {
      throw ParseError(path.string(), line_no, "empty block id");
    }
    UtteranceRecord r;
    r.utt_id = fields[0];
    r.block_id = fields[1];
    r.words = parse_count(fields[2], path.string(), line_no, "word count");
    r.errors_a = parse_count(fields[3], path.string(), line_no, "e_a");
    r.errors_b = parse_count(fields[4], path.string(), line_no, "e_b");
    records.push_back(std::move(r));
  }
  return dataset_from_records(std::move(records));
}

void save_counts(const EvalDataset& dataset,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot write file: " + path.string());
  }
  out << "# utt_id\tblock_id\tm\te_a\te_b\n";
  for (const auto& r : dataset.records) {
    out << r.utt_id << '\t' << r.block_id << '\t' << r.words << '\t'
        << r.errors_a << '\t' << r.errors_b << '\n';
  }
}

EvalDataset score_transcripts(
    const std::filesystem::path& reference,
    const std::filesystem::path& hypothesis_a,
    const std::filesystem::path& hypothesis_b,
    const std::optional<std::filesystem::path>& block_map, bool case_fold) {
  const TranscriptFile ref = load_transcript(reference);
  const TranscriptFile hyp_a = load_transcript(hypothesis_a);
  const TranscriptFile hyp_b = load_transcript(hypothesis_b);

  for (const auto* hyp : {&hyp_a, &hyp_b}) {
    const auto& name = hyp == &hyp_a ? hypothesis_a : hypothesis_b;
    for (const auto& id : ref.order) {
      if (!hyp->text.count(id)) {
        throw MissingUtterance("utterance '" + id + "' missing from " +
                               name.string());
      }
    }
    for (const auto& id : hyp->order) {
      if (!ref.text.count(id)) {
        throw MissingUtterance("utterance '" + id + "' in " + name.string() +
                               " does not appear in the reference");
      }
    }
  }

  std::unordered_map<std::string, std::string> blocks;
  if (block_map) blocks = load_block_map(*block_map);

  std::vector<UtteranceRecord> records;
  records.reserve(ref.order.size());
  for (const auto& id : ref.order) {
    const TokenSequence ref_tokens = tokenize(ref.text.at(id), case_fold);
    if (ref_tokens.empty()) {
      throw EmptyReference("utterance '" + id +
                           "' has an empty reference (m = 0)");
    }
    UtteranceRecord r;
    r.utt_id = id;
    if (block_map) {
      const auto it = blocks.find(id);
      if (it == blocks.end()) {
        throw MissingUtterance("utterance '" + id +
                               "' missing from the block map");
      }
      r.block_id = it->second;
    } else {
      r.block_id = id;
    }
    r.words = static_cast<std::uint32_t>(ref_tokens.size());
    r.errors_a =
        align(ref_tokens, tokenize(hyp_a.text.at(id), case_fold)).total_errors();
    r.errors_b =
        align(ref_tokens, tokenize(hyp_b.text.at(id), case_fold)).total_errors();
    records.push_back(std::move(r));
  }
  return dataset_from_records(std::move(records));
}

PartitionSummary partition_summary(const EvalDataset& dataset) {
  PartitionSummary s;
  s.utterances = dataset.records.size();
  for (const auto& r : dataset.records) s.total_words += r.words;
  s.num_blocks = dataset.blocks.size();

  std::vector<std::size_t> sizes;
  sizes.reserve(dataset.blocks.size());
  for (const auto& b : dataset.blocks) sizes.push_back(b.records.size());
  std::sort(sizes.begin(), sizes.end());
  s.block_size_min = sizes.front();
  s.block_size_max = sizes.back();
  const std::size_t k = sizes.size();
  s.block_size_median =
      k % 2 == 1 ? static_cast<double>(sizes[k / 2])
                 : (static_cast<double>(sizes[k / 2 - 1]) +
                    static_cast<double>(sizes[k / 2])) /
                       2.0;
  return s;
}

}  // namespace werboot
