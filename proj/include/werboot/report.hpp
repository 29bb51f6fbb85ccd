#pragma once

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "werboot/blockvar.hpp"
#include "werboot/data.hpp"
#include "werboot/resample.hpp"
#include "werboot/study.hpp"

namespace werboot {

// Shortest round-trip decimal form of v (what std::to_chars produces), used
// for every number in CSV and text output so reports are byte-stable.
std::string format_double(double v);

// Corpus-level scoring summary: partition shape plus both WERs and their
// difference.
nlohmann::ordered_json score_summary_json(const EvalDataset& dataset);

nlohmann::ordered_json to_json(const PartitionSummary& summary);
nlohmann::ordered_json to_json(const CiReport& report);
nlohmann::ordered_json to_json(const StudyResult& result);

// CSV bodies (header line plus rows). Callers may prepend their own
// '#'-prefixed comment lines for config echoes.
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);
void write_strip_csv(std::ostream& out, std::span<const StripRow> strip);
void write_study_rows_csv(std::ostream& out, const StudyResult& result);

// Human-readable report bodies for stdout.
std::string format_ci_text(const CiReport& report);
std::string format_study_table(const StudyResult& result);

}  // namespace werboot
