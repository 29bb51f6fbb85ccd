#include "werboot/report.hpp"

#include <charconv>
#include <cstdio>

#include "werboot/rng.hpp"

namespace werboot {

namespace {

nlohmann::ordered_json interval_json(double lo, double hi) {
  return {{"lo", lo}, {"hi", hi}};
}

std::string row_text(const char* label, const std::string& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-16s ", label);
  return std::string(buf) + value + "\n";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

nlohmann::ordered_json to_json(const PartitionSummary& summary) {
  return {{"n", summary.utterances},
          {"total_words", summary.total_words},
          {"num_blocks", summary.num_blocks},
          {"block_size_min", summary.block_size_min},
          {"block_size_median", summary.block_size_median},
          {"block_size_max", summary.block_size_max}};
}

nlohmann::ordered_json score_summary_json(const EvalDataset& dataset) {
  nlohmann::ordered_json out;
  out["dataset"] = to_json(partition_summary(dataset));
  out["wer_a"] = evaluate_statistic(dataset, StatisticKind::wer_a);
  out["wer_b"] = evaluate_statistic(dataset, StatisticKind::wer_b);
  out["abs_diff"] = evaluate_statistic(dataset, StatisticKind::abs_diff);
  return out;
}

nlohmann::ordered_json to_json(const CiReport& report) {
  nlohmann::ordered_json out;
  out["statistic"] = to_string(report.statistic);
  out["mode"] = to_string(report.mode);
  out["B"] = report.replicates;
  out["alpha"] = report.alpha;
  out["seed"] = report.seed;
  out["rng"] = kRngName;
  out["point_estimate"] = report.point_estimate;
  out["replicate_mean"] = report.replicate_mean;
  out["std_error"] = report.std_error;
  out["percentile_ci"] =
      interval_json(report.percentile_ci.first, report.percentile_ci.second);
  out["gaussian_ci"] =
      interval_json(report.gaussian_ci.first, report.gaussian_ci.second);
  out["dataset_summary"] = to_json(report.dataset_summary);
  return out;
}

nlohmann::ordered_json to_json(const StudyResult& result) {
  const StudyConfig& config = result.config;
  nlohmann::ordered_json synth;
  synth["utterances"] = config.synth.utterances;
  synth["words_per_utterance"] = config.synth.words_per_utterance;
  synth["wer_a"] = config.synth.wer_a;
  synth["wer_b"] = config.synth.wer_b;
  synth["block_size"] = config.synth.block_size;
  synth["rho"] = config.synth.rho;

  nlohmann::ordered_json methods_list = nlohmann::ordered_json::array();
  for (const MethodResult& method : result.methods) {
    methods_list.push_back(to_string(method.mode));
  }

  nlohmann::ordered_json cfg;
  cfg["synth"] = std::move(synth);
  cfg["B"] = config.replicates;
  cfg["simulations"] = config.simulations;
  cfg["alpha"] = config.alpha;
  cfg["methods"] = std::move(methods_list);
  cfg["seed"] = config.seed;
  cfg["rng"] = kRngName;

  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  for (const MethodResult& method : result.methods) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const SimulationRow& row : method.rows) {
      rows.push_back({{"percentile_lo", row.percentile_lo},
                      {"percentile_hi", row.percentile_hi},
                      {"percentile_covered", row.percentile_covered},
                      {"gaussian_lo", row.gaussian_lo},
                      {"gaussian_hi", row.gaussian_hi},
                      {"gaussian_covered", row.gaussian_covered}});
    }
    methods.push_back({{"mode", to_string(method.mode)},
                       {"avg_width", method.avg_width},
                       {"coverage", method.coverage},
                       {"gaussian_avg_width", method.gaussian_avg_width},
                       {"gaussian_coverage", method.gaussian_coverage},
                       {"rows", std::move(rows)}});
  }

  nlohmann::ordered_json out;
  out["config"] = std::move(cfg);
  out["true_delta"] = result.true_delta;
  out["methods"] = std::move(methods);
  return out;
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "n,d,K,mean_sigma2_hat,sd_sigma2_hat,oracle_sigma2\n";
  for (const CurvePoint& point : curve) {
    out << point.n << ',' << point.block_size << ',' << point.num_blocks
        << ',' << format_double(point.mean_sigma2) << ','
        << format_double(point.sd_sigma2) << ','
        << format_double(point.oracle_sigma2) << '\n';
  }
}

void write_strip_csv(std::ostream& out, std::span<const StripRow> strip) {
  out << "mode,sim,lo,hi,covered\n";
  for (const StripRow& row : strip) {
    out << to_string(row.mode) << ',' << row.sim << ','
        << format_double(row.lo) << ',' << format_double(row.hi) << ','
        << (row.covered ? 1 : 0) << '\n';
  }
}

void write_study_rows_csv(std::ostream& out, const StudyResult& result) {
  out << "mode,sim,percentile_lo,percentile_hi,percentile_covered,"
         "gaussian_lo,gaussian_hi,gaussian_covered\n";
  for (const MethodResult& method : result.methods) {
    for (std::size_t s = 0; s < method.rows.size(); ++s) {
      const SimulationRow& row = method.rows[s];
      out << to_string(method.mode) << ',' << s << ','
          << format_double(row.percentile_lo) << ','
          << format_double(row.percentile_hi) << ','
          << (row.percentile_covered ? 1 : 0) << ','
          << format_double(row.gaussian_lo) << ','
          << format_double(row.gaussian_hi) << ','
          << (row.gaussian_covered ? 1 : 0) << '\n';
    }
  }
}

std::string format_ci_text(const CiReport& report) {
  std::string out;
  out += row_text("statistic", to_string(report.statistic));
  out += row_text("mode", to_string(report.mode));
  out += row_text("alpha", format_double(report.alpha));
  out += row_text("replicates", std::to_string(report.replicates));
  out += row_text("rng", std::string(kRngName) + " seed=" +
                             std::to_string(report.seed));
  out += row_text("point_estimate", format_double(report.point_estimate));
  out += row_text("replicate_mean", format_double(report.replicate_mean));
  out += row_text("std_error", format_double(report.std_error));
  out += row_text("percentile_ci",
                  "[" + format_double(report.percentile_ci.first) + ", " +
                      format_double(report.percentile_ci.second) + "]");
  out += row_text("gaussian_ci",
                  "[" + format_double(report.gaussian_ci.first) + ", " +
                      format_double(report.gaussian_ci.second) + "]");
  const PartitionSummary& ds = report.dataset_summary;
  out += row_text("utterances", std::to_string(ds.utterances));
  out += row_text("total_words", std::to_string(ds.total_words));
  out += row_text("blocks",
                  std::to_string(ds.num_blocks) + " (size min " +
                      std::to_string(ds.block_size_min) + " / median " +
                      format_double(ds.block_size_median) + " / max " +
                      std::to_string(ds.block_size_max) + ")");
  return out;
}

std::string format_study_table(const StudyResult& result) {
  std::string out = "true_delta " + format_double(result.true_delta) + "\n";
  out += "simulations " + std::to_string(result.config.simulations) +
         "  replicates " + std::to_string(result.config.replicates) +
         "  alpha " + format_double(result.config.alpha) + "\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %9s %8s %12s %14s\n", "method",
                "avg_width", "coverage", "gauss_width", "gauss_coverage");
  out += buf;
  for (const MethodResult& method : result.methods) {
    std::snprintf(buf, sizeof buf, "%-10s %9.4f %7.1f%% %12.4f %13.1f%%\n",
                  to_string(method.mode), method.avg_width,
                  method.coverage * 100.0, method.gaussian_avg_width,
                  method.gaussian_coverage * 100.0);
    out += buf;
  }
  return out;
}

}  // namespace werboot
