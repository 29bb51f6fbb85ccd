#include "werboot/report.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "werboot/rng.hpp"

namespace {

werboot::EvalDataset tiny_dataset() {
  std::vector<werboot::UtteranceRecord> records;
  records.push_back({"u1", "b1", 10, 2, 1});
  records.push_back({"u2", "b1", 5, 0, 2});
  records.push_back({"u3", "b2", 5, 1, 1});
  return werboot::dataset_from_records(std::move(records));
}

std::vector<std::string> keys_in_order(const nlohmann::ordered_json& j) {
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  return keys;
}

}  // namespace

TEST_CASE("format_double emits shortest round-trip decimals") {
  CHECK(werboot::format_double(0.0) == "0");
  CHECK(werboot::format_double(1.0) == "1");
  CHECK(werboot::format_double(0.1) == "0.1");
  CHECK(werboot::format_double(-0.005) == "-0.005");
  CHECK(werboot::format_double(1959.964) == "1959.964");

  werboot::SplitMix64 rng(2024);
  int checked = 0;
  while (checked < 1000) {
    double v;
    if (checked % 2 == 0) {
      v = (rng.uniform() - 0.5) * 2e4;
    } else {
      const std::uint64_t bits = rng.next();
      v = std::bit_cast<double>(bits);
      if (!std::isfinite(v)) continue;
    }
    const std::string text = werboot::format_double(v);
    const double back = std::strtod(text.c_str(), nullptr);
    CAPTURE(text);
    CHECK(std::bit_cast<std::uint64_t>(back) ==
          std::bit_cast<std::uint64_t>(v));
    ++checked;
  }
}

TEST_CASE("score summary JSON carries the partition and both WERs") {
  const auto j = werboot::score_summary_json(tiny_dataset());
  CHECK(keys_in_order(j) ==
        std::vector<std::string>{"dataset", "wer_a", "wer_b", "abs_diff"});
  CHECK(j["dataset"]["n"] == 3);
  CHECK(j["dataset"]["total_words"] == 20);
  CHECK(j["dataset"]["num_blocks"] == 2);
  CHECK(j["dataset"]["block_size_min"] == 1);
  CHECK(j["dataset"]["block_size_median"] == 1.5);
  CHECK(j["dataset"]["block_size_max"] == 2);
  CHECK(j["wer_a"].get<double>() == doctest::Approx(0.15));
  CHECK(j["wer_b"].get<double>() == doctest::Approx(0.2));
  CHECK(j["abs_diff"].get<double>() == doctest::Approx(0.05));
}

TEST_CASE("ci report JSON has the documented keys in order") {
  werboot::CiReport report;
  report.statistic = werboot::StatisticKind::wer_b;
  report.mode = werboot::ResampleMode::ordinary;
  report.point_estimate = 0.25;
  report.replicate_mean = 0.24;
  report.std_error = 0.01;
  report.percentile_ci = {0.22, 0.27};
  report.gaussian_ci = {0.2204, 0.2596};
  report.replicates = 123;
  report.seed = 77;
  report.alpha = 0.1;
  report.dataset_summary.utterances = 3;
  report.dataset_summary.total_words = 20;
  report.dataset_summary.num_blocks = 2;

  const auto j = werboot::to_json(report);
  CHECK(keys_in_order(j) ==
        std::vector<std::string>{"statistic", "mode", "B", "alpha", "seed",
                                 "rng", "point_estimate", "replicate_mean",
                                 "std_error", "percentile_ci", "gaussian_ci",
                                 "dataset_summary"});
  CHECK(j["statistic"] == "wer_b");
  CHECK(j["mode"] == "ordinary");
  CHECK(j["B"] == 123);
  CHECK(j["alpha"] == 0.1);
  CHECK(j["seed"] == 77);
  CHECK(j["rng"] == werboot::kRngName);
  CHECK(j["percentile_ci"]["lo"] == 0.22);
  CHECK(j["percentile_ci"]["hi"] == 0.27);
  CHECK(j["gaussian_ci"]["lo"] == 0.2204);
  CHECK(j["dataset_summary"]["n"] == 3);
}

namespace {

werboot::StudyResult small_result() {
  werboot::StudyResult result;
  result.config.synth.utterances = 60;
  result.config.synth.block_size = 30;
  result.config.replicates = 100;
  result.config.simulations = 2;
  result.config.seed = 11;
  result.true_delta = -0.005;

  werboot::MethodResult method;
  method.mode = werboot::ResampleMode::ordinary;
  method.avg_width = 0.01;
  method.coverage = 0.95;
  method.gaussian_avg_width = 0.0105;
  method.gaussian_coverage = 0.94;
  method.rows.push_back({-0.01, 0.0, true, -0.011, 0.001, true});
  method.rows.push_back({0.001, 0.012, false, 0.0, 0.013, false});
  result.methods.push_back(std::move(method));
  return result;
}

}  // namespace

TEST_CASE("study result JSON shape") {
  const auto result = small_result();
  const auto j = werboot::to_json(result);
  CHECK(keys_in_order(j) ==
        std::vector<std::string>{"config", "true_delta", "methods"});
  CHECK(keys_in_order(j["config"]) ==
        std::vector<std::string>{"synth", "B", "simulations", "alpha",
                                 "methods", "seed", "rng"});
  CHECK(j["config"]["B"] == 100);
  CHECK(j["config"]["methods"] == nlohmann::ordered_json::array({"ordinary"}));
  CHECK(j["config"]["synth"]["utterances"] == 60);
  CHECK(j["true_delta"] == -0.005);
  REQUIRE(j["methods"].size() == 1);
  CHECK(j["methods"][0]["mode"] == "ordinary");
  CHECK(j["methods"][0]["coverage"] == 0.95);
  REQUIRE(j["methods"][0]["rows"].size() == 2);
  CHECK(j["methods"][0]["rows"][1]["percentile_covered"] == false);
  CHECK(j["methods"][0]["rows"][0]["gaussian_lo"] == -0.011);
}

TEST_CASE("curve CSV golden") {
  std::vector<werboot::CurvePoint> curve;
  curve.push_back({400, 20, 20, 0, 0.1, 0.025, 0.0825});
  curve.push_back({1600, 40, 40, 0, 0.0825, 0.02, 0.0825});
  std::ostringstream out;
  werboot::write_curve_csv(out, curve);
  CHECK(out.str() ==
        "n,d,K,mean_sigma2_hat,sd_sigma2_hat,oracle_sigma2\n"
        "400,20,20,0.1,0.025,0.0825\n"
        "1600,40,40,0.0825,0.02,0.0825\n");
}

TEST_CASE("strip CSV golden") {
  std::vector<werboot::StripRow> strip;
  strip.push_back({werboot::ResampleMode::ordinary, 0, -0.01, 0.02, true});
  strip.push_back({werboot::ResampleMode::blockwise, 1, 0.005, 0.03, false});
  std::ostringstream out;
  werboot::write_strip_csv(out, strip);
  CHECK(out.str() ==
        "mode,sim,lo,hi,covered\n"
        "ordinary,0,-0.01,0.02,1\n"
        "blockwise,1,0.005,0.03,0\n");
}

TEST_CASE("study rows CSV golden") {
  std::ostringstream out;
  werboot::write_study_rows_csv(out, small_result());
  CHECK(out.str() ==
        "mode,sim,percentile_lo,percentile_hi,percentile_covered,"
        "gaussian_lo,gaussian_hi,gaussian_covered\n"
        "ordinary,0,-0.01,0,1,-0.011,0.001,1\n"
        "ordinary,1,0.001,0.012,0,0,0.013,0\n");
}

TEST_CASE("ci text report lines") {
  werboot::CiReport report;
  report.replicates = 1000;
  report.seed = 9;
  report.percentile_ci = {-0.01, 0.002};
  report.gaussian_ci = {-0.011, 0.003};
  report.dataset_summary.utterances = 3000;
  report.dataset_summary.total_words = 300000;
  report.dataset_summary.num_blocks = 100;
  report.dataset_summary.block_size_min = 30;
  report.dataset_summary.block_size_median = 30.0;
  report.dataset_summary.block_size_max = 30;

  const std::string text = werboot::format_ci_text(report);
  CHECK(text.find("statistic        abs_diff\n") != std::string::npos);
  CHECK(text.find("mode             blockwise\n") != std::string::npos);
  CHECK(text.find("splitmix64 seed=9\n") != std::string::npos);
  CHECK(text.find("[-0.01, 0.002]") != std::string::npos);
  CHECK(text.find("100 (size min 30 / median 30 / max 30)") !=
        std::string::npos);
  std::size_t lines = 0;
  for (const char c : text) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 13);
}

TEST_CASE("study table text") {
  const std::string text = werboot::format_study_table(small_result());
  CHECK(text.find("true_delta -0.005\n") != std::string::npos);
  CHECK(text.find("simulations 2  replicates 100  alpha 0.05\n") !=
        std::string::npos);
  CHECK(text.find("method") != std::string::npos);
  CHECK(text.find("avg_width") != std::string::npos);
  CHECK(text.find("ordinary") != std::string::npos);
  CHECK(text.find("95.0%") != std::string::npos);
  CHECK(text.find("0.0105") != std::string::npos);
}
