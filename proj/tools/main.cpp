#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "werboot/blockvar.hpp"
#include "werboot/data.hpp"
#include "werboot/errors.hpp"
#include "werboot/report.hpp"
#include "werboot/resample.hpp"
#include "werboot/rng.hpp"
#include "werboot/study.hpp"
#include "werboot/synth.hpp"

namespace {

using nlohmann::ordered_json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool json = false;
  std::string output;  // primary report file; empty = stdout only
};

struct ScoreOptions {
  std::string ref;
  std::string hyp_a;
  std::string hyp_b;
  std::string block_map;
  std::string out_counts;
  bool case_fold = false;
};

struct CiOptions {
  std::string counts;
  std::string ref;
  std::string hyp_a;
  std::string hyp_b;
  std::string block_map;
  bool case_fold = false;
  std::string mode = "blockwise";
  std::string statistic = "abs_diff";
  std::uint32_t replicates = 1000;
  double alpha = 0.05;
  std::string dump_replicates;
};

struct VarcurveOptions {
  std::uint32_t m = 100;
  double wer_a = 0.10;
  double wer_b = 0.095;
  std::uint32_t gen_block = 30;
  double rho = 0.0;
  bool iid = false;
  std::string n_grid = "3000,6750,12000,27000";
  std::string d_rule = "sqrt";
  std::size_t trials = 200;
  std::size_t oracle_datasets = 20000;
  std::size_t oracle_n = 0;
};

struct SimulateOptions {
  std::uint32_t n = 3000;
  std::uint32_t m = 100;
  double wer_a = 0.10;
  double wer_b = 0.095;
  std::uint32_t d = 30;
  double rho = 0.0;
  std::uint32_t replicates = 1000;
  std::uint32_t simulations = 1000;
  double alpha = 0.05;
  std::string methods = "both";
  std::string out_csv;
  std::string strip;
  std::size_t strip_k = 30;
  std::string dump_dataset;
};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw werboot::ValidationError("cannot open output file " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw werboot::ValidationError("failed writing output file " + path);
  }
}

std::optional<std::filesystem::path> optional_path(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return std::filesystem::path(path);
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string_view item(text.data() + start, end - start);
    std::size_t value = 0;
    const auto* first = item.data();
    const auto* last = first + item.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || value == 0) {
      throw werboot::ValidationError("--n-grid: expected positive integers "
                                     "separated by commas, got '" +
                                     text + "'");
    }
    grid.push_back(value);
    start = end + 1;
  }
  return grid;
}

std::string text_row(const std::string& label, const std::string& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-16s ", label.c_str());
  return std::string(buf) + value + "\n";
}

int run_score(const ScoreOptions& opt, const GlobalOptions& global) {
  const auto dataset =
      werboot::score_transcripts(opt.ref, opt.hyp_a, opt.hyp_b,
                                 optional_path(opt.block_map), opt.case_fold);
  werboot::save_counts(dataset, opt.out_counts);

  ordered_json report;
  report["inputs"] = {{"ref", opt.ref},
                      {"hyp_a", opt.hyp_a},
                      {"hyp_b", opt.hyp_b},
                      {"block_map", opt.block_map},
                      {"case_fold", opt.case_fold},
                      {"out_counts", opt.out_counts}};
  report.update(werboot::score_summary_json(dataset));

  if (!global.output.empty()) {
    write_text_file(global.output, report.dump(2) + "\n");
  }
  if (global.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    const auto summary = werboot::partition_summary(dataset);
    std::string text;
    text += text_row("utterances", std::to_string(summary.utterances));
    text += text_row("total_words", std::to_string(summary.total_words));
    text += text_row("num_blocks", std::to_string(summary.num_blocks));
    text += text_row("wer_a",
                     werboot::format_double(report["wer_a"].get<double>()));
    text += text_row("wer_b",
                     werboot::format_double(report["wer_b"].get<double>()));
    text += text_row("abs_diff",
                     werboot::format_double(report["abs_diff"].get<double>()));
    text += text_row("counts_file", opt.out_counts);
    std::cout << text;
  }
  return 0;
}

int run_ci(const CiOptions& opt, const GlobalOptions& global) {
  werboot::EvalDataset dataset;
  ordered_json inputs;
  if (!opt.counts.empty()) {
    if (!opt.ref.empty() || !opt.hyp_a.empty() || !opt.hyp_b.empty() ||
        !opt.block_map.empty()) {
      throw werboot::ValidationError(
          "--counts cannot be combined with transcript inputs");
    }
    dataset = werboot::load_counts(opt.counts);
    inputs["counts"] = opt.counts;
  } else {
    if (opt.ref.empty() || opt.hyp_a.empty() || opt.hyp_b.empty()) {
      throw werboot::ValidationError(
          "ci needs either --counts or all of --ref/--hyp-a/--hyp-b");
    }
    dataset =
        werboot::score_transcripts(opt.ref, opt.hyp_a, opt.hyp_b,
                                   optional_path(opt.block_map), opt.case_fold);
    inputs = {{"ref", opt.ref},
              {"hyp_a", opt.hyp_a},
              {"hyp_b", opt.hyp_b},
              {"block_map", opt.block_map},
              {"case_fold", opt.case_fold}};
  }

  werboot::BootstrapConfig config;
  config.replicates = opt.replicates;
  config.seed = global.seed;
  config.mode = werboot::parse_mode(opt.mode);
  config.statistic = werboot::parse_statistic(opt.statistic);
  config.alpha = opt.alpha;
  config.jobs = global.jobs;

  std::vector<double> replicates;
  auto* replicates_out = opt.dump_replicates.empty() ? nullptr : &replicates;
  const auto report = werboot::run_ci(dataset, config, replicates_out);

  if (replicates_out != nullptr) {
    std::string dump;
    dump.reserve(replicates.size() * 12);
    for (double r : replicates) {
      dump += werboot::format_double(r);
      dump += '\n';
    }
    write_text_file(opt.dump_replicates, dump);
  }

  auto body = werboot::to_json(report);
  body["inputs"] = std::move(inputs);
  if (!global.output.empty()) {
    write_text_file(global.output, body.dump(2) + "\n");
  }
  if (global.json) {
    std::cout << body.dump(2) << "\n";
  } else {
    std::cout << werboot::format_ci_text(report);
  }
  return 0;
}

int run_varcurve(const VarcurveOptions& opt, const GlobalOptions& global) {
  const double rho = opt.iid ? 0.0 : opt.rho;

  werboot::SynthConfig base;
  base.words_per_utterance = opt.m;
  base.wer_a = opt.wer_a;
  base.wer_b = opt.wer_b;
  base.block_size = opt.gen_block;
  base.rho = rho;

  const werboot::SeriesGenerator generator =
      [base](std::size_t n, std::uint64_t seed) {
        werboot::SynthConfig cfg = base;
        cfg.utterances = static_cast<std::uint32_t>(n);
        cfg.seed = seed;
        const auto counts = werboot::generate_error_counts(cfg);
        return werboot::z_series(counts, cfg.words_per_utterance);
      };

  werboot::CurveConfig curve_config;
  curve_config.n_grid = parse_grid(opt.n_grid);
  curve_config.d_rule = werboot::BlockRule::parse(opt.d_rule);
  curve_config.trials = opt.trials;
  curve_config.oracle_datasets = opt.oracle_datasets;
  curve_config.oracle_n = opt.oracle_n;
  curve_config.seed = global.seed;
  curve_config.jobs = global.jobs;

  const auto curve = werboot::consistency_curve(generator, curve_config);

  std::ostringstream out;
  out << "# werboot varcurve\n";
  out << "# m=" << opt.m << " wer_a=" << werboot::format_double(opt.wer_a)
      << " wer_b=" << werboot::format_double(opt.wer_b)
      << " gen_block=" << opt.gen_block
      << " rho=" << werboot::format_double(rho) << "\n";
  out << "# d_rule=" << curve_config.d_rule.name()
      << " trials=" << opt.trials
      << " oracle_datasets=" << opt.oracle_datasets << " oracle_n="
      << (opt.oracle_n != 0 ? opt.oracle_n : curve_config.n_grid.front())
      << " rng=" << werboot::kRngName << " seed=" << global.seed << "\n";
  werboot::write_curve_csv(out, curve);

  if (!global.output.empty()) {
    write_text_file(global.output, out.str());
  } else {
    std::cout << out.str();
  }
  return 0;
}

int run_simulate(const SimulateOptions& opt, const GlobalOptions& global) {
  werboot::StudyConfig config;
  config.synth.utterances = opt.n;
  config.synth.words_per_utterance = opt.m;
  config.synth.wer_a = opt.wer_a;
  config.synth.wer_b = opt.wer_b;
  config.synth.block_size = opt.d;
  config.synth.rho = opt.rho;
  config.replicates = opt.replicates;
  config.simulations = opt.simulations;
  config.alpha = opt.alpha;
  if (opt.methods == "both") {
    config.run_ordinary = true;
    config.run_blockwise = true;
  } else if (opt.methods == "ordinary") {
    config.run_ordinary = true;
    config.run_blockwise = false;
  } else if (opt.methods == "blockwise") {
    config.run_ordinary = false;
    config.run_blockwise = true;
  } else {
    throw werboot::ValidationError("unknown --methods value '" + opt.methods +
                                   "' (expected both, ordinary, or blockwise)");
  }
  config.seed = global.seed;
  config.jobs = global.jobs;

  if (!opt.dump_dataset.empty()) {
    werboot::SynthConfig synth = config.synth;
    synth.seed = global.seed;
    werboot::save_counts(werboot::generate_dataset(synth), opt.dump_dataset);
  }

  const auto result = werboot::run_study(config);
  const auto body = werboot::to_json(result);

  if (!global.output.empty()) {
    write_text_file(global.output, body.dump(2) + "\n");
  }
  if (!opt.out_csv.empty()) {
    std::ostringstream csv;
    csv << "# werboot simulate per-simulation rows\n";
    csv << "# " << body["config"].dump() << "\n";
    werboot::write_study_rows_csv(csv, result);
    write_text_file(opt.out_csv, csv.str());
  }
  if (!opt.strip.empty()) {
    const auto strip = werboot::emit_ci_strip(result, opt.strip_k);
    std::ostringstream csv;
    csv << "# werboot ci strip first_k=" << opt.strip_k << "\n";
    csv << "# " << body["config"].dump() << "\n";
    werboot::write_strip_csv(csv, strip);
    write_text_file(opt.strip, csv.str());
  }

  if (global.json) {
    std::cout << body.dump(2) << "\n";
  } else {
    std::cout << werboot::format_study_table(result);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bootstrap confidence intervals and coverage studies for "
               "word-error-rate comparisons of two transcription systems"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed,
                 "Master RNG seed; every result is a deterministic function "
                 "of the inputs and this seed")
      ->envname("WERBOOT_SEED");
  app.add_option("--jobs", global.jobs,
                 "Worker threads, 0 = all cores; outputs do not depend on it");
  app.add_flag("--json", global.json,
               "Print the JSON report to stdout instead of text");
  app.add_option("--output", global.output,
                 "Also write the primary report (JSON, or CSV for varcurve) "
                 "to this file");

  ScoreOptions score_opt;
  auto* score_cmd = app.add_subcommand(
      "score", "Score two hypothesis transcripts against a reference and "
               "write per-utterance error counts");
  score_cmd->add_option("--ref", score_opt.ref,
                        "Reference transcript, utt_id<TAB>text per line")
      ->required();
  score_cmd->add_option("--hyp-a", score_opt.hyp_a,
                        "System A hypothesis transcript")
      ->required();
  score_cmd->add_option("--hyp-b", score_opt.hyp_b,
                        "System B hypothesis transcript")
      ->required();
  score_cmd->add_option("--block-map", score_opt.block_map,
                        "utt_id<TAB>block_id map; omitted = every utterance "
                        "is its own block");
  score_cmd->add_flag("--case-fold", score_opt.case_fold,
                      "Lowercase ASCII letters before comparison");
  score_cmd->add_option("--out-counts", score_opt.out_counts,
                        "Write the counts TSV here (input of `ci`)")
      ->required();

  CiOptions ci_opt;
  auto* ci_cmd = app.add_subcommand(
      "ci", "Bootstrap a confidence interval for a WER statistic");
  ci_cmd->add_option("--counts", ci_opt.counts,
                     "Counts TSV produced by `score` (exclusive with "
                     "transcript inputs)");
  ci_cmd->add_option("--ref", ci_opt.ref, "Reference transcript");
  ci_cmd->add_option("--hyp-a", ci_opt.hyp_a, "System A hypothesis");
  ci_cmd->add_option("--hyp-b", ci_opt.hyp_b, "System B hypothesis");
  ci_cmd->add_option("--block-map", ci_opt.block_map, "utt_id<TAB>block_id map");
  ci_cmd->add_flag("--case-fold", ci_opt.case_fold,
                   "Lowercase ASCII letters before comparison");
  ci_cmd->add_option("--mode", ci_opt.mode,
                     "Resampling mode: ordinary | blockwise")
      ->capture_default_str();
  ci_cmd->add_option("--statistic", ci_opt.statistic,
                     "wer_a | wer_b | abs_diff | rel_diff")
      ->capture_default_str();
  ci_cmd->add_option("--replicates", ci_opt.replicates,
                     "Bootstrap replicates B")
      ->capture_default_str();
  ci_cmd->add_option("--alpha", ci_opt.alpha,
                     "Two-sided miscoverage level of the intervals")
      ->capture_default_str();
  ci_cmd->add_option("--dump-replicates", ci_opt.dump_replicates,
                     "Write the raw replicate statistics here, one per line");

  VarcurveOptions var_opt;
  auto* var_cmd = app.add_subcommand(
      "varcurve", "Empirical consistency curve of the blockwise variance "
                  "estimator on synthetic data (CSV)");
  var_cmd->add_option("--m", var_opt.m, "Words per utterance")
      ->capture_default_str();
  var_cmd->add_option("--wer-a", var_opt.wer_a, "True WER of system A")
      ->capture_default_str();
  var_cmd->add_option("--wer-b", var_opt.wer_b, "True WER of system B")
      ->capture_default_str();
  var_cmd->add_option("--gen-block", var_opt.gen_block,
                      "Generator block size (must divide every grid n)")
      ->capture_default_str();
  var_cmd->add_option("--rho", var_opt.rho,
                      "Within-block copula correlation")
      ->capture_default_str();
  var_cmd->add_flag("--iid", var_opt.iid,
                    "Force independent utterances (rho = 0)");
  var_cmd->add_option("--n-grid", var_opt.n_grid,
                      "Comma-separated utterance counts")
      ->capture_default_str();
  var_cmd->add_option("--d-rule", var_opt.d_rule,
                      "Estimator block rule: sqrt | sqrt-aligned:A | fixed:D")
      ->capture_default_str();
  var_cmd->add_option("--trials", var_opt.trials,
                      "Estimator draws per grid point")
      ->capture_default_str();
  var_cmd->add_option("--oracle-datasets", var_opt.oracle_datasets,
                      "Fresh datasets behind the brute-force variance target")
      ->capture_default_str();
  var_cmd->add_option("--oracle-n", var_opt.oracle_n,
                      "Series length for the oracle (0 = first grid entry)")
      ->capture_default_str();

  SimulateOptions sim_opt;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo coverage study of both interval methods on "
                  "synthetic block-correlated data");
  sim_cmd->add_option("--n", sim_opt.n, "Utterances per simulated dataset")
      ->capture_default_str();
  sim_cmd->add_option("--m", sim_opt.m, "Words per utterance")
      ->capture_default_str();
  sim_cmd->add_option("--wer-a", sim_opt.wer_a, "True WER of system A")
      ->capture_default_str();
  sim_cmd->add_option("--wer-b", sim_opt.wer_b, "True WER of system B")
      ->capture_default_str();
  sim_cmd->add_option("--d", sim_opt.d, "Block size of the generator and of "
                                        "blockwise resampling")
      ->capture_default_str();
  sim_cmd->add_option("--rho", sim_opt.rho, "Within-block copula correlation")
      ->capture_default_str();
  sim_cmd->add_option("--replicates", sim_opt.replicates,
                      "Bootstrap replicates B per simulation")
      ->capture_default_str();
  sim_cmd->add_option("--simulations", sim_opt.simulations,
                      "Number of simulated datasets")
      ->capture_default_str();
  sim_cmd->add_option("--alpha", sim_opt.alpha,
                      "Two-sided miscoverage level")
      ->capture_default_str();
  sim_cmd->add_option("--methods", sim_opt.methods,
                      "both | ordinary | blockwise")
      ->capture_default_str();
  sim_cmd->add_option("--out-csv", sim_opt.out_csv,
                      "Write per-simulation interval rows as CSV");
  sim_cmd->add_option("--strip", sim_opt.strip,
                      "Write a plot-ready CI strip CSV for the first "
                      "--strip-k simulations");
  sim_cmd->add_option("--strip-k", sim_opt.strip_k,
                      "Simulations in the strip")
      ->capture_default_str();
  sim_cmd->add_option("--dump-dataset", sim_opt.dump_dataset,
                      "Write one generated dataset as a counts TSV");

  for (auto* sub : {score_cmd, ci_cmd, var_cmd, sim_cmd}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    app.exit(e);
    return 2;
  }

  try {
    if (score_cmd->parsed()) return run_score(score_opt, global);
    if (ci_cmd->parsed()) return run_ci(ci_opt, global);
    if (var_cmd->parsed()) return run_varcurve(var_opt, global);
    if (sim_cmd->parsed()) return run_simulate(sim_opt, global);
  } catch (const werboot::StatisticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const werboot::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
