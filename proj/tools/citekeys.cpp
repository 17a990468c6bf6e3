// citekeys.cpp - command-line front end for the extraction and analytics
// pipeline
//
// Subcommands: extract, train, eval, analyze, report, all.
// Exit codes: 0 success, 1 fatal configuration or I/O error, 2 when the
// diagnostics error rate exceeds limits.max_error_rate.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "citekeys/config.hpp"
#include "citekeys/pipeline.hpp"

namespace {

namespace fs = std::filesystem;
using namespace citekeys;

struct CommonArgs {
  std::vector<std::string> inputs;
  std::string config_file;
  std::vector<std::string> overrides;
  std::string output_dir;
  std::string model_file;
  int jobs = 0;
};

void add_common_options(CLI::App* cmd, CommonArgs& args, bool with_inputs = true) {
  if (with_inputs) {
    cmd->add_option("-i,--input", args.inputs, "Corpus files or directories (.tex/.bbl)");
  }
  cmd->add_option("-c,--config", args.config_file, "Config file (key = value lines)");
  cmd->add_option("--set", args.overrides, "Inline override, key=value (repeatable)");
  cmd->add_option("-o,--output", args.output_dir, "Output directory");
  cmd->add_option("--jobs", args.jobs, "Parallel file jobs");
}

RunConfig build_config(const CommonArgs& args) {
  RunConfig config;
  if (!args.config_file.empty()) apply_config_file(config, args.config_file);
  for (const std::string& assignment : args.overrides) {
    apply_config_override(config, assignment);
  }
  if (!args.inputs.empty()) config.inputs = args.inputs;
  if (!args.output_dir.empty()) config.output_dir = args.output_dir;
  if (!args.model_file.empty()) config.model_file = args.model_file;
  if (args.jobs > 0) config.jobs = args.jobs;
  load_type_lexicon(config);
  if (config.inputs.empty()) throw ConfigError("no input paths given (use -i or inputs=[...])");
  return config;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const fs::path& path, std::string_view content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::optional<ClassifierModel> maybe_load_model(const RunConfig& config) {
  if (config.model_file.empty()) return std::nullopt;
  return deserialize_model(read_text_file(config.model_file));
}

ordered_json eval_to_json(const EvalReport& report) {
  char buf[32];
  ordered_json j;
  j["tp"] = report.tp;
  j["fp"] = report.fp;
  j["tn"] = report.tn;
  j["fn"] = report.fn;
  std::snprintf(buf, sizeof(buf), "%.6f", report.precision());
  j["precision"] = buf;
  std::snprintf(buf, sizeof(buf), "%.6f", report.recall());
  j["recall"] = buf;
  std::snprintf(buf, sizeof(buf), "%.6f", report.f1());
  j["f1"] = buf;
  return j;
}

int finish_with_diagnostics(const Diagnostics& diag, const RunConfig& config) {
  std::fprintf(stderr,
               "documents %ld (failed %ld), bibliographies %ld, entries %ld, keys %ld\n",
               diag.documents_scanned, diag.documents_failed, diag.bibliographies, diag.entries,
               diag.keys);
  if (diag.error_rate() > config.max_error_rate) {
    std::fprintf(stderr, "error rate %.3f exceeds limit %.3f\n", diag.error_rate(),
                 config.max_error_rate);
    return 2;
  }
  return 0;
}

int cmd_extract(const CommonArgs& args) {
  const RunConfig config = build_config(args);
  const auto model = maybe_load_model(config);
  const ExtractResult result = run_extract(config, model ? &*model : nullptr);
  fs::create_directories(config.output_dir);
  write_text_file(fs::path(config.output_dir) / "records.ndjson",
                  records_to_ndjson(result.records));
  write_text_file(fs::path(config.output_dir) / "diagnostics.json",
                  diagnostics_to_json(result.diagnostics).dump(2) + "\n");
  return finish_with_diagnostics(result.diagnostics, config);
}

int cmd_train(const CommonArgs& args, bool cross_validate) {
  const RunConfig config = build_config(args);
  const TrainRunResult result = run_train(config, cross_validate);
  fs::create_directories(config.output_dir);
  const fs::path model_path = config.model_file.empty()
                                  ? fs::path(config.output_dir) / "model.txt"
                                  : fs::path(config.model_file);
  write_text_file(model_path, serialize_model(result.train.model));

  ordered_json j;
  j["labeled_entries"] = result.labeled_entries;
  j["instances"] = result.instances;
  j["holdout"] = eval_to_json(result.train.holdout);
  if (!result.train.cv_reports.empty()) {
    double p = 0, r = 0, f = 0;
    for (const EvalReport& rep : result.train.cv_reports) {
      p += rep.precision();
      r += rep.recall();
      f += rep.f1();
    }
    const double k = static_cast<double>(result.train.cv_reports.size());
    char buf[32];
    ordered_json cv;
    cv["folds"] = result.train.cv_reports.size();
    std::snprintf(buf, sizeof(buf), "%.6f", p / k);
    cv["mean_precision"] = buf;
    std::snprintf(buf, sizeof(buf), "%.6f", r / k);
    cv["mean_recall"] = buf;
    std::snprintf(buf, sizeof(buf), "%.6f", f / k);
    cv["mean_f1"] = buf;
    j["cross_validation"] = std::move(cv);
  }
  write_text_file(fs::path(config.output_dir) / "train_report.json", j.dump(2) + "\n");
  std::printf("model written to %s (holdout F1 %.4f)\n", model_path.string().c_str(),
              result.train.holdout.f1());
  return finish_with_diagnostics(result.diagnostics, config);
}

int cmd_eval(const CommonArgs& args) {
  const RunConfig config = build_config(args);
  if (config.model_file.empty()) throw ConfigError("eval needs --model");
  const ClassifierModel model = deserialize_model(read_text_file(config.model_file));
  const EvalReport report = run_eval(config, model);
  const std::string text = eval_to_json(report).dump(2) + "\n";
  fs::create_directories(config.output_dir);
  write_text_file(fs::path(config.output_dir) / "eval.json", text);
  std::fputs(text.c_str(), stdout);
  return 0;
}

int cmd_analyze(const CommonArgs& args, const std::string& records_file) {
  RunConfig config;
  std::vector<BibMetaRecord> records;
  Diagnostics diagnostics;
  bool have_diagnostics = false;
  if (!records_file.empty()) {
    CommonArgs no_input = args;
    no_input.inputs.clear();
    config = [&] {
      RunConfig c;
      if (!no_input.config_file.empty()) apply_config_file(c, no_input.config_file);
      for (const std::string& assignment : no_input.overrides) apply_config_override(c, assignment);
      if (!no_input.output_dir.empty()) c.output_dir = no_input.output_dir;
      load_type_lexicon(c);
      return c;
    }();
    records = records_from_ndjson(read_text_file(records_file));
  } else {
    config = build_config(args);
    const auto model = maybe_load_model(config);
    ExtractResult result = run_extract(config, model ? &*model : nullptr);
    records = std::move(result.records);
    diagnostics = result.diagnostics;
    have_diagnostics = true;
  }
  const CorpusReport report = run_analyze(records, config);
  write_report_outputs(report, config);
  if (have_diagnostics) {
    write_text_file(fs::path(config.output_dir) / "diagnostics.json",
                    diagnostics_to_json(diagnostics).dump(2) + "\n");
    return finish_with_diagnostics(diagnostics, config);
  }
  return 0;
}

int cmd_report(const CommonArgs& args, const std::vector<std::string>& report_files) {
  RunConfig config;
  if (!args.config_file.empty()) apply_config_file(config, args.config_file);
  for (const std::string& assignment : args.overrides) apply_config_override(config, assignment);
  if (!args.output_dir.empty()) config.output_dir = args.output_dir;
  load_type_lexicon(config);
  if (report_files.empty()) throw ConfigError("report needs at least one --in file");

  CorpusReport merged;
  bool first = true;
  for (const std::string& path : report_files) {
    const CorpusReport report = report_from_json(ordered_json::parse(read_text_file(path)));
    merged = first ? report : merge_reports(merged, report);
    first = false;
  }
  write_report_outputs(merged, config);
  return 0;
}

int cmd_all(const CommonArgs& args, bool cross_validate) {
  const RunConfig config = build_config(args);
  fs::create_directories(config.output_dir);

  // Pattern pass: ground truth plus training material.
  std::vector<LabeledText> labeled;
  ExtractResult extraction = run_extract(config, nullptr, &labeled);

  // Train when the pattern pass produced both classes; then rerun extraction
  // with the classifier filling the entries no pattern covered.
  bool trained = false;
  const std::vector<LabeledInstance> instances = instances_from_labeled_text(labeled);
  try {
    const TrainResult training = train(instances, config.classifier, cross_validate);
    const fs::path model_path = fs::path(config.output_dir) / "model.txt";
    write_text_file(model_path, serialize_model(training.model));
    std::printf("model written to %s (holdout F1 %.4f)\n", model_path.string().c_str(),
                training.holdout.f1());
    extraction = run_extract(config, &training.model);
    trained = true;
  } catch (const DegenerateTraining& e) {
    std::fprintf(stderr, "classifier skipped: %s\n", e.what());
  }
  (void)trained;

  write_text_file(fs::path(config.output_dir) / "records.ndjson",
                  records_to_ndjson(extraction.records));
  write_text_file(fs::path(config.output_dir) / "diagnostics.json",
                  diagnostics_to_json(extraction.diagnostics).dump(2) + "\n");
  const CorpusReport report = run_analyze(extraction.records, config);
  write_report_outputs(report, config);
  return finish_with_diagnostics(extraction.diagnostics, config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Citation-key extraction and analytics for LaTeX bibliographies"};
  app.require_subcommand(1);

  CommonArgs extract_args, train_args, eval_args, analyze_args, report_args, all_args;
  bool train_cv = false, all_cv = false;
  std::string records_file;
  std::vector<std::string> report_files;

  CLI::App* extract = app.add_subcommand("extract", "Parse the corpus into per-entry records");
  add_common_options(extract, extract_args);
  extract->add_option("--model", extract_args.model_file, "Classifier model for unmatched entries");

  CLI::App* train = app.add_subcommand("train", "Train the name classifier on pattern ground truth");
  add_common_options(train, train_args);
  train->add_option("--model", train_args.model_file, "Where to write the model");
  train->add_flag("--cv", train_cv, "Also run k-fold cross validation");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a model against pattern ground truth");
  add_common_options(eval, eval_args);
  eval->add_option("--model", eval_args.model_file, "Model file")->required();

  CLI::App* analyze = app.add_subcommand("analyze", "Extract (or load records) and build the corpus report");
  add_common_options(analyze, analyze_args);
  analyze->add_option("--model", analyze_args.model_file, "Classifier model for unmatched entries");
  analyze->add_option("--records", records_file, "Use an existing records.ndjson instead of parsing");

  CLI::App* report = app.add_subcommand("report", "Merge report JSON files and render tables");
  add_common_options(report, report_args, /*with_inputs=*/false);
  report->add_option("--in", report_files, "report.json files to merge")->required();

  CLI::App* all = app.add_subcommand("all", "extract + train + classify + analyze");
  add_common_options(all, all_args);
  all->add_flag("--cv", all_cv, "Also run k-fold cross validation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) return cmd_extract(extract_args);
    if (train->parsed()) return cmd_train(train_args, train_cv);
    if (eval->parsed()) return cmd_eval(eval_args);
    if (analyze->parsed()) return cmd_analyze(analyze_args, records_file);
    if (report->parsed()) return cmd_report(report_args, report_files);
    if (all->parsed()) return cmd_all(all_args, all_cv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
