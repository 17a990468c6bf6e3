// Pipeline and CLI surface tests: configuration, corpus traversal,
// extraction against the planted ground truth, diagnostics, exit codes.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "citekeys/config.hpp"
#include "citekeys/pipeline.hpp"

using namespace citekeys;
namespace fs = std::filesystem;

namespace {

const std::string kSourceDir = CITEKEYS_SOURCE_DIR;
const std::string kCliPath = CITEKEYS_CLI_PATH;
const std::string kMiniCorpus = kSourceDir + "/data/minicorpus";
const std::string kBadFixtures = kSourceDir + "/data/fixtures/bad";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("citekeys-test-" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const int status = std::system((kCliPath + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

RunConfig mini_config() {
  RunConfig config;
  config.inputs = {kMiniCorpus};
  return config;
}

}  // namespace

TEST_CASE("config text parses values, arrays and comments") {
  RunConfig config;
  apply_config_text(config,
                    "# comment line\n"
                    "metric.threshold = 0.6\n"
                    "acronym.w_A = 2.5   # inline comment\n"
                    "year.mode = \"strict-paper\"\n"
                    "trend.decades = [1980, 1990, 2000, 2010]\n"
                    "formats = [\"json\", \"csv\"]\n"
                    "jobs = 4\n"
                    "dblp.substring_mode = true\n");
  CHECK(config.analytics.metric.threshold == 0.6);
  CHECK(config.analytics.acronym.w_A == 2.5);
  CHECK(config.year_mode == "strict-paper");
  CHECK(config.analytics.decade_boundaries == std::vector<int>{1980, 1990, 2000, 2010});
  CHECK(config.formats == std::vector<std::string>{"json", "csv"});
  CHECK(config.jobs == 4);
  CHECK(config.analytics.dblp_substring_mode);
}

TEST_CASE("unknown config keys are rejected") {
  RunConfig config;
  CHECK_THROWS_AS(apply_config_text(config, "no_such_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(config, "metric.threshold = nonsense\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(config, "metric.threshold = 7.5\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(config, "just a line\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(config, "trend.decades = [2000, 1990]\n"), ConfigError);
}

TEST_CASE("inline overrides apply after files") {
  RunConfig config;
  apply_config_override(config, "metric.w=0.25");
  CHECK(config.analytics.metric.w == 0.25);
  CHECK_THROWS_AS(apply_config_override(config, "metric.w"), ConfigError);
}

TEST_CASE("year window follows the configured mode") {
  RunConfig config;
  CHECK(config.year_window().min_year == 1800);
  config.year_mode = "strict-paper";
  CHECK(config.year_window().min_year == 1500);
  config.year_min = 1700;
  CHECK(config.year_window().min_year == 1700);
}

TEST_CASE("walk_corpus yields sorted tex and bbl files") {
  const auto files = walk_corpus({kMiniCorpus});
  REQUIRE(files.size() == 20);
  CHECK(files.front().paper_id == "p01.tex");
  CHECK(files[4].paper_id == "p05.bbl");
  CHECK(files[4].kind == SourceKind::bbl);
  for (std::size_t i = 1; i < files.size(); ++i) {
    CHECK(files[i - 1].paper_id < files[i].paper_id);
  }
  CHECK_THROWS_AS(walk_corpus({kMiniCorpus + "/does-not-exist"}), IoError);
}

TEST_CASE("extraction matches the planted ground truth") {
  const ExtractResult result = run_extract(mini_config());
  const std::string truth = read_file(kMiniCorpus + "/ground_truth.ndjson");

  std::vector<ordered_json> expected;
  std::istringstream in(truth);
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) expected.push_back(ordered_json::parse(line));
  }
  REQUIRE(result.records.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const ordered_json got = record_to_json(result.records[i]);
    INFO("record " << i << " " << got.dump());
    CHECK(got == expected[i]);
  }
}

TEST_CASE("diagnostics counters reconcile") {
  const ExtractResult result = run_extract(mini_config());
  const Diagnostics& d = result.diagnostics;
  CHECK(d.documents_scanned == 20);
  CHECK(d.documents_failed == 0);
  CHECK(d.bibliographies == 21);  // p20 has two environments
  CHECK(d.entries == d.keys + d.missing_keys);
  CHECK(d.author_pattern + d.author_classifier + d.author_none == d.entries);
  CHECK(d.year_command + d.year_evidence + d.year_fallback + d.year_none == d.entries);
  long pattern_total = 0;
  for (const auto& [id, count] : d.pattern_hits) pattern_total += count;
  CHECK(pattern_total == d.author_pattern);
  // Every implemented pattern fires somewhere in the corpus.
  for (const char* id : {"newblock", "pre_newblock", "period_quote", "bibinfo_author",
                         "bauthor", "name_cmd", "bibsc"}) {
    INFO(id);
    CHECK(d.pattern_hits.count(id) == 1);
  }
}

TEST_CASE("extraction is deterministic and parallel-invariant") {
  RunConfig config = mini_config();
  const std::string first = records_to_ndjson(run_extract(config).records);
  const std::string second = records_to_ndjson(run_extract(config).records);
  CHECK(first == second);
  config.jobs = 4;
  CHECK(records_to_ndjson(run_extract(config).records) == first);
}

TEST_CASE("records round-trip through ndjson") {
  const ExtractResult result = run_extract(mini_config());
  const std::string text = records_to_ndjson(result.records);
  const auto loaded = records_from_ndjson(text);
  CHECK(records_to_ndjson(loaded) == text);
}

TEST_CASE("malformed documents are flagged and skipped") {
  RunConfig config;
  config.inputs = {kBadFixtures};
  const ExtractResult result = run_extract(config);
  const Diagnostics& d = result.diagnostics;
  CHECK(d.documents_scanned == 7);
  CHECK(d.documents_failed == 2);  // unbalanced.tex, nested.tex
  CHECK(d.errors_by_category.at("unbalanced_environment") == 2);
  CHECK(d.dangling_blocks == 1);
  CHECK(d.missing_keys == 1);
  CHECK(d.unrecognized_commands == 1);
  CHECK(d.non_utf8_documents == 1);
  CHECK(d.entries == d.keys + d.missing_keys);

  // The healthy entries around the damage still come through.
  bool found_good = false, found_commented = false;
  for (const auto& record : result.records) {
    if (record.citation_key == "good96") found_good = true;
    if (record.citation_key == "real94") found_commented = true;
    CHECK(record.citation_key != "ghost");
    CHECK(record.citation_key != "commented-out");
  }
  CHECK(found_good);
  CHECK(found_commented);
}

TEST_CASE("comment stripping shapes the extracted entry") {
  RunConfig config;
  config.inputs = {kBadFixtures + "/comments.tex"};
  const ExtractResult result = run_extract(config);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].citation_key == "real94");
  REQUIRE(result.records[0].title.has_value());
  CHECK(*result.records[0].title == "100% genuine title");
}

TEST_CASE("training on the mini corpus meets the reported quality") {
  const TrainRunResult result = run_train(mini_config());
  CHECK(result.labeled_entries == 158);
  CHECK(result.instances > 1000);
  CHECK(result.train.holdout.f1() > 0.7);
  // Classifier fills entries when no pattern matches.
  const auto detected = detect_author_text(result.train.model, BibEntry{
      "\\bibitem{x} A. Author and B. Writer. Some unpatterned text 1999", "x", {}, "", 0, 0});
  CHECK(detected.has_value());
}

TEST_CASE("cli exit codes: success, config error, error-rate threshold") {
  const fs::path out = temp_dir("exit");
  CHECK(run_cli("extract -i " + kMiniCorpus + " -o " + (out / "ok").string()) == 0);
  CHECK(run_cli("extract -i " + kMiniCorpus + " -o " + (out / "bad").string() +
                " --set no_such_key=1") == 1);
  CHECK(run_cli("extract -i " + kMiniCorpus + "/does-not-exist -o " + (out / "io").string()) == 1);
  CHECK(run_cli("extract -i " + kBadFixtures + " -o " + (out / "rate").string() +
                " --set limits.max_error_rate=0.0") == 2);
  CHECK(run_cli("extract -i " + kBadFixtures + " -o " + (out / "lax").string() +
                " --set limits.max_error_rate=0.5") == 0);
}

TEST_CASE("cli analyze produces report files in every format") {
  const fs::path out = temp_dir("formats");
  REQUIRE(run_cli("analyze -i " + kMiniCorpus + " -o " + out.string()) == 0);
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "report.txt"));
  CHECK(fs::exists(out / "tables" / "cond_prob_m1.csv"));
  CHECK(fs::exists(out / "tables" / "trend.csv"));
  CHECK(fs::exists(out / "tables" / "top_terms.csv"));
  const std::string text = read_file((out / "report.txt").string());
  CHECK(text.find("Corpus totals") != std::string::npos);
  CHECK(text.find("Labeling pattern over time") != std::string::npos);
}

TEST_CASE("cli analyze accepts prior extraction records") {
  const fs::path out = temp_dir("records");
  REQUIRE(run_cli("extract -i " + kMiniCorpus + " -o " + out.string()) == 0);
  REQUIRE(run_cli("analyze --records " + (out / "records.ndjson").string() + " -o " +
                  (out / "from-records").string()) == 0);
  REQUIRE(run_cli("analyze -i " + kMiniCorpus + " -o " + (out / "direct").string()) == 0);
  CHECK(read_file((out / "from-records" / "report.json").string()) ==
        read_file((out / "direct" / "report.json").string()));
}

TEST_CASE("cli report merges partial reports") {
  const fs::path out = temp_dir("merge");
  // Split the corpus in two halves by file.
  const auto files = walk_corpus({kMiniCorpus});
  fs::create_directories(out / "half1");
  fs::create_directories(out / "half2");
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::copy_file(files[i].absolute_path,
                  out / (i % 2 == 0 ? "half1" : "half2") / files[i].paper_id);
  }
  REQUIRE(run_cli("analyze -i " + (out / "half1").string() + " -o " + (out / "r1").string()) == 0);
  REQUIRE(run_cli("analyze -i " + (out / "half2").string() + " -o " + (out / "r2").string()) == 0);
  REQUIRE(run_cli("report --in " + (out / "r1" / "report.json").string() + " --in " +
                  (out / "r2" / "report.json").string() + " -o " + (out / "merged").string()) == 0);
  REQUIRE(run_cli("analyze -i " + kMiniCorpus + " -o " + (out / "whole").string()) == 0);
  CHECK(read_file((out / "merged" / "report.json").string()) ==
        read_file((out / "whole" / "report.json").string()));
}

TEST_CASE("cli train and eval round-trip a model file") {
  const fs::path out = temp_dir("train");
  REQUIRE(run_cli("train -i " + kMiniCorpus + " -o " + out.string()) == 0);
  CHECK(fs::exists(out / "model.txt"));
  CHECK(fs::exists(out / "train_report.json"));
  REQUIRE(run_cli("eval -i " + kMiniCorpus + " --model " + (out / "model.txt").string() + " -o " +
                  (out / "eval").string()) == 0);
  CHECK(fs::exists(out / "eval" / "eval.json"));
  // Same seed, same corpus: byte-identical model.
  const fs::path out2 = temp_dir("train2");
  REQUIRE(run_cli("train -i " + kMiniCorpus + " -o " + out2.string()) == 0);
  CHECK(read_file((out / "model.txt").string()) == read_file((out2 / "model.txt").string()));
}
