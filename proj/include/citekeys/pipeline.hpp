// pipeline.hpp - corpus traversal and the extract / train / analyze runs
//
// File-level parallel map with a deterministic merge: results are collected
// in sorted file order no matter how many jobs ran, so records, reports and
// diagnostics are byte-stable across reruns.

#pragma once
#ifndef CITEKEYS_PIPELINE_HPP
#define CITEKEYS_PIPELINE_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "citekeys/analytics.hpp"
#include "citekeys/config.hpp"
#include "citekeys/errors.hpp"
#include "citekeys/latex.hpp"
#include "citekeys/logistic.hpp"
#include "citekeys/meta.hpp"
#include "citekeys/names.hpp"
#include "citekeys/records.hpp"
#include "citekeys/report_io.hpp"

namespace citekeys {

// ---------------------------------------------------------------------------
// Corpus traversal
// ---------------------------------------------------------------------------

struct CorpusFile {
  std::string absolute_path;
  std::string paper_id;  // path relative to its input root
  SourceKind kind = SourceKind::tex;
};

// Recursive traversal of the input paths, yielding .tex and .bbl files in
// sorted paper-id order. Plain file arguments are taken as-is.
inline std::vector<CorpusFile> walk_corpus(const std::vector<std::string>& inputs) {
  namespace fs = std::filesystem;
  std::vector<CorpusFile> files;
  auto classify = [](const fs::path& p) -> std::optional<SourceKind> {
    const std::string ext = p.extension().string();
    if (ext == ".tex") return SourceKind::tex;
    if (ext == ".bbl") return SourceKind::bbl;
    return std::nullopt;
  };
  for (const std::string& input : inputs) {
    const fs::path root(input);
    std::error_code ec;
    if (fs::is_directory(root, ec)) {
      for (fs::recursive_directory_iterator it(root, ec), end; it != end; it.increment(ec)) {
        if (ec) break;
        if (!it->is_regular_file(ec)) continue;
        if (const auto kind = classify(it->path())) {
          files.push_back({it->path().string(),
                           fs::relative(it->path(), root, ec).generic_string(), *kind});
        }
      }
    } else if (fs::is_regular_file(root, ec)) {
      if (const auto kind = classify(root)) {
        files.push_back({root.string(), root.filename().generic_string(), *kind});
      }
    } else {
      throw IoError("input path does not exist: " + input);
    }
  }
  std::sort(files.begin(), files.end(), [](const CorpusFile& a, const CorpusFile& b) {
    if (a.paper_id != b.paper_id) return a.paper_id < b.paper_id;
    return a.absolute_path < b.absolute_path;
  });
  return files;
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

struct Diagnostics {
  long documents_scanned = 0;
  long documents_failed = 0;    // unreadable or unbalanced environment
  long non_utf8_documents = 0;
  long bibliographies = 0;
  long dangling_blocks = 0;
  long unrecognized_commands = 0;
  long entries = 0;
  long keys = 0;
  long missing_keys = 0;
  long author_pattern = 0;
  long author_classifier = 0;
  long author_none = 0;
  long year_command = 0;
  long year_evidence = 0;
  long year_fallback = 0;
  long year_none = 0;
  std::map<std::string, long> pattern_hits;
  std::map<std::string, long> errors_by_category;

  double error_rate() const {
    return documents_scanned > 0
               ? static_cast<double>(documents_failed) / static_cast<double>(documents_scanned)
               : 0.0;
  }

  void merge(const Diagnostics& other) {
    documents_scanned += other.documents_scanned;
    documents_failed += other.documents_failed;
    non_utf8_documents += other.non_utf8_documents;
    bibliographies += other.bibliographies;
    dangling_blocks += other.dangling_blocks;
    unrecognized_commands += other.unrecognized_commands;
    entries += other.entries;
    keys += other.keys;
    missing_keys += other.missing_keys;
    author_pattern += other.author_pattern;
    author_classifier += other.author_classifier;
    author_none += other.author_none;
    year_command += other.year_command;
    year_evidence += other.year_evidence;
    year_fallback += other.year_fallback;
    year_none += other.year_none;
    for (const auto& [k, v] : other.pattern_hits) pattern_hits[k] += v;
    for (const auto& [k, v] : other.errors_by_category) errors_by_category[k] += v;
  }
};

inline ordered_json diagnostics_to_json(const Diagnostics& d) {
  ordered_json j;
  j["documents_scanned"] = d.documents_scanned;
  j["documents_failed"] = d.documents_failed;
  j["non_utf8_documents"] = d.non_utf8_documents;
  j["bibliographies"] = d.bibliographies;
  j["dangling_blocks"] = d.dangling_blocks;
  j["unrecognized_commands"] = d.unrecognized_commands;
  j["entries"] = d.entries;
  j["keys"] = d.keys;
  j["missing_keys"] = d.missing_keys;
  j["author_pattern"] = d.author_pattern;
  j["author_classifier"] = d.author_classifier;
  j["author_none"] = d.author_none;
  j["year_command"] = d.year_command;
  j["year_evidence"] = d.year_evidence;
  j["year_fallback"] = d.year_fallback;
  j["year_none"] = d.year_none;
  ordered_json hits = ordered_json::object();
  for (const auto& [k, v] : d.pattern_hits) hits[k] = v;
  j["pattern_hits"] = std::move(hits);
  ordered_json errors = ordered_json::object();
  for (const auto& [k, v] : d.errors_by_category) errors[k] = v;
  j["errors"] = std::move(errors);
  return j;
}

// ---------------------------------------------------------------------------
// Per-file extraction
// ---------------------------------------------------------------------------

struct ExtractResult {
  std::vector<BibMetaRecord> records;
  Diagnostics diagnostics;
};

// Training material captured alongside pattern-extracted records: the cleaned
// author text and the cleaned trailing text of each ground-truth entry.
struct LabeledText {
  std::string author_text;
  std::string trailing_text;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct FileOutput {
  std::vector<BibMetaRecord> records;
  std::vector<LabeledText> labeled;
  Diagnostics diag;
};

inline FileOutput extract_file(const CorpusFile& file, const RunConfig& config,
                               const ClassifierModel* model, bool collect_labeled) {
  FileOutput out;
  Diagnostics& diag = out.diag;
  ++diag.documents_scanned;

  std::string raw;
  try {
    raw = read_file(file.absolute_path);
  } catch (const IoError&) {
    ++diag.documents_failed;
    ++diag.errors_by_category["io"];
    return out;
  }
  if (sanitize_utf8(raw)) ++diag.non_utf8_documents;

  SourceDocument doc{file.paper_id, strip_comments(raw), file.kind};
  std::vector<std::string> blocks;
  try {
    blocks = find_bibliographies(doc);
  } catch (const UnbalancedEnvironment&) {
    ++diag.documents_failed;
    ++diag.errors_by_category["unbalanced_environment"];
    return out;
  }

  const YearWindow window = config.year_window();
  for (std::size_t block_index = 0; block_index < blocks.size(); ++block_index) {
    ++diag.bibliographies;
    SplitResult split;
    try {
      split = split_bib_entries(blocks[block_index]);
    } catch (const DanglingBibitemstart&) {
      ++diag.dangling_blocks;
      ++diag.errors_by_category["dangling_bibitemstart"];
      continue;
    }
    diag.unrecognized_commands += split.unrecognized_commands;

    for (std::size_t ordinal = 0; ordinal < split.entries.size(); ++ordinal) {
      const std::string& raw_entry = split.entries[ordinal];
      ++diag.entries;

      BibMetaRecord record;
      record.paper_id = file.paper_id;
      record.bibliography_index = static_cast<int>(block_index);
      record.ordinal = static_cast<int>(ordinal);

      std::string_view body = raw_entry;
      try {
        const ExtractedKey key = extract_citation_key(raw_entry);
        record.has_key = true;
        record.citation_key = key.citation_key;
        record.explicit_key = key.explicit_key;
        body = body.substr(key.body_begin);
        ++diag.keys;
      } catch (const MissingKey&) {
        ++diag.missing_keys;
        ++diag.errors_by_category["missing_key"];
      }

      const YearExtraction year = extract_year_detailed(body, record.citation_key, window);
      record.year = year.year;
      switch (year.source) {
        case YearSource::command: ++diag.year_command; break;
        case YearSource::evidence: ++diag.year_evidence; break;
        case YearSource::fallback: ++diag.year_fallback; break;
        case YearSource::none: ++diag.year_none; break;
      }

      std::optional<std::string> title_source;  // text to scan for the title
      std::size_t title_start = 0;
      if (const auto hit = extract_author_text_by_pattern(body)) {
        record.author_text = hit->text;
        record.extraction_method = "pattern";
        record.pattern_id = hit->pattern_id;
        ++diag.author_pattern;
        ++diag.pattern_hits[hit->pattern_id];
        title_source = std::string(body);
        title_start = hit->end_offset;
        if (collect_labeled) {
          out.labeled.push_back({clean_for_classification(hit->text),
                                 clean_for_classification(body.substr(hit->end_offset))});
        }
      } else if (model != nullptr) {
        BibEntry entry;
        entry.raw_text = raw_entry;
        if (const auto detected = detect_author_text(*model, entry)) {
          record.author_text = detected->text;
          record.extraction_method = "classifier";
          ++diag.author_classifier;
          title_source = detected->clean_body;
          title_start = detected->end_offset;
        } else {
          record.extraction_method = "none";
          ++diag.author_none;
          title_source = clean_for_classification(body);
        }
      } else {
        record.extraction_method = "none";
        ++diag.author_none;
        title_source = std::string(body);
      }

      if (record.author_text) {
        try {
          AuthorsResult authors = split_authors(*record.author_text);
          record.authors = std::move(authors.authors);
          record.et_al_truncated = authors.et_al_truncated;
        } catch (const EmptyAuthorText&) {
          record.author_text.reset();
        }
      }
      if (title_source) record.title = extract_title(*title_source, title_start);
      out.records.push_back(std::move(record));
    }
  }
  return out;
}

}  // namespace detail

// Runs extraction over the configured inputs with a parallel per-file map.
// Records come back sorted by (paper, bibliography, ordinal).
inline ExtractResult run_extract(const RunConfig& config, const ClassifierModel* model = nullptr,
                                 std::vector<LabeledText>* labeled_out = nullptr) {
  const std::vector<CorpusFile> files = walk_corpus(config.inputs);
  ExtractResult result;
  const bool collect_labeled = labeled_out != nullptr;

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (const CorpusFile& file : files) {
      detail::FileOutput out = detail::extract_file(file, config, model, collect_labeled);
      result.diagnostics.merge(out.diag);
      std::move(out.records.begin(), out.records.end(), std::back_inserter(result.records));
      if (labeled_out) {
        std::move(out.labeled.begin(), out.labeled.end(), std::back_inserter(*labeled_out));
      }
    }
  } else {
    std::vector<std::future<detail::FileOutput>> futures;
    futures.reserve(files.size());
    std::size_t next = 0;
    while (next < files.size() || !futures.empty()) {
      while (next < files.size() && futures.size() < static_cast<std::size_t>(jobs)) {
        const CorpusFile& file = files[next++];
        futures.push_back(std::async(std::launch::async, [&file, &config, model, collect_labeled] {
          return detail::extract_file(file, config, model, collect_labeled);
        }));
      }
      // Collect in submission order: the merge stays deterministic.
      detail::FileOutput out = futures.front().get();
      futures.erase(futures.begin());
      result.diagnostics.merge(out.diag);
      std::move(out.records.begin(), out.records.end(), std::back_inserter(result.records));
      if (labeled_out) {
        std::move(out.labeled.begin(), out.labeled.end(), std::back_inserter(*labeled_out));
      }
    }
  }

  std::sort(result.records.begin(), result.records.end(),
            [](const BibMetaRecord& a, const BibMetaRecord& b) {
              if (a.paper_id != b.paper_id) return a.paper_id < b.paper_id;
              if (a.bibliography_index != b.bibliography_index) {
                return a.bibliography_index < b.bibliography_index;
              }
              return a.ordinal < b.ordinal;
            });
  return result;
}

// ---------------------------------------------------------------------------
// Training on pattern ground truth
// ---------------------------------------------------------------------------

inline std::vector<LabeledInstance> instances_from_labeled_text(
    const std::vector<LabeledText>& labeled) {
  std::vector<LabeledInstance> instances;
  int entry_id = 0;
  for (const LabeledText& text : labeled) {
    auto batch = build_labeled_instances(text.author_text, text.trailing_text, entry_id++);
    std::move(batch.begin(), batch.end(), std::back_inserter(instances));
  }
  return instances;
}

struct TrainRunResult {
  TrainResult train;
  Diagnostics diagnostics;
  long labeled_entries = 0;
  long instances = 0;
};

// Extracts pattern ground truth from the corpus and trains the classifier.
inline TrainRunResult run_train(const RunConfig& config, bool cross_validate = false) {
  std::vector<LabeledText> labeled;
  ExtractResult extraction = run_extract(config, nullptr, &labeled);
  TrainRunResult result;
  result.diagnostics = extraction.diagnostics;
  result.labeled_entries = static_cast<long>(labeled.size());
  const std::vector<LabeledInstance> instances = instances_from_labeled_text(labeled);
  result.instances = static_cast<long>(instances.size());
  result.train = train(instances, config.classifier, cross_validate);
  return result;
}

// Evaluates a trained model against the corpus' pattern ground truth.
inline EvalReport run_eval(const RunConfig& config, const ClassifierModel& model) {
  std::vector<LabeledText> labeled;
  run_extract(config, nullptr, &labeled);
  EvalReport report;
  for (const LabeledInstance& inst : instances_from_labeled_text(labeled)) {
    const bool positive = predict(model, inst.features) > model.threshold;
    if (inst.label == 1) {
      positive ? ++report.tp : ++report.fn;
    } else {
      positive ? ++report.fp : ++report.tn;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Analysis
// ---------------------------------------------------------------------------

inline CorpusReport run_analyze(const std::vector<BibMetaRecord>& records,
                                const RunConfig& config) {
  return build_report(records, config.analytics);
}

// ---------------------------------------------------------------------------
// Output writing
// ---------------------------------------------------------------------------

namespace detail {

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace detail

inline std::string records_to_ndjson(const std::vector<BibMetaRecord>& records) {
  std::string out;
  for (const BibMetaRecord& record : records) {
    out += record_to_json(record).dump();
    out += "\n";
  }
  return out;
}

inline std::vector<BibMetaRecord> records_from_ndjson(std::string_view text) {
  std::vector<BibMetaRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    records.push_back(record_from_json(ordered_json::parse(line)));
  }
  return records;
}

// Writes report.json / report.txt / tables/*.csv per the configured formats.
inline void write_report_outputs(const CorpusReport& report, const RunConfig& config) {
  namespace fs = std::filesystem;
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  for (const std::string& format : config.formats) {
    if (format == "json") {
      detail::write_file(dir / "report.json", report_to_json_text(report, config.analytics));
    } else if (format == "text") {
      detail::write_file(dir / "report.txt", render_text_report(report, config.analytics));
    } else if (format == "csv") {
      const fs::path tables = dir / "tables";
      fs::create_directories(tables);
      detail::write_file(tables / "cond_prob_m1.csv", cond_prob_csv(report.cond_prob_m1));
      detail::write_file(tables / "cond_prob_m4.csv", cond_prob_csv(report.cond_prob_m4));
      detail::write_file(tables / "ordering.csv", ordering_csv(report.ordering));
      detail::write_file(tables / "trend.csv", trend_csv(report.trend));
      detail::write_file(tables / "per_paper.csv", per_paper_csv(report));
      detail::write_file(tables / "top_terms.csv", top_terms_csv(report, config.analytics));
    }
  }
}

}  // namespace citekeys

#endif  // CITEKEYS_PIPELINE_HPP
