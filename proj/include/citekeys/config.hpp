// config.hpp - run configuration: TOML-style key-value file plus --set
// overrides. Unknown keys are rejected; defaults are the constants the
// matching and training operations document.

#pragma once
#ifndef CITEKEYS_CONFIG_HPP
#define CITEKEYS_CONFIG_HPP

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "citekeys/analytics.hpp"
#include "citekeys/errors.hpp"
#include "citekeys/logistic.hpp"
#include "citekeys/meta.hpp"
#include "citekeys/text.hpp"

namespace citekeys {

struct RunConfig {
  std::vector<std::string> inputs;
  std::string output_dir = "citekeys-out";
  std::vector<std::string> formats = {"json", "text", "csv"};
  int jobs = 1;
  std::string year_mode = "practical";  // or "strict-paper"
  std::optional<int> year_min;
  std::optional<int> year_max;
  AnalyticsConfig analytics;
  Hyperparams classifier;
  double max_error_rate = 1.0;  // exit code 2 when exceeded
  std::string model_file;
  std::string type_lexicon_file;

  YearWindow year_window() const {
    YearWindow w = year_mode == "strict-paper" ? YearWindow::strict_paper()
                                               : YearWindow::practical();
    if (year_min) w.min_year = *year_min;
    if (year_max) w.max_year = *year_max;
    return w;
  }
};

namespace detail {

struct ConfigValue {
  std::string raw;
  bool is_string = false;
  std::vector<std::string> items;  // for [a, b, c]
  bool is_array = false;
};

inline std::string strip_config_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

inline ConfigValue parse_value(std::string_view raw, const std::string& key) {
  ConfigValue v;
  std::string s = trim(raw);
  if (s.empty()) throw ConfigError("empty value for key '" + key + "'");
  if (s.front() == '[') {
    if (s.back() != ']') throw ConfigError("unterminated array for key '" + key + "'");
    v.is_array = true;
    std::string inner = s.substr(1, s.size() - 2);
    std::string item;
    std::istringstream in(inner);
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      if (item.size() >= 2 && item.front() == '"' && item.back() == '"') {
        item = item.substr(1, item.size() - 2);
      }
      v.items.push_back(item);
    }
    return v;
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    v.is_string = true;
    v.raw = s.substr(1, s.size() - 2);
    return v;
  }
  v.raw = s;
  return v;
}

inline double to_double(const ConfigValue& v, const std::string& key) {
  char* end = nullptr;
  const double d = std::strtod(v.raw.c_str(), &end);
  if (end == v.raw.c_str() || *end != '\0') {
    throw ConfigError("expected a number for key '" + key + "', got '" + v.raw + "'");
  }
  return d;
}

inline long to_int(const ConfigValue& v, const std::string& key) {
  char* end = nullptr;
  const long n = std::strtol(v.raw.c_str(), &end, 10);
  if (end == v.raw.c_str() || *end != '\0') {
    throw ConfigError("expected an integer for key '" + key + "', got '" + v.raw + "'");
  }
  return n;
}

inline bool to_bool(const ConfigValue& v, const std::string& key) {
  if (v.raw == "true") return true;
  if (v.raw == "false") return false;
  throw ConfigError("expected true/false for key '" + key + "', got '" + v.raw + "'");
}

inline void require_range(double value, double lo, double hi, const std::string& key) {
  if (value < lo || value > hi) {
    std::ostringstream msg;
    msg << "value " << value << " for key '" << key << "' outside [" << lo << ", " << hi << "]";
    throw ConfigError(msg.str());
  }
}

}  // namespace detail

// Applies one key=value pair; throws ConfigError for unknown keys or
// out-of-range values.
inline void apply_config_entry(RunConfig& config, const std::string& key,
                               const detail::ConfigValue& value) {
  using detail::require_range;
  using detail::to_bool;
  using detail::to_double;
  using detail::to_int;

  if (key == "inputs") {
    config.inputs = value.items;
  } else if (key == "output_dir") {
    config.output_dir = value.raw;
  } else if (key == "formats") {
    for (const std::string& f : value.items) {
      if (f != "json" && f != "text" && f != "csv") {
        throw ConfigError("unknown report format '" + f + "'");
      }
    }
    config.formats = value.items;
  } else if (key == "jobs") {
    const long n = to_int(value, key);
    require_range(static_cast<double>(n), 1, 1024, key);
    config.jobs = static_cast<int>(n);
  } else if (key == "model_file") {
    config.model_file = value.raw;
  } else if (key == "type_lexicon_file") {
    config.type_lexicon_file = value.raw;
  } else if (key == "year.mode") {
    if (value.raw != "practical" && value.raw != "strict-paper") {
      throw ConfigError("year.mode must be 'practical' or 'strict-paper'");
    }
    config.year_mode = value.raw;
  } else if (key == "year.min") {
    config.year_min = static_cast<int>(to_int(value, key));
  } else if (key == "year.max") {
    config.year_max = static_cast<int>(to_int(value, key));
  } else if (key == "metric.threshold") {
    const double d = to_double(value, key);
    require_range(d, 1e-9, 1.0, key);
    config.analytics.metric.threshold = d;
  } else if (key == "metric.w") {
    const double d = to_double(value, key);
    require_range(d, 1e-9, 1.0, key);
    config.analytics.metric.w = d;
  } else if (key == "acronym.w_A") {
    config.analytics.acronym.w_A = to_double(value, key);
  } else if (key == "acronym.w_a") {
    config.analytics.acronym.w_a = to_double(value, key);
  } else if (key == "acronym.w_s") {
    config.analytics.acronym.w_s = to_double(value, key);
  } else if (key == "acronym.threshold_factor") {
    const double d = to_double(value, key);
    require_range(d, 0.0, 10.0, key);
    config.analytics.acronym.threshold_factor = d;
  } else if (key == "ngrams.min") {
    const long n = to_int(value, key);
    require_range(static_cast<double>(n), 1, 32, key);
    config.analytics.ngram_min = static_cast<int>(n);
  } else if (key == "ngrams.max") {
    const long n = to_int(value, key);
    require_range(static_cast<double>(n), 1, 32, key);
    config.analytics.ngram_max = static_cast<int>(n);
  } else if (key == "ngrams.top_k") {
    const long n = to_int(value, key);
    require_range(static_cast<double>(n), 1, 100000, key);
    config.analytics.top_k = static_cast<int>(n);
  } else if (key == "trend.decades") {
    std::vector<int> decades;
    for (const std::string& item : value.items) {
      detail::ConfigValue v;
      v.raw = item;
      decades.push_back(static_cast<int>(to_int(v, key)));
    }
    if (decades.size() < 2) throw ConfigError("trend.decades needs at least two boundaries");
    for (std::size_t i = 1; i < decades.size(); ++i) {
      if (decades[i] <= decades[i - 1]) throw ConfigError("trend.decades must be increasing");
    }
    config.analytics.decade_boundaries = decades;
  } else if (key == "consistency.strict") {
    const double d = to_double(value, key);
    require_range(d, 0.0, 1.0, key);
    config.analytics.strict_pmr = d;
  } else if (key == "consistency.loose") {
    const double d = to_double(value, key);
    require_range(d, 0.0, 1.0, key);
    config.analytics.loose_pmr = d;
  } else if (key == "affinity.margin") {
    const double d = to_double(value, key);
    require_range(d, 0.0, 1.0, key);
    config.analytics.affinity_margin = d;
  } else if (key == "dblp.substring_mode") {
    config.analytics.dblp_substring_mode = to_bool(value, key);
  } else if (key == "classifier.learning_rate") {
    const double d = to_double(value, key);
    require_range(d, 1e-12, 1e6, key);
    config.classifier.learning_rate = d;
  } else if (key == "classifier.epochs") {
    const long n = to_int(value, key);
    require_range(static_cast<double>(n), 1, 1000000, key);
    config.classifier.epochs = static_cast<int>(n);
  } else if (key == "classifier.l2") {
    const double d = to_double(value, key);
    require_range(d, 0.0, 1e6, key);
    config.classifier.l2 = d;
  } else if (key == "classifier.seed") {
    config.classifier.seed = static_cast<unsigned>(to_int(value, key));
  } else if (key == "classifier.split_ratio") {
    const double d = to_double(value, key);
    require_range(d, 0.05, 0.99, key);
    config.classifier.split_ratio = d;
  } else if (key == "classifier.positive_weight") {
    const double d = to_double(value, key);
    require_range(d, 1e-9, 1e6, key);
    config.classifier.positive_weight = d;
  } else if (key == "classifier.max_vocab") {
    const long n = to_int(value, key);
    require_range(static_cast<double>(n), 1, 100000000, key);
    config.classifier.max_vocab = static_cast<std::size_t>(n);
  } else if (key == "classifier.cv_folds") {
    const long n = to_int(value, key);
    require_range(static_cast<double>(n), 2, 100, key);
    config.classifier.cv_folds = static_cast<int>(n);
  } else if (key == "classifier.cv_rounds") {
    const long n = to_int(value, key);
    require_range(static_cast<double>(n), 1, 1000, key);
    config.classifier.cv_rounds = static_cast<int>(n);
  } else if (key == "limits.max_error_rate") {
    const double d = to_double(value, key);
    require_range(d, 0.0, 1.0, key);
    config.max_error_rate = d;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

inline void apply_config_text(RunConfig& config, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(detail::strip_config_comment(line));
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    apply_config_entry(config, key, detail::parse_value(stripped.substr(eq + 1), key));
  }
}

inline void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str());
}

// One "key=value" override from the command line.
inline void apply_config_override(RunConfig& config, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("--set expects key=value, got '" + std::string(assignment) + "'");
  }
  const std::string key = trim(assignment.substr(0, eq));
  apply_config_entry(config, key, detail::parse_value(assignment.substr(eq + 1), key));
}

// Loads one lexicon word per line (used for the type_and_sources cluster).
inline void load_type_lexicon(RunConfig& config) {
  if (config.type_lexicon_file.empty()) return;
  std::ifstream in(config.type_lexicon_file, std::ios::binary);
  if (!in) throw IoError("cannot read lexicon file: " + config.type_lexicon_file);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const std::string w = trim(detail::strip_config_comment(line));
    if (!w.empty()) words.push_back(to_lower(w));
  }
  if (!words.empty()) config.analytics.type_lexicon = std::move(words);
}

}  // namespace citekeys

#endif  // CITEKEYS_CONFIG_HPP
