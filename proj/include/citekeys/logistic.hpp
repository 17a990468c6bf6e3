// logistic.hpp - NAME / NOT-A-NAME word classifier
//
// Plain L2-regularized logistic regression trained by full-batch gradient
// descent. Categorical features (summarized pattern, token word) are one-hot
// encoded against dictionaries frozen at training time; unseen categories map
// to a reserved unknown slot. Training is deterministic for a fixed seed, and
// an epoch that would increase the loss retries with a halved step so the
// loss history is non-increasing.

#pragma once
#ifndef CITEKEYS_LOGISTIC_HPP
#define CITEKEYS_LOGISTIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "citekeys/errors.hpp"
#include "citekeys/features.hpp"
#include "citekeys/latex.hpp"
#include "citekeys/meta.hpp"
#include "citekeys/text.hpp"

namespace citekeys {

struct LabeledInstance {
  WordFeatures features;
  int label = 0;        // 1 = NAME, 0 = NOT-A-NAME
  int entry_id = 0;
  int token_index = 0;
};

// Tokens inside the pattern-extracted author text are NAME; tokens strictly
// after it are NOT-A-NAME; anything before the author text is excluded.
inline std::vector<LabeledInstance> build_labeled_instances(
    std::string_view author_text, std::string_view trailing_text, int entry_id) {
  std::vector<LabeledInstance> out;
  int index = 0;
  for (const Token& tok : tokenize(author_text)) {
    out.push_back({compute_word_features(tok.text), 1, entry_id, index++});
  }
  for (const Token& tok : tokenize(trailing_text)) {
    out.push_back({compute_word_features(tok.text), 0, entry_id, index++});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Feature encoding
// ---------------------------------------------------------------------------

class FeatureEncoder {
 public:
  static constexpr int kDenseDims = WordFeatures::kBoolCount + 1;  // bools + token_length

  void fit(const std::vector<const LabeledInstance*>& instances, std::size_t max_vocab) {
    patterns_.clear();
    words_.clear();
    std::map<std::string, std::size_t> pattern_freq, word_freq;
    for (const LabeledInstance* inst : instances) {
      ++pattern_freq[inst->features.summarized_pattern];
      ++word_freq[inst->features.token_word];
    }
    int next = 0;
    for (const auto& [pattern, freq] : pattern_freq) {
      (void)freq;
      patterns_.emplace(pattern, next++);
    }
    // Vocabulary capped by frequency; ties resolved lexicographically so the
    // encoding is deterministic.
    std::vector<std::pair<std::string, std::size_t>> by_freq(word_freq.begin(), word_freq.end());
    std::sort(by_freq.begin(), by_freq.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (by_freq.size() > max_vocab) by_freq.resize(max_vocab);
    next = 0;
    for (const auto& [word, freq] : by_freq) {
      (void)freq;
      words_.emplace(word, next++);
    }
  }

  int dimensions() const {
    return kDenseDims + 1 + static_cast<int>(patterns_.size()) + 1 +
           static_cast<int>(words_.size());
  }

  // Sparse encoding: the dense block plus exactly one pattern slot and one
  // word slot.
  struct Encoded {
    std::array<double, kDenseDims> dense{};
    int pattern_dim = 0;
    int word_dim = 0;
  };

  Encoded encode(const WordFeatures& f) const {
    Encoded e;
    const auto bools = f.bools();
    for (int i = 0; i < WordFeatures::kBoolCount; ++i) e.dense[i] = bools[i] ? 1.0 : 0.0;
    e.dense[WordFeatures::kBoolCount] = static_cast<double>(f.token_length);
    e.pattern_dim = pattern_base() + 1 + lookup(patterns_, f.summarized_pattern);
    e.word_dim = word_base() + 1 + lookup(words_, f.token_word);
    return e;
  }

  int pattern_base() const { return kDenseDims; }  // unknown pattern lives here
  int word_base() const { return kDenseDims + 1 + static_cast<int>(patterns_.size()); }

  const std::map<std::string, int>& patterns() const { return patterns_; }
  const std::map<std::string, int>& words() const { return words_; }

  void set_dictionaries(std::map<std::string, int> patterns, std::map<std::string, int> words) {
    patterns_ = std::move(patterns);
    words_ = std::move(words);
  }

 private:
  static int lookup(const std::map<std::string, int>& dict, const std::string& key) {
    const auto it = dict.find(key);
    return it == dict.end() ? -1 : it->second;
  }

  std::map<std::string, int> patterns_;
  std::map<std::string, int> words_;
};

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

struct ClassifierModel {
  FeatureEncoder encoder;
  std::vector<double> weights;
  double bias = 0.0;
  double threshold = 0.5;

  double score(const WordFeatures& f) const {
    const FeatureEncoder::Encoded e = encoder.encode(f);
    double z = bias;
    for (int i = 0; i < FeatureEncoder::kDenseDims; ++i) z += weights[i] * e.dense[i];
    z += weights[e.pattern_dim];
    z += weights[e.word_dim];
    return z;
  }
};

inline double sigmoid(double z) {
  return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

// Probability that the word is a NAME; always finite, sigmoid of the affine score.
inline double predict(const ClassifierModel& model, const WordFeatures& features) {
  return sigmoid(model.score(features));
}

struct EvalReport {
  long tp = 0, fp = 0, tn = 0, fn = 0;

  double precision() const { return tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0; }
  double recall() const { return tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0; }
  double f1() const {
    const double p = precision(), r = recall();
    return p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
  }
};

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

struct Hyperparams {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
  unsigned seed = 42;
  double split_ratio = 0.7;      // train fraction of the 7:3 split
  double positive_weight = 1.0;  // optional class-imbalance weight
  std::size_t max_vocab = 50000;
  int cv_folds = 5;
  int cv_rounds = 10;
};

namespace detail {

struct EncodedInstance {
  FeatureEncoder::Encoded x;
  int label = 0;
};

// Mean weighted cross-entropy plus (l2/2)||w||^2 (bias excluded), and its
// gradient. Shared by training and the finite-difference check.
inline double loss_and_gradient(const std::vector<EncodedInstance>& data,
                                const std::vector<double>& weights, double bias, double l2,
                                double positive_weight, std::vector<double>* grad_w,
                                double* grad_b) {
  const double n = static_cast<double>(data.size());
  if (grad_w) std::fill(grad_w->begin(), grad_w->end(), 0.0);
  if (grad_b) *grad_b = 0.0;
  double loss = 0.0;
  for (const EncodedInstance& inst : data) {
    double z = bias;
    for (int i = 0; i < FeatureEncoder::kDenseDims; ++i) z += weights[i] * inst.x.dense[i];
    z += weights[inst.x.pattern_dim];
    z += weights[inst.x.word_dim];
    const double p = sigmoid(z);
    double dz;
    if (inst.label == 1) {
      loss += positive_weight * (z >= 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z)));
      dz = positive_weight * (p - 1.0);
    } else {
      loss += z >= 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
      dz = p;
    }
    if (grad_w) {
      for (int i = 0; i < FeatureEncoder::kDenseDims; ++i) {
        (*grad_w)[i] += dz * inst.x.dense[i];
      }
      (*grad_w)[inst.x.pattern_dim] += dz;
      (*grad_w)[inst.x.word_dim] += dz;
    }
    if (grad_b) *grad_b += dz;
  }
  loss /= n;
  if (grad_w) {
    for (double& g : *grad_w) g /= n;
  }
  if (grad_b) *grad_b /= n;
  double penalty = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    penalty += weights[i] * weights[i];
    if (grad_w) (*grad_w)[i] += l2 * weights[i];
  }
  return loss + 0.5 * l2 * penalty;
}

inline EvalReport evaluate(const std::vector<EncodedInstance>& data,
                           const std::vector<double>& weights, double bias, double threshold) {
  EvalReport report;
  for (const EncodedInstance& inst : data) {
    double z = bias;
    for (int i = 0; i < FeatureEncoder::kDenseDims; ++i) z += weights[i] * inst.x.dense[i];
    z += weights[inst.x.pattern_dim];
    z += weights[inst.x.word_dim];
    const bool positive = sigmoid(z) > threshold;
    if (inst.label == 1) {
      positive ? ++report.tp : ++report.fn;
    } else {
      positive ? ++report.fp : ++report.tn;
    }
  }
  return report;
}

// Gradient descent with per-epoch step halving so the recorded loss history
// never increases beyond tolerance.
inline std::vector<double> descend(const std::vector<EncodedInstance>& data, int dims,
                                   const Hyperparams& hp, double* bias_out,
                                   std::vector<double>* loss_history) {
  std::vector<double> weights(dims, 0.0);
  double bias = 0.0;
  std::vector<double> grad(dims, 0.0);
  double grad_b = 0.0;
  double loss = loss_and_gradient(data, weights, bias, hp.l2, hp.positive_weight, &grad, &grad_b);
  if (loss_history) loss_history->push_back(loss);
  std::vector<double> trial(dims, 0.0);
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    double step = hp.learning_rate;
    bool accepted = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      for (int i = 0; i < dims; ++i) trial[i] = weights[i] - step * grad[i];
      const double trial_bias = bias - step * grad_b;
      const double trial_loss =
          loss_and_gradient(data, trial, trial_bias, hp.l2, hp.positive_weight, nullptr, nullptr);
      if (trial_loss <= loss + 1e-12) {
        weights.swap(trial);
        bias = trial_bias;
        loss = trial_loss;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // at a numerical minimum
    if (loss_history) loss_history->push_back(loss);
    loss = loss_and_gradient(data, weights, bias, hp.l2, hp.positive_weight, &grad, &grad_b);
  }
  *bias_out = bias;
  return weights;
}

}  // namespace detail

struct TrainResult {
  ClassifierModel model;
  EvalReport holdout;               // the 30% split
  std::vector<double> loss_history; // non-increasing
  std::vector<EvalReport> cv_reports;
};

// Trains on a seed-shuffled split_ratio fraction and evaluates on the rest.
// Dictionaries are built from the training fraction only. Throws
// DegenerateTraining when a class is missing.
inline TrainResult train(const std::vector<LabeledInstance>& instances, const Hyperparams& hp = {},
                         bool cross_validate = false) {
  if (instances.empty()) throw DegenerateTraining("no training instances");
  bool has_pos = false, has_neg = false;
  for (const LabeledInstance& inst : instances) {
    (inst.label == 1 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) {
    throw DegenerateTraining("training set must contain both classes");
  }

  std::vector<std::size_t> order(instances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937 rng(hp.seed);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t train_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(static_cast<double>(order.size()) * hp.split_ratio));

  std::vector<const LabeledInstance*> train_set, test_set;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < train_count ? train_set : test_set).push_back(&instances[order[i]]);
  }

  TrainResult result;
  result.model.encoder.fit(train_set, hp.max_vocab);

  auto encode_all = [&result](const std::vector<const LabeledInstance*>& set) {
    std::vector<detail::EncodedInstance> out;
    out.reserve(set.size());
    for (const LabeledInstance* inst : set) {
      out.push_back({result.model.encoder.encode(inst->features), inst->label});
    }
    return out;
  };
  const std::vector<detail::EncodedInstance> train_data = encode_all(train_set);
  const std::vector<detail::EncodedInstance> test_data = encode_all(test_set);

  result.model.weights = detail::descend(train_data, result.model.encoder.dimensions(), hp,
                                         &result.model.bias, &result.loss_history);
  result.holdout = test_data.empty()
                       ? detail::evaluate(train_data, result.model.weights, result.model.bias,
                                          result.model.threshold)
                       : detail::evaluate(test_data, result.model.weights, result.model.bias,
                                          result.model.threshold);

  if (cross_validate && train_set.size() >= static_cast<std::size_t>(hp.cv_folds)) {
    // K folds over the training fraction; each round reshuffles the fold
    // partition with a derived seed.
    for (int round = 0; round < hp.cv_rounds; ++round) {
      std::vector<std::size_t> fold_order(train_set.size());
      for (std::size_t i = 0; i < fold_order.size(); ++i) fold_order[i] = i;
      std::mt19937 fold_rng(hp.seed + 1000003u * static_cast<unsigned>(round + 1));
      std::shuffle(fold_order.begin(), fold_order.end(), fold_rng);
      for (int fold = 0; fold < hp.cv_folds; ++fold) {
        std::vector<detail::EncodedInstance> fold_train, fold_test;
        for (std::size_t i = 0; i < fold_order.size(); ++i) {
          const detail::EncodedInstance& inst = train_data[fold_order[i]];
          if (static_cast<int>(i % hp.cv_folds) == fold) {
            fold_test.push_back(inst);
          } else {
            fold_train.push_back(inst);
          }
        }
        double fold_bias = 0.0;
        const std::vector<double> fold_weights =
            detail::descend(fold_train, result.model.encoder.dimensions(), hp, &fold_bias, nullptr);
        result.cv_reports.push_back(
            detail::evaluate(fold_test, fold_weights, fold_bias, result.model.threshold));
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Author-text detection
// ---------------------------------------------------------------------------

// Classifies each token of the cleaned entry body and returns the maximal
// prefix run of NAME verdicts. Smoothing can only promote a token: an
// isolated negative between positives (majority of its centered window of 3)
// is bridged, positives are never demoted.
inline std::optional<std::string> detect_author_text(const ClassifierModel& model,
                                                     std::string_view clean_body) {
  const std::vector<Token> tokens = tokenize(clean_body);
  if (tokens.empty()) return std::nullopt;

  std::vector<bool> verdict(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    verdict[i] = predict(model, compute_word_features(tokens[i].text)) > model.threshold;
  }
  std::vector<bool> smoothed(verdict);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (smoothed[i]) continue;
    const std::size_t lo = i > 0 ? i - 1 : 0;
    const std::size_t hi = std::min(tokens.size() - 1, i + 1);
    int votes = 0;
    for (std::size_t j = lo; j <= hi; ++j) votes += verdict[j] ? 1 : 0;
    if (2 * votes > static_cast<int>(hi - lo + 1)) smoothed[i] = true;
  }
  if (!smoothed[0]) return std::nullopt;
  std::size_t run = 0;
  while (run < tokens.size() && smoothed[run]) ++run;
  return trim(clean_body.substr(0, tokens[run - 1].end));
}

struct DetectedAuthorText {
  std::string text;
  std::size_t end_offset = 0;  // offset into the cleaned body
  std::string clean_body;
};

inline std::optional<DetectedAuthorText> detect_author_text(const ClassifierModel& model,
                                                            const BibEntry& entry) {
  std::string_view body = entry.raw_text;
  try {
    const ExtractedKey key = extract_citation_key(entry.raw_text);
    body = body.substr(key.body_begin);
  } catch (const MissingKey&) {
  }
  DetectedAuthorText out;
  out.clean_body = clean_for_classification(body);
  const auto text = detect_author_text(model, out.clean_body);
  if (!text) return std::nullopt;
  out.text = *text;
  // Prefix run: the detected text ends where its last token ends.
  out.end_offset = out.clean_body.find(out.text) + out.text.size();
  return out;
}

// ---------------------------------------------------------------------------
// Serialization: versioned flat key-value text, hex floats for exact
// round-trips.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

// Dictionary entries are whitespace-free but may be empty (a token of pure
// symbols has an empty token word); escape those so the line format stays
// splittable.
inline std::string escape_token(const std::string& s) {
  if (s.empty()) return "%e";
  if (s[0] == '%') return "%p" + s.substr(1);
  return s;
}

inline std::string unescape_token(const std::string& s) {
  if (s == "%e") return "";
  if (s.rfind("%p", 0) == 0) return "%" + s.substr(2);
  return s;
}

}  // namespace detail

inline std::string serialize_model(const ClassifierModel& model) {
  std::ostringstream out;
  out << "citekeys-model 1\n";
  out << "threshold " << detail::hex_double(model.threshold) << "\n";
  out << "bias " << detail::hex_double(model.bias) << "\n";
  const auto& names = WordFeatures::bool_names();
  for (int i = 0; i < WordFeatures::kBoolCount; ++i) {
    out << "feature " << names[i] << " " << detail::hex_double(model.weights[i]) << "\n";
  }
  out << "feature token_length "
      << detail::hex_double(model.weights[WordFeatures::kBoolCount]) << "\n";
  out << "pattern_unknown "
      << detail::hex_double(model.weights[model.encoder.pattern_base()]) << "\n";
  std::vector<const std::string*> by_id(model.encoder.patterns().size());
  for (const auto& [pattern, id] : model.encoder.patterns()) by_id[id] = &pattern;
  for (std::size_t id = 0; id < by_id.size(); ++id) {
    out << "pattern " << detail::escape_token(*by_id[id]) << " "
        << detail::hex_double(model.weights[model.encoder.pattern_base() + 1 + id]) << "\n";
  }
  out << "word_unknown " << detail::hex_double(model.weights[model.encoder.word_base()]) << "\n";
  std::vector<const std::string*> words_by_id(model.encoder.words().size());
  for (const auto& [word, id] : model.encoder.words()) words_by_id[id] = &word;
  for (std::size_t id = 0; id < words_by_id.size(); ++id) {
    out << "word " << detail::escape_token(*words_by_id[id]) << " "
        << detail::hex_double(model.weights[model.encoder.word_base() + 1 + id]) << "\n";
  }
  out << "end\n";
  return out.str();
}

inline ClassifierModel deserialize_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  int version = 0;
  in >> header >> version;
  if (header != "citekeys-model" || version != 1) {
    throw ConfigError("unrecognized model file header");
  }
  ClassifierModel model;
  std::map<std::string, int> patterns, words;
  std::map<std::string, double> feature_weights;
  std::vector<double> pattern_weights, word_weights;
  double pattern_unknown = 0.0, word_unknown = 0.0;
  std::string line;
  std::getline(in, line);  // header remainder
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "end") break;
    if (kind == "threshold" || kind == "bias" || kind == "pattern_unknown" ||
        kind == "word_unknown") {
      std::string value;
      ls >> value;
      const double v = std::strtod(value.c_str(), nullptr);
      if (kind == "threshold") model.threshold = v;
      else if (kind == "bias") model.bias = v;
      else if (kind == "pattern_unknown") pattern_unknown = v;
      else word_unknown = v;
      continue;
    }
    std::string name, value;
    ls >> name >> value;
    const double v = std::strtod(value.c_str(), nullptr);
    if (kind == "feature") {
      feature_weights[name] = v;
    } else if (kind == "pattern") {
      patterns.emplace(detail::unescape_token(name), static_cast<int>(pattern_weights.size()));
      pattern_weights.push_back(v);
    } else if (kind == "word") {
      words.emplace(detail::unescape_token(name), static_cast<int>(word_weights.size()));
      word_weights.push_back(v);
    } else {
      throw ConfigError("unrecognized model line: " + line);
    }
  }

  model.encoder.set_dictionaries(std::move(patterns), std::move(words));
  model.weights.assign(model.encoder.dimensions(), 0.0);
  const auto& names = WordFeatures::bool_names();
  for (int i = 0; i < WordFeatures::kBoolCount; ++i) {
    const auto it = feature_weights.find(names[i]);
    if (it != feature_weights.end()) model.weights[i] = it->second;
  }
  const auto it = feature_weights.find("token_length");
  if (it != feature_weights.end()) model.weights[WordFeatures::kBoolCount] = it->second;
  model.weights[model.encoder.pattern_base()] = pattern_unknown;
  for (std::size_t i = 0; i < pattern_weights.size(); ++i) {
    model.weights[model.encoder.pattern_base() + 1 + i] = pattern_weights[i];
  }
  model.weights[model.encoder.word_base()] = word_unknown;
  for (std::size_t i = 0; i < word_weights.size(); ++i) {
    model.weights[model.encoder.word_base() + 1 + i] = word_weights[i];
  }
  return model;
}

}  // namespace citekeys

#endif  // CITEKEYS_LOGISTIC_HPP
