// similarity.hpp - the five citation-key / last-name similarity verdicts
//
// Inputs are expected lowercased (and accent-folded for real names). Gram
// size is min(3, |s_c|, |s_a|), so short keys and short names degrade to
// bigrams or single characters instead of missing outright.

#pragma once
#ifndef CITEKEYS_SIMILARITY_HPP
#define CITEKEYS_SIMILARITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "citekeys/errors.hpp"

namespace citekeys {

struct MetricConfig {
  double threshold = 0.5;  // matched/un-matched cut for M2..M5
  double w = 0.5;          // asymmetric-weight exponent of M4
};

struct MetricScores {
  int n = 0;        // gram size used
  bool m1 = false;  // exact substring, no score
  double m2 = 0.0;  // longest common substring / |s_a|
  double m3 = 0.0;  // n-gram Jaccard
  double m4 = 0.0;  // n-gram asymmetric
  double m5 = 0.0;  // n-gram Dice
  bool m2_match = false;
  bool m3_match = false;
  bool m4_match = false;
  bool m5_match = false;
};

// All distinct contiguous substrings of length n; empty when |s| < n.
inline std::set<std::string> ngram_set(std::string_view s, std::size_t n) {
  std::set<std::string> grams;
  if (n == 0 || s.size() < n) return grams;
  for (std::size_t i = 0; i + n <= s.size(); ++i) {
    grams.insert(std::string(s.substr(i, n)));
  }
  return grams;
}

namespace detail {

// Length of the longest common contiguous substring.
inline std::size_t longest_common_substring(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

inline std::size_t intersection_size(const std::set<std::string>& a, const std::set<std::string>& b) {
  const std::set<std::string>& small = a.size() <= b.size() ? a : b;
  const std::set<std::string>& large = a.size() <= b.size() ? b : a;
  std::size_t count = 0;
  for (const std::string& g : small) count += large.count(g);
  return count;
}

}  // namespace detail

// Computes M1..M5 for author last name s_a against citation key s_c.
//   M1  substring(s_a, s_c)
//   M2  lcs(s_a, s_c) / |s_a|                (longest common substring)
//   M3  |Sa n Sc| / |Sa u Sc|
//   M4  (|Sa u Sc|^w - |Sa \ Sc|^w) / |Sa u Sc|^w
//   M5  2 |Sa n Sc| / (|Sa| + |Sc|)
// The set exponent of M4 is read as cardinality raised to w, which keeps the
// score in [0,1] and makes containment score exactly 1.
inline MetricScores score_metrics(std::string_view s_a, std::string_view s_c,
                                  const MetricConfig& config = {}) {
  if (s_a.empty() || s_c.empty()) {
    throw DegenerateInput("similarity metrics need nonempty strings");
  }
  MetricScores out;
  out.n = static_cast<int>(std::min<std::size_t>(3, std::min(s_a.size(), s_c.size())));

  out.m1 = s_c.find(s_a) != std::string_view::npos;
  out.m2 = static_cast<double>(detail::longest_common_substring(s_a, s_c)) /
           static_cast<double>(s_a.size());

  const std::set<std::string> grams_a = ngram_set(s_a, static_cast<std::size_t>(out.n));
  const std::set<std::string> grams_c = ngram_set(s_c, static_cast<std::size_t>(out.n));
  const double inter = static_cast<double>(detail::intersection_size(grams_a, grams_c));
  const double uni = static_cast<double>(grams_a.size() + grams_c.size()) - inter;
  const double a_minus_c = static_cast<double>(grams_a.size()) - inter;

  out.m3 = uni > 0 ? inter / uni : 0.0;
  const double uni_w = std::pow(uni, config.w);
  out.m4 = uni_w > 0 ? (uni_w - std::pow(a_minus_c, config.w)) / uni_w : 0.0;
  out.m5 = grams_a.empty() && grams_c.empty()
               ? 0.0
               : 2.0 * inter / static_cast<double>(grams_a.size() + grams_c.size());

  out.m2_match = out.m2 >= config.threshold;
  out.m3_match = out.m3 >= config.threshold;
  out.m4_match = out.m4 >= config.threshold;
  out.m5_match = out.m5 >= config.threshold;
  return out;
}

}  // namespace citekeys

#endif  // CITEKEYS_SIMILARITY_HPP
