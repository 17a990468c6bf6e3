// features.hpp - per-word features used to tell author names from everything
// else in a bib entry
//
// The boolean features are computed on the raw token; four_digit_year ignores
// trailing punctuation so "2006," still counts as a year. token_word is the
// token with symbols removed and is what the categorical vocabulary indexes.

#pragma once
#ifndef CITEKEYS_FEATURES_HPP
#define CITEKEYS_FEATURES_HPP

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "citekeys/text.hpp"

namespace citekeys {

struct WordFeatures {
  bool starts_with_brace = false;
  bool ends_with_brace = false;     // closing brace at the end, trailing punctuation ignored
  bool has_internal_brace = false;
  bool ends_with_comma = false;
  bool ends_with_period = false;
  bool capital_period = false;      // "M."
  bool capital_period_dup = false;  // "M.M.", "M.~M.", "M.-M.", "D.S."
  bool init_capital = false;        // capital first letter with lowercase following
  bool four_digit_year = false;
  bool all_alpha = false;
  bool all_digits = false;
  bool all_symbols = false;
  bool mixed_case = false;          // capital after a lowercase somewhere inside
  bool all_upper = false;
  bool all_lower = false;
  bool internal_symbol = false;     // symbol with alphanumerics on both sides
  int token_length = 0;             // length of token_word
  std::string summarized_pattern;
  std::string token_word;           // symbols removed

  static constexpr int kBoolCount = 16;

  std::array<bool, kBoolCount> bools() const {
    return {starts_with_brace, ends_with_brace, has_internal_brace, ends_with_comma,
            ends_with_period, capital_period, capital_period_dup, init_capital,
            four_digit_year, all_alpha, all_digits, all_symbols,
            mixed_case, all_upper, all_lower, internal_symbol};
  }

  static const std::array<const char*, kBoolCount>& bool_names() {
    static const std::array<const char*, kBoolCount> names = {
        "starts_with_brace", "ends_with_brace", "has_internal_brace", "ends_with_comma",
        "ends_with_period", "capital_period", "capital_period_dup", "init_capital",
        "four_digit_year", "all_alpha", "all_digits", "all_symbols",
        "mixed_case", "all_upper", "all_lower", "internal_symbol"};
    return names;
  }
};

// ---------------------------------------------------------------------------
// Summarized pattern: canonical case/digit shape of a token.
//   digit runs            -> "d"
//   capital + lowercase+  -> "Aa"
//   other capitals        -> "A" each
//   lowercase runs        -> "a"
//   symbols               -> kept verbatim
// "Cesa-Bianchi" -> "Aa-Aa", "lif99" -> "ad", "ACM" -> "AAA".
// ---------------------------------------------------------------------------

inline std::string summarize_pattern(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  std::size_t i = 0;
  const std::size_t n = word.size();
  while (i < n) {
    const char c = word[i];
    if (is_ascii_digit(c)) {
      while (i < n && is_ascii_digit(word[i])) ++i;
      out.push_back('d');
    } else if (is_ascii_lower(c)) {
      while (i < n && is_ascii_lower(word[i])) ++i;
      out.push_back('a');
    } else if (is_ascii_upper(c)) {
      ++i;
      out.push_back('A');
      if (i < n && is_ascii_lower(word[i])) {
        while (i < n && is_ascii_lower(word[i])) ++i;
        out.push_back('a');
      }
    } else {
      out.push_back(c);
      ++i;
    }
  }
  return out;
}

namespace detail {

inline bool is_trailing_punct(char c) { return c == ',' || c == '.' || c == ';' || c == ':'; }

// "M." or "M.M." / "M.~M." / "M.-M." shapes, with one optional trailing comma.
// Returns the number of capital-period groups, 0 when the shape does not fit.
inline int initials_groups(std::string_view w) {
  if (!w.empty() && w.back() == ',') w.remove_suffix(1);
  int groups = 0;
  std::size_t i = 0;
  while (i < w.size()) {
    if (groups > 0 && (w[i] == '~' || w[i] == '-')) ++i;  // separator between groups
    if (i + 1 >= w.size() || !is_ascii_upper(w[i]) || w[i + 1] != '.') return 0;
    ++groups;
    i += 2;
  }
  return groups;
}

}  // namespace detail

// True when the token looks like initials per the capital_period /
// capital_period_dup features ("D.", "D.S.", "M.-M.").
inline bool is_initials_token(std::string_view token) {
  return detail::initials_groups(token) > 0;
}

inline WordFeatures compute_word_features(std::string_view word) {
  WordFeatures f;
  const std::size_t n = word.size();

  std::string_view core = word;  // trailing punctuation stripped
  while (!core.empty() && detail::is_trailing_punct(core.back())) core.remove_suffix(1);

  f.starts_with_brace = n > 0 && word.front() == '{';
  f.ends_with_brace = !core.empty() && core.back() == '}';
  for (std::size_t i = 1; i + 1 < core.size(); ++i) {
    if (core[i] == '{' || core[i] == '}') { f.has_internal_brace = true; break; }
  }
  f.ends_with_comma = n > 0 && word.back() == ',';
  f.ends_with_period = n > 0 && word.back() == '.';

  const int groups = detail::initials_groups(word);
  f.capital_period = groups == 1;
  f.capital_period_dup = groups >= 2;

  bool has_upper = false, has_lower = false, has_digit = false, has_symbol = false;
  bool upper_after_lower = false, seen_lower = false;
  for (char c : word) {
    if (is_ascii_upper(c)) {
      has_upper = true;
      if (seen_lower) upper_after_lower = true;
    } else if (is_ascii_lower(c)) {
      has_lower = true;
      seen_lower = true;
    } else if (is_ascii_digit(c)) {
      has_digit = true;
    } else {
      has_symbol = true;
    }
  }
  f.all_alpha = n > 0 && !has_digit && !has_symbol && (has_upper || has_lower);
  f.all_digits = n > 0 && has_digit && !has_upper && !has_lower && !has_symbol;
  f.all_symbols = n > 0 && has_symbol && !has_upper && !has_lower && !has_digit;
  f.all_upper = n > 0 && has_upper && !has_lower && !has_digit && !has_symbol;
  f.all_lower = n > 0 && has_lower && !has_upper && !has_digit && !has_symbol;
  f.mixed_case = upper_after_lower;
  f.init_capital = n >= 2 && is_ascii_upper(word[0]) && has_lower;

  f.four_digit_year = core.size() == 4 && !core.empty() &&
                      core.find_first_not_of("0123456789") == std::string_view::npos;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!is_ascii_alnum(word[i]) &&
        is_ascii_alnum(word[i - 1]) && is_ascii_alnum(word[i + 1])) {
      f.internal_symbol = true;
      break;
    }
  }

  f.token_word.reserve(n);
  for (char c : word) {
    if (is_ascii_alnum(c)) f.token_word.push_back(c);
  }
  f.token_length = static_cast<int>(f.token_word.size());
  f.summarized_pattern = summarize_pattern(word);
  return f;
}

}  // namespace citekeys

#endif  // CITEKEYS_FEATURES_HPP
