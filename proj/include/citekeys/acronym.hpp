// acronym.hpp - weighted longest-common-subsequence test for author acronyms
//
// Detects keys built from all authors' last names: pure initials ("CMY"),
// first name in full plus initials ("CormodeMY"), or name prefixes
// ("CorMutYan"). Matched letters are weighted by their role in the
// concatenated last-name string: capital first letters count w_A, non-capital
// first letters w_a, everything else w_s.

#pragma once
#ifndef CITEKEYS_ACRONYM_HPP
#define CITEKEYS_ACRONYM_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "citekeys/text.hpp"

namespace citekeys {

struct AcronymParams {
  double w_A = 2.0;              // capital first letter of a last name
  double w_a = 1.1;              // non-capital first letter
  double w_s = 0.1;              // any other matched letter
  double threshold_factor = 0.5; // accept when score > threshold_factor * w_A * T
};

struct AcronymInput {
  std::string concatenated;        // all last names, internal whitespace removed
  std::vector<bool> is_first_letter;
  int author_count = 0;

  static AcronymInput from_last_names(const std::vector<std::string>& last_names) {
    AcronymInput in;
    for (const std::string& name : last_names) {
      bool first = true;
      for (char c : name) {
        if (is_ascii_space(c) || c == '~') continue;
        in.concatenated.push_back(c);
        in.is_first_letter.push_back(first);
        first = false;
      }
      ++in.author_count;
    }
    return in;
  }
};

struct AcronymVerdict {
  bool is_acronym = false;
  double score = 0.0;
  double threshold = 0.0;
};

// Weighted LCS between the citation key and the concatenated last names.
// Case-insensitive character equality; per-cell recurrence
//   A[i][j] = max(A[i-1][j], A[i][j-1], A[i-1][j-1] + w)
// with w = 0 on mismatch. Score is A[|s_c|][|s_A|].
inline AcronymVerdict is_acronym(std::string_view citation_key, const AcronymInput& names,
                                 const AcronymParams& params = {}) {
  AcronymVerdict verdict;
  verdict.threshold = params.threshold_factor * params.w_A * names.author_count;

  const std::size_t rows = citation_key.size();
  const std::size_t cols = names.concatenated.size();
  std::vector<double> prev(cols + 1, 0.0), cur(cols + 1, 0.0);
  for (std::size_t i = 1; i <= rows; ++i) {
    const char kc = ascii_lower(citation_key[i - 1]);
    for (std::size_t j = 1; j <= cols; ++j) {
      const char nc = names.concatenated[j - 1];
      double w = 0.0;
      if (kc == ascii_lower(nc)) {
        if (names.is_first_letter[j - 1]) {
          w = is_ascii_upper(nc) ? params.w_A : params.w_a;
        } else {
          w = params.w_s;
        }
      }
      const double skip = std::max(cur[j - 1], prev[j]);
      cur[j] = std::max(skip, prev[j - 1] + w);
    }
    std::swap(prev, cur);
    cur.assign(cols + 1, 0.0);
  }
  verdict.score = prev[cols];
  verdict.is_acronym = verdict.score > verdict.threshold;
  return verdict;
}

inline AcronymVerdict is_acronym(std::string_view citation_key,
                                 const std::vector<std::string>& last_names,
                                 const AcronymParams& params = {}) {
  return is_acronym(citation_key, AcronymInput::from_last_names(last_names), params);
}

}  // namespace citekeys

#endif  // CITEKEYS_ACRONYM_HPP
