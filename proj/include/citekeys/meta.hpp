// meta.hpp - segmenting a bib entry into year, author text and title
//
// Author text comes from a fixed-order list of high-precision patterns; the
// entries no pattern covers are handled by the trained classifier (see
// logistic.hpp). Year extraction prefers year commands, then matches
// four-digit candidates against digit evidence in the citation key.

#pragma once
#ifndef CITEKEYS_META_HPP
#define CITEKEYS_META_HPP

#include <cstdlib>
#include <ctime>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citekeys/features.hpp"
#include "citekeys/latex.hpp"
#include "citekeys/text.hpp"

namespace citekeys {

// ---------------------------------------------------------------------------
// Year extraction
// ---------------------------------------------------------------------------

inline int current_utc_year() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
#if defined(_WIN32)
  gmtime_s(&tm, &now);
#else
  gmtime_r(&now, &tm);
#endif
  return tm.tm_year + 1900;
}

// Validity window for year candidates. The practical window starts at 1800 to
// drop volume/page false positives; the strict window starts at 1500 so that
// early-print years stay in the candidate pool and get resolved by key
// evidence instead.
struct YearWindow {
  int min_year = 1800;
  int max_year = 0;

  static YearWindow practical() { return {1800, current_utc_year() + 1}; }
  static YearWindow strict_paper() { return {1500, current_utc_year() + 1}; }

  bool contains(int y) const { return y >= min_year && y <= max_year; }
};

namespace detail {

// Maximal digit runs in `s`, as (value, length) in reading order.
struct DigitRun {
  int value = 0;
  int length = 0;
};

inline std::vector<DigitRun> digit_runs(std::string_view s) {
  std::vector<DigitRun> runs;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_ascii_digit(s[i])) { ++i; continue; }
    const std::size_t b = i;
    while (i < s.size() && is_ascii_digit(s[i])) ++i;
    const std::size_t len = i - b;
    if (len <= 9) {
      runs.push_back({std::atoi(std::string(s.substr(b, len)).c_str()), static_cast<int>(len)});
    }
  }
  return runs;
}

// Two-digit key evidence maps to a century: 30..99 -> 1900s, 00..29 -> 2000s.
inline int expand_two_digit_year(int d) { return d >= 30 ? 1900 + d : 2000 + d; }

inline std::optional<int> year_from_group(std::string_view text, std::size_t group_open,
                                          const YearWindow& window) {
  const std::size_t past = skip_brace_group(text, group_open);
  if (past == std::string_view::npos) return std::nullopt;
  for (const DigitRun& run : digit_runs(text.substr(group_open, past - group_open))) {
    if (run.length == 4 && window.contains(run.value)) return run.value;
  }
  return std::nullopt;
}

}  // namespace detail

// Year from explicit commands: \byear{...}, \bibyear{...}, \bibinfo{year}{...}.
inline std::optional<int> year_from_commands(std::string_view body, const YearWindow& window) {
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] != '\\') { ++i; continue; }
    std::size_t after = 0;
    const std::string name = detail::read_command(body, i, after);
    i = after > i ? after : i + 1;
    if (name == "byear" || name == "bibyear") {
      const std::size_t open = detail::skip_ws(body, after);
      if (open < body.size() && body[open] == '{') {
        if (auto y = detail::year_from_group(body, open, window)) return y;
      }
    } else if (name == "bibinfo") {
      std::size_t open = detail::skip_ws(body, after);
      if (open >= body.size() || body[open] != '{') continue;
      const std::size_t past = detail::skip_brace_group(body, open);
      if (past == std::string_view::npos) continue;
      if (trim(body.substr(open + 1, past - open - 2)) != "year") continue;
      open = detail::skip_ws(body, past);
      if (open < body.size() && body[open] == '{') {
        if (auto y = detail::year_from_group(body, open, window)) return y;
      }
    }
  }
  return std::nullopt;
}

enum class YearSource { none, command, evidence, fallback };

struct YearExtraction {
  std::optional<int> year;
  YearSource source = YearSource::none;
};

// Evidence-based year extraction over the entry body (the text after the key
// group). Command years win; otherwise four-digit candidates are matched
// against two/four-digit substrings of the citation key with a +-1 allowance;
// otherwise the first candidate in entry order is returned.
inline YearExtraction extract_year_detailed(std::string_view body, std::string_view citation_key,
                                            const YearWindow& window) {
  if (auto y = year_from_commands(body, window)) return {y, YearSource::command};

  std::vector<int> candidates;
  for (const detail::DigitRun& run : detail::digit_runs(body)) {
    if (run.length == 4 && window.contains(run.value)) candidates.push_back(run.value);
  }
  if (candidates.empty()) return {};

  for (const detail::DigitRun& run : detail::digit_runs(citation_key)) {
    int evidence = 0;
    if (run.length == 2) evidence = detail::expand_two_digit_year(run.value);
    else if (run.length == 4) evidence = run.value;
    else continue;
    for (int c : candidates) {
      if (c - evidence <= 1 && evidence - c <= 1) return {c, YearSource::evidence};
    }
  }
  return {candidates.front(), YearSource::fallback};
}

inline std::optional<int> extract_year(std::string_view body, std::string_view citation_key,
                                       const YearWindow& window) {
  return extract_year_detailed(body, citation_key, window).year;
}

inline std::optional<int> extract_year(const BibEntry& entry, std::string_view citation_key,
                                       const YearWindow& window) {
  std::string_view body = entry.raw_text;
  // Skip the citation command and key groups when present.
  try {
    const ExtractedKey key = extract_citation_key(entry.raw_text);
    body = body.substr(key.body_begin);
  } catch (const MissingKey&) {
  }
  return extract_year(body, citation_key, window);
}

// ---------------------------------------------------------------------------
// Author text patterns. Matched in the fixed order below; the first hit wins.
// Command-wrapped patterns return flattened text; boundary patterns return
// the raw prefix so spacing and tildes survive for the splitter.
// ---------------------------------------------------------------------------

struct AuthorTextHit {
  std::string text;
  std::string pattern_id;
  std::size_t end_offset = 0;  // offset into the scanned body just past the author region
};

namespace detail {

struct CommandSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Occurrences of \cmd{...}; for \bibinfo the first group must equal `field`
// and the span covers both groups.
inline std::vector<CommandSpan> command_spans(std::string_view body, std::string_view cmd,
                                              std::string_view field = {}) {
  std::vector<CommandSpan> spans;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] != '\\') { ++i; continue; }
    std::size_t after = 0;
    const std::string name = read_command(body, i, after);
    const std::size_t start = i;
    i = after > i ? after : i + 1;
    if (name != cmd) continue;
    std::size_t open = skip_ws(body, after);
    if (open >= body.size() || body[open] != '{') continue;
    std::size_t past = skip_brace_group(body, open);
    if (past == std::string_view::npos) continue;
    if (!field.empty()) {
      if (trim(body.substr(open + 1, past - open - 2)) != field) continue;
      open = skip_ws(body, past);
      if (open >= body.size() || body[open] != '{') continue;
      past = skip_brace_group(body, open);
      if (past == std::string_view::npos) continue;
    }
    spans.push_back({start, past});
    i = past;
  }
  return spans;
}

// True when the range contains no \letter command (accent commands and
// escaped specials are fine).
inline bool command_free(std::string_view s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == '\\' && is_ascii_alpha(s[i + 1])) return false;
  }
  return true;
}

inline std::optional<AuthorTextHit> span_pattern(std::string_view body, std::string_view cmd,
                                                 std::string_view field, std::string pattern_id) {
  const auto spans = command_spans(body, cmd, field);
  if (spans.empty()) return std::nullopt;
  const std::size_t begin = spans.front().begin;
  const std::size_t end = spans.back().end;
  std::string text = flatten_markup(body.substr(begin, end - begin));
  if (text.empty()) return std::nullopt;
  return AuthorTextHit{std::move(text), std::move(pattern_id), end};
}

inline std::size_t find_command(std::string_view body, std::string_view cmd) {
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] != '\\') { ++i; continue; }
    std::size_t after = 0;
    const std::string name = read_command(body, i, after);
    if (name == cmd) return i;
    i = after > i ? after : i + 1;
  }
  return std::string_view::npos;
}

inline std::size_t count_command(std::string_view body, std::string_view cmd) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] != '\\') { ++i; continue; }
    std::size_t after = 0;
    const std::string name = read_command(body, i, after);
    if (name == cmd) ++count;
    i = after > i ? after : i + 1;
  }
  return count;
}

inline std::optional<AuthorTextHit> newblock_pattern(std::string_view body,
                                                     std::size_t min_newblocks,
                                                     std::string pattern_id) {
  if (count_command(body, "newblock") < min_newblocks) return std::nullopt;
  const std::size_t pos = find_command(body, "newblock");
  const std::string_view prefix = body.substr(0, pos);
  if (!command_free(prefix)) return std::nullopt;
  std::string text = trim(prefix);
  if (text.empty()) return std::nullopt;
  return AuthorTextHit{std::move(text), std::move(pattern_id), pos};
}

// First '.' at brace depth 0 that is followed by a quote or emphasis marker
// (the start of a quoted/emphasized title).
inline std::optional<AuthorTextHit> period_quote_pattern(std::string_view body) {
  int depth = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if ((c == '{' || c == '}') && brace_escaped(body, i)) continue;
    if (c == '{') { ++depth; continue; }
    if (c == '}') { --depth; continue; }
    if (c != '.' || depth != 0) continue;
    std::size_t j = i + 1;
    while (j < body.size() && (is_ascii_space(body[j]) || body[j] == '~')) ++j;
    if (j >= body.size()) continue;
    const std::string_view rest = body.substr(j);
    const bool marker = rest[0] == '`' || rest[0] == '"' ||
                        rest.rfind("\\emph", 0) == 0 || rest.rfind("\\textit", 0) == 0 ||
                        rest.rfind("{\\em ", 0) == 0 || rest.rfind("{\\it ", 0) == 0;
    if (!marker) continue;
    const std::string_view prefix = body.substr(0, i + 1);
    if (!command_free(prefix)) return std::nullopt;
    std::string text = trim(prefix);
    if (text.empty()) return std::nullopt;
    return AuthorTextHit{std::move(text), "period_quote", i + 1};
  }
  return std::nullopt;
}

}  // namespace detail

// Fixed pattern order: command-wrapped author fields first (most precise),
// then the newblock boundary forms, then the quoted-title boundary.
inline std::optional<AuthorTextHit> extract_author_text_by_pattern(std::string_view body) {
  if (auto hit = detail::span_pattern(body, "bibinfo", "author", "bibinfo_author")) return hit;
  if (auto hit = detail::span_pattern(body, "bauthor", {}, "bauthor")) return hit;
  if (auto hit = detail::span_pattern(body, "Name", {}, "name_cmd")) return hit;
  if (auto hit = detail::span_pattern(body, "bibsc", {}, "bibsc")) return hit;
  if (auto hit = detail::newblock_pattern(body, 2, "newblock")) return hit;
  if (auto hit = detail::newblock_pattern(body, 1, "pre_newblock")) return hit;
  if (auto hit = detail::period_quote_pattern(body)) return hit;
  return std::nullopt;
}

inline std::optional<AuthorTextHit> extract_author_text_by_pattern(const BibEntry& entry) {
  std::string_view body = entry.raw_text;
  try {
    const ExtractedKey key = extract_citation_key(entry.raw_text);
    body = body.substr(key.body_begin);
  } catch (const MissingKey&) {
  }
  return extract_author_text_by_pattern(body);
}

// ---------------------------------------------------------------------------
// Title: from the end of the author region to the first sentence terminator
// at brace depth 0, markup stripped. Leading block separators (\newblock,
// stray punctuation) are skipped first.
// ---------------------------------------------------------------------------

inline std::optional<std::string> extract_title(std::string_view body,
                                                std::size_t author_end_offset) {
  std::size_t i = author_end_offset;
  const std::size_t n = body.size();
  bool skipping = true;
  while (skipping && i < n) {
    skipping = false;
    while (i < n && (is_ascii_space(body[i]) || body[i] == '~')) { ++i; skipping = true; }
    if (i < n && (body[i] == '.' || body[i] == ',' || body[i] == ';' || body[i] == ':' ||
                  body[i] == ')' || body[i] == '(')) {
      ++i;
      skipping = true;
    }
    if (i < n && body[i] == '\\') {
      std::size_t after = 0;
      if (detail::read_command(body, i, after) == "newblock") {
        i = after;
        skipping = true;
      }
    }
  }
  if (i >= n) return std::nullopt;

  int depth = 0;
  std::size_t end = n;
  for (std::size_t j = i; j < n; ++j) {
    const char c = body[j];
    if ((c == '{' || c == '}') && detail::brace_escaped(body, j)) continue;
    if (c == '{') { ++depth; continue; }
    if (c == '}') { if (depth > 0) --depth; continue; }
    if (depth == 0 && (c == '.' || c == ',' || c == ';' || c == '!' || c == '?')) {
      end = j;
      break;
    }
  }
  std::string title = flatten_markup(body.substr(i, end - i));
  auto is_quote = [](char c) { return c == '`' || c == '\'' || c == '"'; };
  std::size_t lead = 0;
  while (lead < title.size() && is_quote(title[lead])) ++lead;
  title.erase(0, lead);
  while (!title.empty() && (title.back() == '.' || title.back() == ',' || title.back() == ' ' ||
                            is_quote(title.back()))) {
    title.pop_back();
  }
  if (title.empty()) return std::nullopt;
  return title;
}

// ---------------------------------------------------------------------------
// Classifier-facing cleanup: \letter commands vanish (a space survives so
// neighbours do not glue), escaped specials keep their character, braces and
// everything else stay. This is the token stream both training labels and
// detection run on.
// ---------------------------------------------------------------------------

inline std::string clean_for_classification(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\\' && i + 1 < s.size()) {
      if (is_ascii_alpha(s[i + 1])) {
        std::size_t after = 0;
        detail::read_command(s, i, after);
        out.push_back(' ');
        i = after;
        continue;
      }
      const char next = s[i + 1];
      if (next == '%' || next == '&' || next == '$' || next == '#' || next == '_' ||
          next == '{' || next == '}') {
        out.push_back(next);
      }
      // Accent commands ({\"o}) drop silently so the host word stays whole.
      i += 2;
      continue;
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

}  // namespace citekeys

#endif  // CITEKEYS_META_HPP
