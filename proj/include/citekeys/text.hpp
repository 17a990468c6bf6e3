// text.hpp - byte-level text helpers shared by the parsing and matching layers
//
// Everything here is locale-free: ASCII case folding, accent folding to base
// letters, whitespace tokenization with source offsets, and small scanning
// utilities. LaTeX-specific scanning lives in latex.hpp.

#pragma once
#ifndef CITEKEYS_TEXT_HPP
#define CITEKEYS_TEXT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace citekeys {

// ---------------------------------------------------------------------------
// ASCII character classes (std::isupper & co. are locale-dependent and UB on
// negative chars; these are not)
// ---------------------------------------------------------------------------

constexpr bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
constexpr bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
constexpr bool is_ascii_alpha(char c) { return is_ascii_upper(c) || is_ascii_lower(c); }
constexpr bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
constexpr bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }
constexpr bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
constexpr char ascii_lower(char c) { return is_ascii_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }
constexpr char ascii_upper(char c) { return is_ascii_lower(c) ? static_cast<char>(c - 'a' + 'A') : c; }

inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(ascii_lower(c));
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_ascii_space(s[b])) ++b;
  while (e > b && is_ascii_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

// ---------------------------------------------------------------------------
// UTF-8 sanitation: invalid byte sequences become U+FFFD so downstream code
// can assume well-formed UTF-8. Returns true when a replacement occurred.
// ---------------------------------------------------------------------------

inline bool sanitize_utf8(std::string& text) {
  static constexpr const char* kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(text.size());
  bool replaced = false;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const unsigned char b = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    if (b < 0x80) len = 1;
    else if ((b & 0xE0) == 0xC0 && b >= 0xC2) len = 2;
    else if ((b & 0xF0) == 0xE0) len = 3;
    else if ((b & 0xF8) == 0xF0 && b <= 0xF4) len = 4;
    if (len == 0 || i + len > n) {
      out += kReplacement;
      replaced = true;
      ++i;
      continue;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) { ok = false; break; }
    }
    if (!ok) {
      out += kReplacement;
      replaced = true;
      ++i;
      continue;
    }
    out.append(text, i, len);
    i += len;
  }
  if (replaced) text = std::move(out);
  return replaced;
}

// ---------------------------------------------------------------------------
// Accent folding. Handles the two forms that occur in bibliographies:
//   1. LaTeX accent commands:  {\"o}  \'e  \c{c}  \v{s}  ...
//   2. Precomposed UTF-8 letters: ä é ø ş ...  (Latin-1 Supplement and
//      Latin Extended-A, the ranges that actually show up in names)
// Output is ASCII; unknown non-ASCII bytes are dropped.
// ---------------------------------------------------------------------------

namespace detail {

// Maps a Unicode code point to its base ASCII letters ("" = drop).
inline std::string fold_codepoint(uint32_t cp) {
  if (cp < 0x80) return std::string(1, static_cast<char>(cp));
  struct Range { uint32_t lo, hi; const char* base; };
  // Latin-1 Supplement letters, grouped by base letter.
  static const Range kRanges[] = {
      {0xC0, 0xC5, "A"}, {0xC7, 0xC7, "C"}, {0xC8, 0xCB, "E"}, {0xCC, 0xCF, "I"},
      {0xD1, 0xD1, "N"}, {0xD2, 0xD6, "O"}, {0xD8, 0xD8, "O"}, {0xD9, 0xDC, "U"},
      {0xDD, 0xDD, "Y"},
      {0xE0, 0xE5, "a"}, {0xE7, 0xE7, "c"}, {0xE8, 0xEB, "e"}, {0xEC, 0xEF, "i"},
      {0xF1, 0xF1, "n"}, {0xF2, 0xF6, "o"}, {0xF8, 0xF8, "o"}, {0xF9, 0xFC, "u"},
      {0xFD, 0xFD, "y"}, {0xFF, 0xFF, "y"},
  };
  for (const auto& r : kRanges) {
    if (cp >= r.lo && cp <= r.hi) return r.base;
  }
  if (cp == 0xC6) return "AE";
  if (cp == 0xE6) return "ae";
  if (cp == 0xDF) return "ss";
  if (cp == 0xD0) return "D";
  if (cp == 0xF0) return "d";
  if (cp == 0xDE) return "Th";
  if (cp == 0xFE) return "th";
  // Latin Extended-A: alternating upper/lower variants of basic letters.
  if (cp >= 0x100 && cp <= 0x17F) {
    static const char* kExtA =
        "AaAaAaCcCcCcCcDdDdEeEeEeEeEeGgGgGgGgHhHhIiIiIiIiIiJjKkkLlLlLlLlLl"
        "NnNnNnnNnOoOoOoOoRrRrRrSsSsSsSsTtTtTtUuUuUuUuUuUuWwYyYZzZzZzs";
    const std::size_t idx = cp - 0x100;
    if (idx < std::char_traits<char>::length(kExtA)) return std::string(1, kExtA[idx]);
  }
  return "";
}

}  // namespace detail

// Strips LaTeX accent commands and folds precomposed characters to ASCII.
// "{\\\"o}zsu" -> "ozsu", "\\'e" -> "e", "Meüller" style input is out of
// scope (no combining-mark handling; bbl sources use the precomposed forms).
inline std::string fold_accents(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    const char c = s[i];
    if (c == '\\' && i + 1 < n) {
      const char next = s[i + 1];
      // Accent commands with punctuation names: \" \' \` \^ \~ \= \.
      if (next == '"' || next == '\'' || next == '`' || next == '^' || next == '~' ||
          next == '=' || next == '.') {
        i += 2;
        continue;
      }
      // One-letter accent commands taking a group or letter: \c{c} \v{s} \u \H \k \b \d \t \r
      if ((next == 'c' || next == 'v' || next == 'u' || next == 'H' || next == 'k' ||
           next == 'b' || next == 'd' || next == 't' || next == 'r') &&
          (i + 2 >= n || !is_ascii_alpha(s[i + 2]))) {
        i += 2;
        continue;
      }
      // Dotless i/j and the o/l stroke letters.
      if (n - i >= 2 && !is_ascii_alpha(next)) { out.push_back(next); i += 2; continue; }
      if (next == 'i' || next == 'j' || next == 'o' || next == 'O' || next == 'l' ||
          next == 'L') {
        if (i + 2 >= n || !is_ascii_alpha(s[i + 2])) {
          out.push_back(next == 'i' ? 'i' : next == 'j' ? 'j' : next);
          i += 2;
          continue;
        }
      }
      // Other commands: skip the token, keep what follows.
      std::size_t j = i + 1;
      while (j < n && is_ascii_alpha(s[j])) ++j;
      i = j;
      continue;
    }
    if (c == '{' || c == '}') { ++i; continue; }
    const unsigned char b = static_cast<unsigned char>(c);
    if (b < 0x80) { out.push_back(c); ++i; continue; }
    // Decode one UTF-8 code point and fold it.
    uint32_t cp = 0;
    std::size_t len = 1;
    if ((b & 0xE0) == 0xC0) { cp = b & 0x1F; len = 2; }
    else if ((b & 0xF0) == 0xE0) { cp = b & 0x0F; len = 3; }
    else if ((b & 0xF8) == 0xF0) { cp = b & 0x07; len = 4; }
    else { ++i; continue; }
    if (i + len > n) { ++i; continue; }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned char cb = static_cast<unsigned char>(s[i + k]);
      if ((cb & 0xC0) != 0x80) { ok = false; break; }
      cp = (cp << 6) | (cb & 0x3F);
    }
    if (!ok) { ++i; continue; }
    out += detail::fold_codepoint(cp);
    i += len;
  }
  return out;
}

// Canonical form used by every matching operation: accents folded, lowercased.
inline std::string normalize_for_match(std::string_view s) {
  return to_lower(fold_accents(s));
}

// ---------------------------------------------------------------------------
// Tokenization. Tokens carry byte offsets into the original string so author
// text can be reconstructed exactly (tildes count as separators but stay in
// the source).
// ---------------------------------------------------------------------------

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offset of first char
  std::size_t end = 0;    // one past last char
};

inline bool is_token_separator(char c) { return is_ascii_space(c) || c == '~'; }

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_token_separator(text[i])) ++i;
    if (i >= n) break;
    const std::size_t b = i;
    while (i < n && !is_token_separator(text[i])) ++i;
    tokens.push_back({std::string(text.substr(b, i - b)), b, i});
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Counting and misc
// ---------------------------------------------------------------------------

// Overlapping occurrences of `needle` in `haystack` ("aaa" contains "aa" twice).
inline std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  if (needle.empty() || haystack.size() < needle.size()) return 0;
  std::size_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    ++count;
  }
  return count;
}

inline bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ascii_lower(s[i]) != ascii_lower(prefix[i])) return false;
  }
  return true;
}

}  // namespace citekeys

#endif  // CITEKEYS_TEXT_HPP
