// latex.hpp - locating thebibliography environments and splitting them into
// bib entries with citation keys
//
// The parser works on comment-stripped source. It does no macro expansion:
// brace matching is depth counting over the raw string, skipping braces that
// are escaped with a backslash.

#pragma once
#ifndef CITEKEYS_LATEX_HPP
#define CITEKEYS_LATEX_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citekeys/errors.hpp"
#include "citekeys/text.hpp"

namespace citekeys {

enum class SourceKind { tex, bbl };

struct SourceDocument {
  std::string path;
  std::string text;  // comment-stripped content
  SourceKind kind = SourceKind::tex;
};

struct BibEntry {
  std::string raw_text;    // entry body, starting at its citation command
  std::string citation_key;
  std::optional<std::string> explicit_key;
  std::string source_path;
  int bibliography_index = 0;  // which environment in the document
  int ordinal = 0;             // 0-based position within the bibliography
};

// ---------------------------------------------------------------------------
// Comment stripping. A '%' whose preceding character is not a backslash kills
// the rest of its line; the newline survives. Idempotent.
// ---------------------------------------------------------------------------

inline std::string strip_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_comment = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      in_comment = false;
      out.push_back(c);
      continue;
    }
    if (in_comment) continue;
    if (c == '%' && (i == 0 || text[i - 1] != '\\')) {
      in_comment = true;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

namespace detail {

inline bool brace_escaped(std::string_view s, std::size_t pos) {
  return pos > 0 && s[pos - 1] == '\\';
}

// Returns the position one past the matching '}' for the '{' at `open`,
// or npos when unbalanced.
inline std::size_t skip_brace_group(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char c = s[i];
    if ((c == '{' || c == '}') && brace_escaped(s, i)) continue;
    if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) return i + 1;
  }
  return std::string_view::npos;
}

// Reads a \command name starting at the backslash. Returns the name (letters
// only) and sets `after` to the first position past it.
inline std::string read_command(std::string_view s, std::size_t backslash, std::size_t& after) {
  std::size_t i = backslash + 1;
  while (i < s.size() && is_ascii_alpha(s[i])) ++i;
  after = i;
  return std::string(s.substr(backslash + 1, i - backslash - 1));
}

inline std::size_t skip_ws(std::string_view s, std::size_t i) {
  while (i < s.size() && is_ascii_space(s[i])) ++i;
  return i;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bibliography environments
// ---------------------------------------------------------------------------

// Inner text of each balanced \begin{thebibliography}{...}..\end{thebibliography}
// pair, in document order. The mandatory widest-label argument after \begin is
// consumed when present. Nested or unterminated environments throw
// UnbalancedEnvironment; the caller skips the document.
inline std::vector<std::string> find_bibliographies(const SourceDocument& doc) {
  static constexpr std::string_view kBegin = "\\begin{thebibliography}";
  static constexpr std::string_view kEnd = "\\end{thebibliography}";
  std::vector<std::string> blocks;
  std::string_view text = doc.text;
  std::size_t pos = 0;
  while (true) {
    const std::size_t begin = text.find(kBegin, pos);
    if (begin == std::string_view::npos) break;
    std::size_t body = begin + kBegin.size();
    body = detail::skip_ws(text, body);
    if (body < text.size() && text[body] == '{') {
      const std::size_t past = detail::skip_brace_group(text, body);
      if (past == std::string_view::npos) {
        throw UnbalancedEnvironment(doc.path + ": unterminated argument after \\begin{thebibliography}");
      }
      body = past;
    }
    const std::size_t end = text.find(kEnd, body);
    if (end == std::string_view::npos) {
      throw UnbalancedEnvironment(doc.path + ": \\begin{thebibliography} without matching \\end");
    }
    const std::size_t inner_begin = text.find(kBegin, body);
    if (inner_begin != std::string_view::npos && inner_begin < end) {
      throw UnbalancedEnvironment(doc.path + ": nested thebibliography environments");
    }
    blocks.emplace_back(text.substr(body, end - body));
    pos = end + kEnd.size();
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// Entry splitting
// ---------------------------------------------------------------------------

struct SplitResult {
  std::vector<std::string> entries;
  int unrecognized_commands = 0;  // \harvarditem and friends, skipped
};

namespace detail {

// Citation commands other than the three supported families; they are skipped
// and tallied per the diagnostics contract.
inline bool is_foreign_citation_command(std::string_view name) {
  return name == "harvarditem" || name == "bibem" || name == "reference";
}

inline bool is_entry_command(std::string_view name) {
  return name == "bibitem" || name == "bibitemstart" || name == "BIBentry";
}

}  // namespace detail

// One raw text per citation command. \bibitem and \BIBentry entries run until
// the next citation command or end of block; \bibitemstart runs to its
// matching \bibitemend (which is consumed). Throws DanglingBibitemstart when
// the end is missing.
inline SplitResult split_bib_entries(std::string_view block) {
  SplitResult result;
  std::vector<std::size_t> starts;        // offsets of entry commands
  std::vector<std::string> names;         // command name at each start
  std::vector<std::size_t> ends;          // filled for bibitemstart entries
  std::size_t i = 0;
  while (i < block.size()) {
    if (block[i] != '\\') { ++i; continue; }
    std::size_t after = 0;
    const std::string name = detail::read_command(block, i, after);
    if (detail::is_entry_command(name) || name == "bibitemend") {
      starts.push_back(i);
      names.push_back(name);
    } else if (detail::is_foreign_citation_command(name)) {
      ++result.unrecognized_commands;
    }
    i = after > i ? after : i + 1;
  }

  for (std::size_t k = 0; k < starts.size(); ++k) {
    const std::string& name = names[k];
    if (name == "bibitemend") continue;  // consumed below or stray
    std::size_t end = block.size();
    if (name == "bibitemstart") {
      bool closed = false;
      for (std::size_t m = k + 1; m < starts.size(); ++m) {
        if (names[m] == "bibitemend") {
          end = starts[m] + std::string_view("\\bibitemend").size();
          closed = true;
          break;
        }
        if (names[m] == "bibitemstart") break;  // next start before any end
      }
      if (!closed) throw DanglingBibitemstart("\\bibitemstart without \\bibitemend");
    } else if (k + 1 < starts.size()) {
      // Until the next command that opens an entry (stray ends are skipped).
      for (std::size_t m = k + 1; m < starts.size(); ++m) {
        if (names[m] != "bibitemend") { end = starts[m]; break; }
      }
    }
    std::string entry(block.substr(starts[k], end - starts[k]));
    if (!trim(entry).empty()) result.entries.push_back(std::move(entry));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Citation key extraction
// ---------------------------------------------------------------------------

struct ExtractedKey {
  std::string citation_key;
  std::optional<std::string> explicit_key;
  std::size_t body_begin = 0;  // offset just past the key group
};

namespace detail {

inline bool valid_citation_key(std::string_view key) {
  if (key.empty()) return false;
  for (std::size_t i = 0; i < key.size(); ++i) {
    const char c = key[i];
    if ((c == '{' || c == '}' || c == ',') && !brace_escaped(key, i)) return false;
    if (is_ascii_space(c)) return false;
  }
  return true;
}

}  // namespace detail

// Parses "\<command>[<explicit key>]{<citation key>}" at the head of an entry.
// The bracket group is optional; ']' inside braces does not close it. Throws
// MissingKey when no valid brace group follows.
inline ExtractedKey extract_citation_key(std::string_view entry_text) {
  if (entry_text.empty() || entry_text[0] != '\\') {
    throw MissingKey("entry does not start with a citation command");
  }
  std::size_t pos = 0;
  detail::read_command(entry_text, 0, pos);
  pos = detail::skip_ws(entry_text, pos);

  ExtractedKey out;
  if (pos < entry_text.size() && entry_text[pos] == '[') {
    int brace_depth = 0;
    std::size_t close = std::string_view::npos;
    for (std::size_t i = pos + 1; i < entry_text.size(); ++i) {
      const char c = entry_text[i];
      if ((c == '{' || c == '}') && detail::brace_escaped(entry_text, i)) continue;
      if (c == '{') ++brace_depth;
      else if (c == '}') --brace_depth;
      else if (c == ']' && brace_depth == 0) { close = i; break; }
    }
    if (close == std::string_view::npos) throw MissingKey("unterminated [explicit key] group");
    out.explicit_key = std::string(entry_text.substr(pos + 1, close - pos - 1));
    pos = detail::skip_ws(entry_text, close + 1);
  }

  if (pos >= entry_text.size() || entry_text[pos] != '{') {
    throw MissingKey("no {key} group after citation command");
  }
  const std::size_t past = detail::skip_brace_group(entry_text, pos);
  if (past == std::string_view::npos) throw MissingKey("unbalanced {key} group");
  const std::string key = trim(entry_text.substr(pos + 1, past - pos - 2));
  if (!detail::valid_citation_key(key)) {
    throw MissingKey("invalid citation key: '" + key + "'");
  }
  out.citation_key = key;
  out.body_begin = past;
  return out;
}

// ---------------------------------------------------------------------------
// Markup flattening, used for titles and command-wrapped author text. Command
// tokens disappear, group contents stay, runs of whitespace/tildes collapse to
// one space. \bibinfo additionally drops its field-name argument.
// ---------------------------------------------------------------------------

inline std::string flatten_markup(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  const std::size_t n = s.size();
  auto push_space = [&out] {
    if (!out.empty() && out.back() != ' ') out.push_back(' ');
  };
  while (i < n) {
    const char c = s[i];
    if (c == '\\' && i + 1 < n) {
      const char next = s[i + 1];
      if (is_ascii_alpha(next)) {
        std::size_t after = 0;
        const std::string name = detail::read_command(s, i, after);
        i = after;
        if (name == "bibinfo") {
          const std::size_t open = detail::skip_ws(s, i);
          if (open < n && s[open] == '{') {
            const std::size_t past = detail::skip_brace_group(s, open);
            if (past != std::string_view::npos) i = past;
          }
        }
        continue;
      }
      // Accent commands drop, escaped specials keep their character.
      if (next == '%' || next == '&' || next == '$' || next == '#' || next == '_') {
        out.push_back(next);
      }
      i += 2;
      continue;
    }
    if (c == '{' || c == '}') { ++i; continue; }
    if (is_ascii_space(c) || c == '~') {
      push_space();
      ++i;
      continue;
    }
    out.push_back(c);
    ++i;
  }
  return trim(out);
}

}  // namespace citekeys

#endif  // CITEKEYS_LATEX_HPP
