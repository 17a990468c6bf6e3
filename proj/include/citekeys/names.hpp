// names.hpp - splitting author text into (first, last) name records
//
// Group boundaries: "and", "&", and commas that separate persons. A comma
// binds instead of splitting when it sits between a last name and an initials
// token ("Knuth, D.E."); a comma right after initials always starts the next
// person ("...C.J., P. Kay"). "et al" never names a person; it is dropped and
// flagged.

#pragma once
#ifndef CITEKEYS_NAMES_HPP
#define CITEKEYS_NAMES_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citekeys/errors.hpp"
#include "citekeys/features.hpp"
#include "citekeys/text.hpp"

namespace citekeys {

struct AuthorName {
  std::string first;  // initials or full first name, middle names included; may be empty
  std::string last;   // nonempty
  int position = 0;   // 1-based index in the entry's author list
};

struct NameGroup {
  std::vector<std::string> tokens;  // includes a "," marker token in the bound-comma form
};

struct SplitAuthorsResult {
  std::vector<NameGroup> groups;
  bool et_al_truncated = false;
};

namespace detail {

inline bool is_particle(std::string_view tok) {
  const std::string t = to_lower(std::string(tok));
  return t == "ter" || t == "van" || t == "de" || t == "der" || t == "von" ||
         t == "den" || t == "del" || t == "da" || t == "dos" || t == "la" ||
         t == "le" || t == "di";
}

inline bool is_and_token(std::string_view tok) {
  return tok == "&" || tok == "\\&" || to_lower(std::string(tok)) == "and";
}

inline bool is_et_al_tail(std::string_view tok) {
  const std::string t = to_lower(std::string(tok));
  return t == "al" || t == "al." || t == "al.," || t == "al,";
}

// Whitespace tokens re-split so every comma becomes its own token:
// "Partee,B.H.," -> ["Partee", ",", "B.H.", ","].
inline std::vector<std::string> comma_tokens(std::string_view author_text) {
  std::vector<std::string> out;
  for (const Token& tok : tokenize(author_text)) {
    std::string_view t = tok.text;
    std::size_t start = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] != ',') continue;
      if (i > start) out.emplace_back(t.substr(start, i - start));
      out.emplace_back(",");
      start = i + 1;
    }
    if (start < t.size()) out.emplace_back(t.substr(start));
  }
  return out;
}

inline bool initials_like(std::string_view tok) {
  return is_initials_token(fold_accents(tok));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Group splitting
// ---------------------------------------------------------------------------

inline SplitAuthorsResult split_author_groups(std::string_view author_text) {
  if (trim(author_text).empty()) throw EmptyAuthorText("author text is empty");

  SplitAuthorsResult result;
  const std::vector<std::string> toks = detail::comma_tokens(author_text);
  NameGroup current;
  auto flush = [&] {
    // A group of nothing but comma markers is leftover punctuation.
    for (const std::string& t : current.tokens) {
      if (t != ",") {
        result.groups.push_back(current);
        break;
      }
    }
    current.tokens.clear();
  };

  bool group_has_initials = false;
  bool group_has_comma = false;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    if (t == ",") {
      if (current.tokens.empty()) continue;
      const std::string& prev = current.tokens.back();
      const std::string* next = nullptr;
      for (std::size_t j = i + 1; j < toks.size(); ++j) {
        if (toks[j] != ",") { next = &toks[j]; break; }
      }
      // A comma binds as the "Last, First" separator only when the group has
      // no first-name material yet; "T. Cormen, C. Leiserson" must split.
      if (!group_has_initials && !group_has_comma && !detail::initials_like(prev) && next &&
          detail::initials_like(*next) && !detail::is_and_token(*next)) {
        current.tokens.push_back(",");
        group_has_comma = true;
      } else {
        flush();
        group_has_initials = false;
        group_has_comma = false;
      }
      continue;
    }
    if (detail::is_and_token(t)) {
      flush();
      group_has_initials = false;
      group_has_comma = false;
      continue;
    }
    if (to_lower(t) == "et" && i + 1 < toks.size() && detail::is_et_al_tail(toks[i + 1])) {
      result.et_al_truncated = true;
      ++i;
      flush();
      group_has_initials = false;
      group_has_comma = false;
      continue;
    }
    if (detail::initials_like(t)) group_has_initials = true;
    current.tokens.push_back(t);
  }
  flush();
  return result;
}

// ---------------------------------------------------------------------------
// Name resolution
// ---------------------------------------------------------------------------

namespace detail {

inline std::string join_tokens(const std::vector<std::string>& toks, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += toks[i];
  }
  return out;
}

inline void strip_name_punct(std::string& s) {
  while (!s.empty() && (s.back() == '.' || s.back() == ',')) s.pop_back();
}

inline void strip_trailing_comma(std::string& s) {
  while (!s.empty() && s.back() == ',') s.pop_back();
}

// Fallback scorer for token sequences the shape rules do not cover. Scores
// every suffix boundary with per-token likelihoods derived from the word
// features and keeps the best; ties prefer the longer last-name suffix.
inline std::size_t probabilistic_boundary(const std::vector<std::string>& toks) {
  const std::size_t n = toks.size();
  auto log_first = [](const std::string& t) {
    if (initials_like(t)) return std::log(0.85);
    if (is_particle(t)) return std::log(0.05);
    if (!t.empty() && is_ascii_upper(t[0])) return std::log(0.30);
    return std::log(0.10);
  };
  auto log_last = [](const std::string& t) {
    if (initials_like(t)) return std::log(0.10);
    if (is_particle(t)) return std::log(0.60);
    if (!t.empty() && is_ascii_upper(t[0])) return std::log(0.75);
    return std::log(0.25);
  };
  std::size_t best = 0;
  double best_score = -1e30;
  for (std::size_t b = 0; b < n; ++b) {
    double score = 0.0;
    for (std::size_t i = 0; i < b; ++i) score += log_first(toks[i]);
    for (std::size_t i = b; i < n; ++i) score += log_last(toks[i]);
    if (score > best_score + 1e-12) {
      best_score = score;
      best = b;
    }
  }
  return best;
}

}  // namespace detail

// Resolves one name-token group into first/last parts. The shapes handled
// directly: "Last, First", initials-then-words, words-then-initials,
// words-initials-words ("Donald E. Knuth"), plain word runs with particles,
// and the single-word organization fallback. Everything else goes through the
// probabilistic boundary scorer.
inline AuthorName resolve_name(const NameGroup& group) {
  AuthorName name;
  std::vector<std::string> toks;
  int comma_at = -1;  // index into toks of the token preceding the bound comma
  for (const std::string& t : group.tokens) {
    if (t == ",") {
      if (comma_at < 0 && !toks.empty()) comma_at = static_cast<int>(toks.size()) - 1;
      continue;
    }
    toks.push_back(t);
  }
  if (toks.empty()) return name;

  if (comma_at >= 0 && comma_at + 1 < static_cast<int>(toks.size())) {
    // "Last, First" comma form.
    name.last = detail::join_tokens(toks, 0, static_cast<std::size_t>(comma_at) + 1);
    name.first = detail::join_tokens(toks, static_cast<std::size_t>(comma_at) + 1, toks.size());
  } else {
    const std::size_t n = toks.size();
    std::vector<bool> ini(n);
    std::size_t first_ini = n, last_ini = n;
    int segments = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ini[i] = detail::initials_like(toks[i]);
      if (ini[i] && first_ini == n) first_ini = i;
      if (ini[i]) last_ini = i;
      if (i == 0 || ini[i] != ini[i - 1]) ++segments;
    }

    if (first_ini == n) {
      // No initials: single token is a bare last name (organizations too);
      // otherwise the last name starts at the first particle or final token.
      if (n == 1) {
        name.last = toks[0];
      } else {
        std::size_t boundary = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
          if (detail::is_particle(toks[i])) { boundary = i; break; }
        }
        if (boundary == 0) boundary = 1;  // leading particle: keep last nonempty, first empty is fine
        name.first = detail::join_tokens(toks, 0, boundary);
        name.last = detail::join_tokens(toks, boundary, n);
        if (detail::is_particle(toks[0]) && boundary == 1) {
          // "ter Meulen" arriving without initials: whole run is the last name.
          name.first.clear();
          name.last = detail::join_tokens(toks, 0, n);
        }
      }
    } else if (segments <= 2 || (segments == 3 && !ini[0] && !ini[n - 1])) {
      if (!ini[n - 1]) {
        // ... I+ W+ or W+ I+ W+: last name is the run after the final initials.
        name.first = detail::join_tokens(toks, 0, last_ini + 1);
        name.last = detail::join_tokens(toks, last_ini + 1, n);
      } else if (first_ini > 0) {
        // W+ I+: reversed order without a comma.
        name.last = detail::join_tokens(toks, 0, first_ini);
        name.first = detail::join_tokens(toks, first_ini, n);
      } else {
        // All initials; degenerate, keep the final token as last.
        name.first = n > 1 ? detail::join_tokens(toks, 0, n - 1) : std::string();
        name.last = toks[n - 1];
      }
    } else {
      const std::size_t b = detail::probabilistic_boundary(toks);
      name.first = detail::join_tokens(toks, 0, b);
      name.last = detail::join_tokens(toks, b, n);
    }
  }

  detail::strip_name_punct(name.last);
  detail::strip_trailing_comma(name.first);
  if (name.last.empty() && !name.first.empty()) {
    name.last = name.first;
    name.first.clear();
    detail::strip_name_punct(name.last);
  }
  return name;
}

// Full author recognition for one entry: split, resolve, number.
struct AuthorsResult {
  std::vector<AuthorName> authors;
  bool et_al_truncated = false;
};

inline AuthorsResult split_authors(std::string_view author_text) {
  AuthorsResult out;
  const SplitAuthorsResult split = split_author_groups(author_text);
  out.et_al_truncated = split.et_al_truncated;
  for (const NameGroup& g : split.groups) {
    AuthorName name = resolve_name(g);
    if (name.last.empty()) continue;
    name.position = static_cast<int>(out.authors.size()) + 1;
    out.authors.push_back(std::move(name));
  }
  return out;
}

}  // namespace citekeys

#endif  // CITEKEYS_NAMES_HPP
