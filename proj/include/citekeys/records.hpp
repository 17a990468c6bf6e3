// records.hpp - the per-entry record emitted by extraction and consumed by
// the analytics stage (newline-delimited JSON with a stable field order)

#pragma once
#ifndef CITEKEYS_RECORDS_HPP
#define CITEKEYS_RECORDS_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "citekeys/names.hpp"

namespace citekeys {

using ordered_json = nlohmann::ordered_json;

struct BibMetaRecord {
  std::string paper_id;  // path relative to the corpus root
  int bibliography_index = 0;
  int ordinal = 0;
  bool has_key = false;
  std::string citation_key;  // empty when has_key is false
  std::optional<std::string> explicit_key;
  std::optional<int> year;
  std::optional<std::string> author_text;
  std::string extraction_method = "none";  // pattern | classifier | none
  std::string pattern_id;                  // which pattern fired, for diagnostics
  std::vector<AuthorName> authors;
  std::optional<std::string> title;
  bool et_al_truncated = false;
};

inline ordered_json record_to_json(const BibMetaRecord& r) {
  ordered_json j;
  j["paper"] = r.paper_id;
  j["bib"] = r.bibliography_index;
  j["ordinal"] = r.ordinal;
  j["key"] = r.has_key ? ordered_json(r.citation_key) : ordered_json(nullptr);
  j["explicit_key"] = r.explicit_key ? ordered_json(*r.explicit_key) : ordered_json(nullptr);
  j["year"] = r.year ? ordered_json(*r.year) : ordered_json(nullptr);
  j["author_text"] = r.author_text ? ordered_json(*r.author_text) : ordered_json(nullptr);
  j["method"] = r.extraction_method;
  j["pattern"] = r.pattern_id;
  ordered_json authors = ordered_json::array();
  for (const AuthorName& a : r.authors) {
    authors.push_back(ordered_json{{"first", a.first}, {"last", a.last}});
  }
  j["authors"] = std::move(authors);
  j["title"] = r.title ? ordered_json(*r.title) : ordered_json(nullptr);
  j["et_al"] = r.et_al_truncated;
  return j;
}

inline BibMetaRecord record_from_json(const ordered_json& j) {
  BibMetaRecord r;
  r.paper_id = j.at("paper").get<std::string>();
  r.bibliography_index = j.at("bib").get<int>();
  r.ordinal = j.at("ordinal").get<int>();
  if (!j.at("key").is_null()) {
    r.has_key = true;
    r.citation_key = j.at("key").get<std::string>();
  }
  if (!j.at("explicit_key").is_null()) r.explicit_key = j.at("explicit_key").get<std::string>();
  if (!j.at("year").is_null()) r.year = j.at("year").get<int>();
  if (!j.at("author_text").is_null()) r.author_text = j.at("author_text").get<std::string>();
  r.extraction_method = j.at("method").get<std::string>();
  r.pattern_id = j.at("pattern").get<std::string>();
  int position = 0;
  for (const auto& a : j.at("authors")) {
    AuthorName name;
    name.first = a.at("first").get<std::string>();
    name.last = a.at("last").get<std::string>();
    name.position = ++position;
    r.authors.push_back(std::move(name));
  }
  if (!j.at("title").is_null()) r.title = j.at("title").get<std::string>();
  r.et_al_truncated = j.at("et_al").get<bool>();
  return r;
}

}  // namespace citekeys

#endif  // CITEKEYS_RECORDS_HPP
