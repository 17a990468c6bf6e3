// analytics.hpp - corpus-level aggregation of per-entry match results
//
// Every table is stored as raw counts so that reports from disjoint
// sub-corpora merge by addition (papers are atomic: a paper's entries never
// split across partitions). Ratios and top-k lists are derived views,
// recomputed whenever a report is rendered or merged.

#pragma once
#ifndef CITEKEYS_ANALYTICS_HPP
#define CITEKEYS_ANALYTICS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citekeys/acronym.hpp"
#include "citekeys/errors.hpp"
#include "citekeys/records.hpp"
#include "citekeys/similarity.hpp"
#include "citekeys/text.hpp"

namespace citekeys {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct AnalyticsConfig {
  MetricConfig metric;
  AcronymParams acronym;
  int ngram_min = 2;
  int ngram_max = 10;
  int top_k = 20;
  std::vector<int> decade_boundaries = {1990, 2000, 2010};
  double strict_pmr = 1.0;
  double loose_pmr = 0.9;
  double affinity_margin = 0.2;
  bool dblp_substring_mode = false;  // substring "dblp" instead of the "DBLP:" prefix
  std::vector<std::string> type_lexicon = {
      "thesis", "phdthesis", "mastersthesis", "book",      "survey", "article",
      "report", "techreport", "proceedings",  "conference", "journal", "manual",
      "note",   "misc",       "tutorial",     "standard",   "patent",
  };
};

// ---------------------------------------------------------------------------
// Per-entry match analysis
// ---------------------------------------------------------------------------

struct EntryAnalysis {
  int author_count = 0;
  std::vector<bool> m1;  // per position
  std::vector<bool> m4;
  bool acronym = false;
  bool first_author = false;  // M1 at position 1
  bool alphabetical = false;
  bool dblp_copied = false;
};

// Matching form of a last name: accents folded, lowercased, spaces removed.
inline std::string matchable_last_name(std::string_view last) {
  std::string s = normalize_for_match(last);
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (!is_ascii_space(c)) out.push_back(c);
  }
  return out;
}

// True iff normalized last names are non-strictly non-decreasing; a single
// author counts as alphabetical.
inline bool is_alphabetical(const std::vector<AuthorName>& authors) {
  for (std::size_t i = 1; i < authors.size(); ++i) {
    if (matchable_last_name(authors[i - 1].last) > matchable_last_name(authors[i].last)) {
      return false;
    }
  }
  return true;
}

inline bool is_dblp_copied(std::string_view key, bool substring_mode) {
  if (substring_mode) return to_lower(key).find("dblp") != std::string::npos;
  return starts_with_ci(key, "DBLP:");
}

inline EntryAnalysis analyze_entry(const BibMetaRecord& record, const AnalyticsConfig& config) {
  EntryAnalysis a;
  a.author_count = static_cast<int>(record.authors.size());
  if (!record.has_key) return a;

  const std::string key = normalize_for_match(record.citation_key);
  std::vector<std::string> last_names;
  for (const AuthorName& author : record.authors) {
    last_names.push_back(fold_accents(author.last));
    const std::string s_a = matchable_last_name(author.last);
    bool m1 = false, m4 = false;
    if (!s_a.empty() && !key.empty()) {
      const MetricScores scores = score_metrics(s_a, key, config.metric);
      m1 = scores.m1;
      m4 = scores.m4_match;
    }
    a.m1.push_back(m1);
    a.m4.push_back(m4);
  }
  a.first_author = !a.m1.empty() && a.m1.front();
  if (!last_names.empty()) {
    a.acronym = is_acronym(fold_accents(record.citation_key), last_names, config.acronym).is_acronym;
  }
  a.alphabetical = is_alphabetical(record.authors);
  a.dblp_copied = is_dblp_copied(record.citation_key, config.dblp_substring_mode);
  return a;
}

// ---------------------------------------------------------------------------
// Report structure (counts only)
// ---------------------------------------------------------------------------

struct CondProbColumn {
  long den = 0;                       // papers with exactly j authors
  std::map<int, long> num_by_position;  // position i -> matches
};

using CondProbCounts = std::map<int, CondProbColumn>;  // author count j -> column

struct OrderingCells {
  long alpha_match = 0;
  long alpha_nomatch = 0;
  long nonalpha_match = 0;
  long nonalpha_nomatch = 0;

  long total() const { return alpha_match + alpha_nomatch + nonalpha_match + nonalpha_nomatch; }
};

struct OrderingTable {
  OrderingCells acronym;
  OrderingCells first_author;
  long excluded = 0;  // keyed entries with fewer than 2 recognized authors
};

struct TrendBucket {
  int start = 0;
  int end = 0;  // half-open [start, end)
  long citations = 0;
  long acronym_matches = 0;
  long first_author_matches = 0;
};

struct TrendTable {
  std::vector<TrendBucket> buckets;
  long excluded_no_year = 0;
  long excluded_out_of_range = 0;
};

struct PaperStats {
  long entries = 0;
  long keyed = 0;
  long acronym_matched = 0;
  long first_author_matched = 0;
  long dblp_copied = 0;
  long dblp_copied_with_year = 0;   // copied entries carrying an extracted year
  long dblp_copied_after_2000 = 0;  // ... with that year strictly past 2000
  int max_year = 0;                 // 0 = no extracted year in this paper
};

struct Totals {
  long papers = 0;  // derived: number of per-paper rows
  long entries = 0;
  long keys = 0;
  long entries_with_authors = 0;
  long authors = 0;
  long entries_with_year = 0;
  long entries_with_title = 0;
};

struct TermContext {
  long key_count = 0;      // occurrences across citation keys
  long title_count = 0;    // occurrences across extracted titles
  long author_count = 0;   // occurrences across author name strings
};

struct CorpusReport {
  Totals totals;
  CondProbCounts cond_prob_m1;
  CondProbCounts cond_prob_m4;
  OrderingTable ordering;
  TrendTable trend;
  std::map<std::string, PaperStats> per_paper;
  std::map<int, std::map<std::string, TermContext>> ngrams;  // n -> term -> counts
};

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

namespace detail {

inline void make_trend_buckets(TrendTable& trend, const std::vector<int>& boundaries) {
  trend.buckets.clear();
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
    TrendBucket bucket;
    bucket.start = boundaries[i];
    bucket.end = boundaries[i + 1];
    trend.buckets.push_back(bucket);
  }
}

inline void count_grams(std::string_view text, int n_min, int n_max,
                        std::map<int, std::map<std::string, TermContext>>& ngrams,
                        long TermContext::* member) {
  for (int n = n_min; n <= n_max; ++n) {
    if (static_cast<std::size_t>(n) > text.size()) break;
    auto& terms = ngrams[n];
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= text.size(); ++i) {
      terms[std::string(text.substr(i, static_cast<std::size_t>(n)))].*member += 1;
    }
  }
}

}  // namespace detail

// Aggregates records (any order) into a report. Order independence: every
// contribution is a count increment into a keyed map.
inline CorpusReport build_report(const std::vector<BibMetaRecord>& records,
                                 const AnalyticsConfig& config) {
  CorpusReport report;
  detail::make_trend_buckets(report.trend, config.decade_boundaries);

  for (const BibMetaRecord& record : records) {
    PaperStats& paper = report.per_paper[record.paper_id];
    ++paper.entries;
    ++report.totals.entries;
    if (record.year) {
      ++report.totals.entries_with_year;
      paper.max_year = std::max(paper.max_year, *record.year);
    }
    if (record.title) ++report.totals.entries_with_title;
    if (!record.authors.empty()) {
      ++report.totals.entries_with_authors;
      report.totals.authors += static_cast<long>(record.authors.size());
    }

    // Affinity context: titles and author names feed the term-context maps
    // regardless of whether this entry has a key.
    if (record.title) {
      detail::count_grams(normalize_for_match(*record.title), config.ngram_min, config.ngram_max,
                          report.ngrams, &TermContext::title_count);
    }
    for (const AuthorName& author : record.authors) {
      std::string name = author.first.empty() ? author.last : author.first + " " + author.last;
      detail::count_grams(normalize_for_match(name), config.ngram_min, config.ngram_max,
                          report.ngrams, &TermContext::author_count);
    }

    if (!record.has_key) continue;
    ++report.totals.keys;
    ++paper.keyed;

    const EntryAnalysis analysis = analyze_entry(record, config);
    detail::count_grams(to_lower(record.citation_key), config.ngram_min, config.ngram_max,
                        report.ngrams, &TermContext::key_count);

    if (analysis.acronym) ++paper.acronym_matched;
    if (analysis.first_author) ++paper.first_author_matched;
    if (analysis.dblp_copied) {
      ++paper.dblp_copied;
      if (record.year) {
        ++paper.dblp_copied_with_year;
        if (*record.year > 2000) ++paper.dblp_copied_after_2000;
      }
    }

    if (analysis.author_count > 0) {
      CondProbColumn& col_m1 = report.cond_prob_m1[analysis.author_count];
      CondProbColumn& col_m4 = report.cond_prob_m4[analysis.author_count];
      ++col_m1.den;
      ++col_m4.den;
      for (int i = 0; i < analysis.author_count; ++i) {
        if (analysis.m1[i]) ++col_m1.num_by_position[i + 1];
        if (analysis.m4[i]) ++col_m4.num_by_position[i + 1];
      }
    }

    if (analysis.author_count >= 2) {
      OrderingCells& ac = report.ordering.acronym;
      OrderingCells& fa = report.ordering.first_author;
      if (analysis.alphabetical) {
        (analysis.acronym ? ac.alpha_match : ac.alpha_nomatch) += 1;
        (analysis.first_author ? fa.alpha_match : fa.alpha_nomatch) += 1;
      } else {
        (analysis.acronym ? ac.nonalpha_match : ac.nonalpha_nomatch) += 1;
        (analysis.first_author ? fa.nonalpha_match : fa.nonalpha_nomatch) += 1;
      }
    } else {
      ++report.ordering.excluded;
    }

    if (!record.year) {
      ++report.trend.excluded_no_year;
    } else {
      bool bucketed = false;
      for (TrendBucket& bucket : report.trend.buckets) {
        if (*record.year >= bucket.start && *record.year < bucket.end) {
          ++bucket.citations;
          if (analysis.acronym) ++bucket.acronym_matches;
          if (analysis.first_author) ++bucket.first_author_matches;
          bucketed = true;
          break;
        }
      }
      if (!bucketed) ++report.trend.excluded_out_of_range;
    }
  }

  report.totals.papers = static_cast<long>(report.per_paper.size());
  return report;
}

// Count-wise merge of reports over disjoint sub-corpora; associative and
// commutative. Trend bucket layouts must agree.
inline CorpusReport merge_reports(const CorpusReport& a, const CorpusReport& b) {
  CorpusReport out = a;
  out.totals.entries += b.totals.entries;
  out.totals.keys += b.totals.keys;
  out.totals.entries_with_authors += b.totals.entries_with_authors;
  out.totals.authors += b.totals.authors;
  out.totals.entries_with_year += b.totals.entries_with_year;
  out.totals.entries_with_title += b.totals.entries_with_title;

  auto merge_cond = [](CondProbCounts& into, const CondProbCounts& from) {
    for (const auto& [j, col] : from) {
      CondProbColumn& target = into[j];
      target.den += col.den;
      for (const auto& [i, num] : col.num_by_position) target.num_by_position[i] += num;
    }
  };
  merge_cond(out.cond_prob_m1, b.cond_prob_m1);
  merge_cond(out.cond_prob_m4, b.cond_prob_m4);

  auto merge_cells = [](OrderingCells& into, const OrderingCells& from) {
    into.alpha_match += from.alpha_match;
    into.alpha_nomatch += from.alpha_nomatch;
    into.nonalpha_match += from.nonalpha_match;
    into.nonalpha_nomatch += from.nonalpha_nomatch;
  };
  merge_cells(out.ordering.acronym, b.ordering.acronym);
  merge_cells(out.ordering.first_author, b.ordering.first_author);
  out.ordering.excluded += b.ordering.excluded;

  if (out.trend.buckets.size() != b.trend.buckets.size()) {
    throw Error("cannot merge reports with different trend buckets");
  }
  for (std::size_t i = 0; i < out.trend.buckets.size(); ++i) {
    TrendBucket& into = out.trend.buckets[i];
    const TrendBucket& from = b.trend.buckets[i];
    if (into.start != from.start || into.end != from.end) {
      throw Error("cannot merge reports with different trend buckets");
    }
    into.citations += from.citations;
    into.acronym_matches += from.acronym_matches;
    into.first_author_matches += from.first_author_matches;
  }
  out.trend.excluded_no_year += b.trend.excluded_no_year;
  out.trend.excluded_out_of_range += b.trend.excluded_out_of_range;

  for (const auto& [paper, stats] : b.per_paper) {
    PaperStats& target = out.per_paper[paper];
    target.entries += stats.entries;
    target.keyed += stats.keyed;
    target.acronym_matched += stats.acronym_matched;
    target.first_author_matched += stats.first_author_matched;
    target.dblp_copied += stats.dblp_copied;
    target.dblp_copied_with_year += stats.dblp_copied_with_year;
    target.dblp_copied_after_2000 += stats.dblp_copied_after_2000;
    target.max_year = std::max(target.max_year, stats.max_year);
  }
  out.totals.papers = static_cast<long>(out.per_paper.size());

  for (const auto& [n, terms] : b.ngrams) {
    auto& target = out.ngrams[n];
    for (const auto& [term, ctx] : terms) {
      TermContext& t = target[term];
      t.key_count += ctx.key_count;
      t.title_count += ctx.title_count;
      t.author_count += ctx.author_count;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived views (ratios, pmr, clusters); all deterministic functions of the
// stored counts
// ---------------------------------------------------------------------------

// Pattern matching ratio for one paper: matched / keyed citations.
inline double pmr(long matched, long keyed_citations) {
  if (keyed_citations <= 0) throw NoCitations("paper has no keyed citations");
  return static_cast<double>(matched) / static_cast<double>(keyed_citations);
}

struct ConsistencyLine {
  long papers = 0;      // papers with at least one keyed citation
  long strict_num = 0;  // pmr >= strict threshold
  long loose_num = 0;   // pmr >= loose threshold
};

struct ConsistencyView {
  ConsistencyLine acronym;
  ConsistencyLine first_author;
};

inline ConsistencyView consistency_report(const CorpusReport& report,
                                          double strict = 1.0, double loose = 0.9) {
  ConsistencyView view;
  for (const auto& [paper, stats] : report.per_paper) {
    (void)paper;
    if (stats.keyed == 0) continue;  // NoCitations: excluded
    const double acronym_pmr = pmr(stats.acronym_matched, stats.keyed);
    const double first_pmr = pmr(stats.first_author_matched, stats.keyed);
    ++view.acronym.papers;
    ++view.first_author.papers;
    if (acronym_pmr >= strict) ++view.acronym.strict_num;
    if (acronym_pmr >= loose) ++view.acronym.loose_num;
    if (first_pmr >= strict) ++view.first_author.strict_num;
    if (first_pmr >= loose) ++view.first_author.loose_num;
  }
  return view;
}

struct DblpView {
  long keys_total = 0;
  long keys_copied = 0;
  long papers_total = 0;          // papers with at least one keyed citation
  long papers_with_copies = 0;
  long papers_majority_copied = 0;  // more than half of keyed citations copied
  long copied_keys_with_year = 0;   // copied entries with an extracted year
  long copied_keys_after_2000 = 0;  // cited work later than 2000
  long papers_with_copies_with_era = 0;
  long papers_with_copies_after_2000 = 0;
};

// The key-level era split uses the cited entry's own year; the paper-level
// split falls back to the latest year seen in the paper as an era proxy.
inline DblpView dblp_stats(const CorpusReport& report) {
  DblpView view;
  view.keys_total = report.totals.keys;
  for (const auto& [paper, stats] : report.per_paper) {
    (void)paper;
    view.keys_copied += stats.dblp_copied;
    view.copied_keys_with_year += stats.dblp_copied_with_year;
    view.copied_keys_after_2000 += stats.dblp_copied_after_2000;
    if (stats.keyed == 0) continue;
    ++view.papers_total;
    if (stats.dblp_copied > 0) {
      ++view.papers_with_copies;
      if (2 * stats.dblp_copied > stats.keyed) ++view.papers_majority_copied;
      if (stats.max_year > 0) {
        ++view.papers_with_copies_with_era;
        if (stats.max_year > 2000) ++view.papers_with_copies_after_2000;
      }
    }
  }
  return view;
}

enum class MeaningCluster { title_words, author_names, type_and_sources, year_and_phrase, unassigned };

inline const char* cluster_name(MeaningCluster c) {
  switch (c) {
    case MeaningCluster::title_words: return "title_words";
    case MeaningCluster::author_names: return "author_names";
    case MeaningCluster::type_and_sources: return "type_and_sources";
    case MeaningCluster::year_and_phrase: return "year_and_phrase";
    default: return "unassigned";
  }
}

struct Affinity {
  long title_count = 0;
  long author_count = 0;

  long total() const { return title_count + author_count; }
  double to_title() const { return total() > 0 ? static_cast<double>(title_count) / total() : 0.0; }
  double to_author() const { return total() > 0 ? static_cast<double>(author_count) / total() : 0.0; }
};

// Affinity of a term: occurrences in titles vs author names, each over the
// total occurrences across both contexts. Throws TermUnseen when the term
// occurs in neither.
inline Affinity affinity(const CorpusReport& report, std::string_view term) {
  Affinity a;
  const int n = static_cast<int>(term.size());
  const auto by_n = report.ngrams.find(n);
  if (by_n != report.ngrams.end()) {
    const auto it = by_n->second.find(std::string(term));
    if (it != by_n->second.end()) {
      a.title_count = it->second.title_count;
      a.author_count = it->second.author_count;
    }
  }
  if (a.total() == 0) throw TermUnseen("term never occurs in titles or author names: " + std::string(term));
  return a;
}

namespace detail {

inline bool all_digits_term(std::string_view term) {
  if (term.empty()) return false;
  for (char c : term) {
    if (!is_ascii_digit(c)) return false;
  }
  return true;
}

}  // namespace detail

// Deterministic cluster assignment:
//   1. digit terms and fragments of "et al" -> year_and_phrase
//   2. terms covered by the type/source lexicon (length >= 3) -> type_and_sources
//   3. otherwise the larger affinity wins when its margin is >= affinity_margin
//   4. everything else (including unseen terms) -> unassigned
inline MeaningCluster assign_cluster(const CorpusReport& report, std::string_view term,
                                     const AnalyticsConfig& config) {
  if (detail::all_digits_term(term) ||
      (term.size() >= 2 && std::string_view("etal").find(term) != std::string_view::npos)) {
    return MeaningCluster::year_and_phrase;
  }
  if (term.size() >= 3) {
    for (const std::string& word : config.type_lexicon) {
      if (word.find(term) != std::string::npos) return MeaningCluster::type_and_sources;
    }
  }
  Affinity a;
  try {
    a = affinity(report, term);
  } catch (const TermUnseen&) {
    return MeaningCluster::unassigned;
  }
  const double diff = a.to_title() - a.to_author();
  if (diff >= config.affinity_margin) return MeaningCluster::title_words;
  if (-diff >= config.affinity_margin) return MeaningCluster::author_names;
  return MeaningCluster::unassigned;
}

struct TopTerm {
  std::string term;
  long count = 0;  // occurrences across citation keys
  MeaningCluster cluster = MeaningCluster::unassigned;
  long title_count = 0;
  long author_count = 0;
};

// Top-k key n-grams for one n, by count descending then term ascending.
inline std::vector<TopTerm> top_terms(const CorpusReport& report, int n,
                                      const AnalyticsConfig& config) {
  std::vector<TopTerm> out;
  const auto by_n = report.ngrams.find(n);
  if (by_n == report.ngrams.end()) return out;
  for (const auto& [term, ctx] : by_n->second) {
    if (ctx.key_count == 0) continue;  // term only seen in titles/names
    TopTerm t;
    t.term = term;
    t.count = ctx.key_count;
    t.title_count = ctx.title_count;
    t.author_count = ctx.author_count;
    t.cluster = assign_cluster(report, term, config);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const TopTerm& a, const TopTerm& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.term < b.term;
  });
  if (out.size() > static_cast<std::size_t>(config.top_k)) out.resize(config.top_k);
  return out;
}

}  // namespace citekeys

#endif  // CITEKEYS_ANALYTICS_HPP
