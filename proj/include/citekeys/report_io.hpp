// report_io.hpp - CorpusReport serialization and rendering
//
// The JSON form carries counts only (integers, strings, booleans) so reruns
// and merges are byte-identical; ratios appear in the text and CSV renders.
// Derived sections (consistency, dblp, top_terms) are deterministic functions
// of the counts and are rebuilt on every dump.

#pragma once
#ifndef CITEKEYS_REPORT_IO_HPP
#define CITEKEYS_REPORT_IO_HPP

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "citekeys/analytics.hpp"

namespace citekeys {

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline ordered_json report_to_json(const CorpusReport& report, const AnalyticsConfig& config) {
  ordered_json j;
  j["schema"] = "citekeys-report-1";

  j["totals"] = ordered_json{{"papers", report.totals.papers},
                             {"entries", report.totals.entries},
                             {"keys", report.totals.keys},
                             {"entries_with_authors", report.totals.entries_with_authors},
                             {"authors", report.totals.authors},
                             {"entries_with_year", report.totals.entries_with_year},
                             {"entries_with_title", report.totals.entries_with_title}};

  auto cond_to_json = [](const CondProbCounts& table) {
    ordered_json out = ordered_json::object();
    for (const auto& [j_authors, column] : table) {
      ordered_json col;
      col["den"] = column.den;
      ordered_json num = ordered_json::object();
      for (const auto& [i, count] : column.num_by_position) {
        num[std::to_string(i)] = count;
      }
      col["num"] = std::move(num);
      out[std::to_string(j_authors)] = std::move(col);
    }
    return out;
  };
  j["cond_prob"] = ordered_json{{"m1", cond_to_json(report.cond_prob_m1)},
                                {"m4", cond_to_json(report.cond_prob_m4)}};

  auto cells_to_json = [](const OrderingCells& c) {
    return ordered_json{{"alpha_match", c.alpha_match},
                        {"alpha_nomatch", c.alpha_nomatch},
                        {"nonalpha_match", c.nonalpha_match},
                        {"nonalpha_nomatch", c.nonalpha_nomatch}};
  };
  j["ordering"] = ordered_json{{"excluded", report.ordering.excluded},
                               {"acronym", cells_to_json(report.ordering.acronym)},
                               {"first_author", cells_to_json(report.ordering.first_author)}};

  ordered_json buckets = ordered_json::array();
  for (const TrendBucket& b : report.trend.buckets) {
    buckets.push_back(ordered_json{{"start", b.start},
                                   {"end", b.end},
                                   {"citations", b.citations},
                                   {"acronym_matches", b.acronym_matches},
                                   {"first_author_matches", b.first_author_matches}});
  }
  j["trend"] = ordered_json{{"buckets", std::move(buckets)},
                            {"excluded_no_year", report.trend.excluded_no_year},
                            {"excluded_out_of_range", report.trend.excluded_out_of_range}};

  const ConsistencyView consistency =
      consistency_report(report, config.strict_pmr, config.loose_pmr);
  auto line_to_json = [](const ConsistencyLine& line) {
    return ordered_json{
        {"papers", line.papers}, {"strict_num", line.strict_num}, {"loose_num", line.loose_num}};
  };
  j["consistency"] = ordered_json{{"acronym", line_to_json(consistency.acronym)},
                                  {"first_author", line_to_json(consistency.first_author)}};

  const DblpView dblp = dblp_stats(report);
  j["dblp"] = ordered_json{{"keys_total", dblp.keys_total},
                           {"keys_copied", dblp.keys_copied},
                           {"papers_total", dblp.papers_total},
                           {"papers_with_copies", dblp.papers_with_copies},
                           {"papers_majority_copied", dblp.papers_majority_copied},
                           {"copied_keys_with_year", dblp.copied_keys_with_year},
                           {"copied_keys_after_2000", dblp.copied_keys_after_2000},
                           {"papers_with_copies_with_era", dblp.papers_with_copies_with_era},
                           {"papers_with_copies_after_2000", dblp.papers_with_copies_after_2000}};

  ordered_json top = ordered_json::object();
  for (int n = config.ngram_min; n <= config.ngram_max; ++n) {
    ordered_json list = ordered_json::array();
    for (const TopTerm& t : top_terms(report, n, config)) {
      list.push_back(ordered_json{{"term", t.term},
                                  {"count", t.count},
                                  {"cluster", cluster_name(t.cluster)},
                                  {"title_count", t.title_count},
                                  {"author_count", t.author_count}});
    }
    top[std::to_string(n)] = std::move(list);
  }
  j["top_terms"] = std::move(top);

  ordered_json papers = ordered_json::array();
  for (const auto& [paper, stats] : report.per_paper) {
    papers.push_back(ordered_json{{"paper", paper},
                                  {"entries", stats.entries},
                                  {"keyed", stats.keyed},
                                  {"acronym_matched", stats.acronym_matched},
                                  {"first_author_matched", stats.first_author_matched},
                                  {"dblp_copied", stats.dblp_copied},
                                  {"dblp_copied_with_year", stats.dblp_copied_with_year},
                                  {"dblp_copied_after_2000", stats.dblp_copied_after_2000},
                                  {"max_year", stats.max_year}});
  }
  j["per_paper"] = std::move(papers);

  ordered_json grams = ordered_json::object();
  for (const auto& [n, terms] : report.ngrams) {
    ordered_json by_term = ordered_json::object();
    for (const auto& [term, ctx] : terms) {
      by_term[term] = ordered_json::array({ctx.key_count, ctx.title_count, ctx.author_count});
    }
    grams[std::to_string(n)] = std::move(by_term);
  }
  j["ngrams"] = std::move(grams);
  return j;
}

inline std::string report_to_json_text(const CorpusReport& report, const AnalyticsConfig& config) {
  return report_to_json(report, config).dump(2) + "\n";
}

inline CorpusReport report_from_json(const ordered_json& j) {
  CorpusReport report;
  const auto& totals = j.at("totals");
  report.totals.papers = totals.at("papers").get<long>();
  report.totals.entries = totals.at("entries").get<long>();
  report.totals.keys = totals.at("keys").get<long>();
  report.totals.entries_with_authors = totals.at("entries_with_authors").get<long>();
  report.totals.authors = totals.at("authors").get<long>();
  report.totals.entries_with_year = totals.at("entries_with_year").get<long>();
  report.totals.entries_with_title = totals.at("entries_with_title").get<long>();

  auto cond_from_json = [](const ordered_json& in, CondProbCounts& out) {
    for (auto it = in.begin(); it != in.end(); ++it) {
      CondProbColumn column;
      column.den = it.value().at("den").get<long>();
      const auto& num = it.value().at("num");
      for (auto nit = num.begin(); nit != num.end(); ++nit) {
        column.num_by_position[std::stoi(nit.key())] = nit.value().get<long>();
      }
      out[std::stoi(it.key())] = std::move(column);
    }
  };
  cond_from_json(j.at("cond_prob").at("m1"), report.cond_prob_m1);
  cond_from_json(j.at("cond_prob").at("m4"), report.cond_prob_m4);

  auto cells_from_json = [](const ordered_json& in, OrderingCells& out) {
    out.alpha_match = in.at("alpha_match").get<long>();
    out.alpha_nomatch = in.at("alpha_nomatch").get<long>();
    out.nonalpha_match = in.at("nonalpha_match").get<long>();
    out.nonalpha_nomatch = in.at("nonalpha_nomatch").get<long>();
  };
  report.ordering.excluded = j.at("ordering").at("excluded").get<long>();
  cells_from_json(j.at("ordering").at("acronym"), report.ordering.acronym);
  cells_from_json(j.at("ordering").at("first_author"), report.ordering.first_author);

  for (const auto& b : j.at("trend").at("buckets")) {
    TrendBucket bucket;
    bucket.start = b.at("start").get<int>();
    bucket.end = b.at("end").get<int>();
    bucket.citations = b.at("citations").get<long>();
    bucket.acronym_matches = b.at("acronym_matches").get<long>();
    bucket.first_author_matches = b.at("first_author_matches").get<long>();
    report.trend.buckets.push_back(bucket);
  }
  report.trend.excluded_no_year = j.at("trend").at("excluded_no_year").get<long>();
  report.trend.excluded_out_of_range = j.at("trend").at("excluded_out_of_range").get<long>();

  for (const auto& p : j.at("per_paper")) {
    PaperStats stats;
    stats.entries = p.at("entries").get<long>();
    stats.keyed = p.at("keyed").get<long>();
    stats.acronym_matched = p.at("acronym_matched").get<long>();
    stats.first_author_matched = p.at("first_author_matched").get<long>();
    stats.dblp_copied = p.at("dblp_copied").get<long>();
    stats.dblp_copied_with_year = p.at("dblp_copied_with_year").get<long>();
    stats.dblp_copied_after_2000 = p.at("dblp_copied_after_2000").get<long>();
    stats.max_year = p.at("max_year").get<int>();
    report.per_paper[p.at("paper").get<std::string>()] = stats;
  }

  const auto& grams = j.at("ngrams");
  for (auto it = grams.begin(); it != grams.end(); ++it) {
    auto& by_term = report.ngrams[std::stoi(it.key())];
    for (auto tit = it.value().begin(); tit != it.value().end(); ++tit) {
      TermContext ctx;
      ctx.key_count = tit.value().at(0).get<long>();
      ctx.title_count = tit.value().at(1).get<long>();
      ctx.author_count = tit.value().at(2).get<long>();
      by_term[tit.key()] = ctx;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Human-readable tables
// ---------------------------------------------------------------------------

namespace detail {

inline std::string ratio(long num, long den, int width = 6) {
  char buf[64];
  if (den == 0) {
    std::snprintf(buf, sizeof(buf), "%*s", width, "-");
  } else {
    std::snprintf(buf, sizeof(buf), "%*.4f", width, static_cast<double>(num) / den);
  }
  return buf;
}

}  // namespace detail

inline std::string render_text_report(const CorpusReport& report, const AnalyticsConfig& config) {
  std::ostringstream out;
  char line[256];

  const Totals& t = report.totals;
  out << "== Corpus totals ==\n";
  std::snprintf(line, sizeof(line),
                "papers %ld | entries %ld | keys %ld | authors %ld | with-year %ld | with-title %ld\n\n",
                t.papers, t.entries, t.keys, t.authors, t.entries_with_year, t.entries_with_title);
  out << line;

  auto render_cond = [&](const char* label, const CondProbCounts& table) {
    out << "== Pr[key matches author i | j authors], " << label << " ==\n";
    out << "  j    den";
    int max_j = 0;
    for (const auto& [j_authors, col] : table) {
      (void)col;
      max_j = std::max(max_j, j_authors);
    }
    for (int i = 1; i <= max_j; ++i) {
      std::snprintf(line, sizeof(line), "    i=%-2d", i);
      out << line;
    }
    out << "\n";
    for (const auto& [j_authors, col] : table) {
      std::snprintf(line, sizeof(line), "%3d %6ld", j_authors, col.den);
      out << line;
      for (int i = 1; i <= j_authors; ++i) {
        const auto it = col.num_by_position.find(i);
        out << "  " << detail::ratio(it == col.num_by_position.end() ? 0 : it->second, col.den);
      }
      out << "\n";
    }
    out << "\n";
  };
  render_cond("exact (M1)", report.cond_prob_m1);
  render_cond("asymmetric (M4)", report.cond_prob_m4);

  auto render_cells = [&](const char* label, const OrderingCells& c) {
    const long total = c.total();
    out << "== Author ordering vs " << label << " (>= 2 authors) ==\n";
    std::snprintf(line, sizeof(line), "                 match=true   match=false\n");
    out << line;
    std::snprintf(line, sizeof(line), "alphabetical     %s (%ld)   %s (%ld)\n",
                  detail::ratio(c.alpha_match, total).c_str(), c.alpha_match,
                  detail::ratio(c.alpha_nomatch, total).c_str(), c.alpha_nomatch);
    out << line;
    std::snprintf(line, sizeof(line), "non-alphabetical %s (%ld)   %s (%ld)\n\n",
                  detail::ratio(c.nonalpha_match, total).c_str(), c.nonalpha_match,
                  detail::ratio(c.nonalpha_nomatch, total).c_str(), c.nonalpha_nomatch);
    out << line;
  };
  render_cells("acronym match", report.ordering.acronym);
  render_cells("first-author match", report.ordering.first_author);
  std::snprintf(line, sizeof(line), "excluded (fewer than 2 recognized authors): %ld\n\n",
                report.ordering.excluded);
  out << line;

  out << "== Labeling pattern over time ==\n";
  out << "bucket        citations   acronym   first-author\n";
  for (const TrendBucket& b : report.trend.buckets) {
    std::snprintf(line, sizeof(line), "[%d, %d)  %9ld    %s       %s\n", b.start, b.end,
                  b.citations, detail::ratio(b.acronym_matches, b.citations).c_str(),
                  detail::ratio(b.first_author_matches, b.citations).c_str());
    out << line;
  }
  std::snprintf(line, sizeof(line), "no year: %ld, out of range: %ld\n\n",
                report.trend.excluded_no_year, report.trend.excluded_out_of_range);
  out << line;

  const ConsistencyView consistency =
      consistency_report(report, config.strict_pmr, config.loose_pmr);
  out << "== Consistency (pattern matching ratio per paper) ==\n";
  std::snprintf(line, sizeof(line), "acronym      : pmr>=%.2f %s   pmr>=%.2f %s   (papers %ld)\n",
                config.strict_pmr,
                detail::ratio(consistency.acronym.strict_num, consistency.acronym.papers).c_str(),
                config.loose_pmr,
                detail::ratio(consistency.acronym.loose_num, consistency.acronym.papers).c_str(),
                consistency.acronym.papers);
  out << line;
  std::snprintf(line, sizeof(line), "first author : pmr>=%.2f %s   pmr>=%.2f %s   (papers %ld)\n\n",
                config.strict_pmr,
                detail::ratio(consistency.first_author.strict_num, consistency.first_author.papers).c_str(),
                config.loose_pmr,
                detail::ratio(consistency.first_author.loose_num, consistency.first_author.papers).c_str(),
                consistency.first_author.papers);
  out << line;

  const DblpView dblp = dblp_stats(report);
  out << "== DBLP copies ==\n";
  std::snprintf(line, sizeof(line), "copied keys: %ld / %ld (%s)\n", dblp.keys_copied,
                dblp.keys_total, detail::ratio(dblp.keys_copied, dblp.keys_total).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "papers with copies: %ld / %ld, majority copied: %ld\n",
                dblp.papers_with_copies, dblp.papers_total, dblp.papers_majority_copied);
  out << line;
  std::snprintf(line, sizeof(line), "copied keys after 2000: %ld / %ld; papers after 2000: %ld / %ld\n\n",
                dblp.copied_keys_after_2000, dblp.copied_keys_with_year,
                dblp.papers_with_copies_after_2000, dblp.papers_with_copies_with_era);
  out << line;

  out << "== Top key n-grams ==\n";
  for (int n = config.ngram_min; n <= config.ngram_max; ++n) {
    const auto terms = top_terms(report, n, config);
    if (terms.empty()) continue;
    std::snprintf(line, sizeof(line), "n=%d:", n);
    out << line;
    for (const TopTerm& term : terms) {
      std::snprintf(line, sizeof(line), " %s(%ld,%s)", term.term.c_str(), term.count,
                    cluster_name(term.cluster));
      out << line;
    }
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// CSV export (one table per call; callers write one file per table)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string csv_escape(const std::string& s) {
  bool needs_quote = false;
  for (char c : s) {
    if (c == ',' || c == '"' || c == '\n') { needs_quote = true; break; }
  }
  if (!needs_quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace detail

inline std::string cond_prob_csv(const CondProbCounts& table) {
  std::ostringstream out;
  out << "authors,position,num,den\n";
  for (const auto& [j_authors, col] : table) {
    for (int i = 1; i <= j_authors; ++i) {
      const auto it = col.num_by_position.find(i);
      out << j_authors << "," << i << "," << (it == col.num_by_position.end() ? 0 : it->second)
          << "," << col.den << "\n";
    }
  }
  return out.str();
}

inline std::string ordering_csv(const OrderingTable& table) {
  std::ostringstream out;
  out << "split,cell,count\n";
  auto write = [&out](const char* split, const OrderingCells& c) {
    out << split << ",alpha_match," << c.alpha_match << "\n";
    out << split << ",alpha_nomatch," << c.alpha_nomatch << "\n";
    out << split << ",nonalpha_match," << c.nonalpha_match << "\n";
    out << split << ",nonalpha_nomatch," << c.nonalpha_nomatch << "\n";
  };
  write("acronym", table.acronym);
  write("first_author", table.first_author);
  out << "excluded,," << table.excluded << "\n";
  return out.str();
}

inline std::string trend_csv(const TrendTable& table) {
  std::ostringstream out;
  out << "start,end,citations,acronym_matches,first_author_matches\n";
  for (const TrendBucket& b : table.buckets) {
    out << b.start << "," << b.end << "," << b.citations << "," << b.acronym_matches << ","
        << b.first_author_matches << "\n";
  }
  return out.str();
}

inline std::string per_paper_csv(const CorpusReport& report) {
  std::ostringstream out;
  out << "paper,entries,keyed,acronym_matched,first_author_matched,dblp_copied,max_year\n";
  for (const auto& [paper, s] : report.per_paper) {
    out << detail::csv_escape(paper) << "," << s.entries << "," << s.keyed << ","
        << s.acronym_matched << "," << s.first_author_matched << "," << s.dblp_copied << ","
        << s.max_year << "\n";
  }
  return out.str();
}

inline std::string top_terms_csv(const CorpusReport& report, const AnalyticsConfig& config) {
  std::ostringstream out;
  out << "n,rank,term,count,cluster,title_count,author_count\n";
  for (int n = config.ngram_min; n <= config.ngram_max; ++n) {
    int rank = 0;
    for (const TopTerm& t : top_terms(report, n, config)) {
      out << n << "," << ++rank << "," << detail::csv_escape(t.term) << "," << t.count << ","
          << cluster_name(t.cluster) << "," << t.title_count << "," << t.author_count << "\n";
    }
  }
  return out.str();
}

}  // namespace citekeys

#endif  // CITEKEYS_REPORT_IO_HPP
