// parse_bbl.cpp - dump the entries of one .tex/.bbl file as text
//
//   ./parse_bbl references.bbl

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "citekeys/latex.hpp"
#include "citekeys/meta.hpp"
#include "citekeys/names.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <file.tex|file.bbl>\n", argv[0]);
    return 1;
  }
  std::ifstream in(argv[1], std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "cannot read %s\n", argv[1]);
    return 1;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  citekeys::SourceDocument doc{argv[1], citekeys::strip_comments(buffer.str()),
                               citekeys::SourceKind::bbl};
  const citekeys::YearWindow window = citekeys::YearWindow::practical();
  for (const std::string& block : citekeys::find_bibliographies(doc)) {
    for (const std::string& entry : citekeys::split_bib_entries(block).entries) {
      std::string key = "?";
      std::string_view body = entry;
      try {
        const citekeys::ExtractedKey extracted = citekeys::extract_citation_key(entry);
        key = extracted.citation_key;
        body = body.substr(extracted.body_begin);
      } catch (const citekeys::MissingKey&) {
      }
      const auto year = citekeys::extract_year(body, key, window);
      std::printf("%-24s year=%s", key.c_str(), year ? std::to_string(*year).c_str() : "-");
      if (const auto hit = citekeys::extract_author_text_by_pattern(body)) {
        std::printf("  [%s]", hit->pattern_id.c_str());
        for (const auto& author : citekeys::split_authors(hit->text).authors) {
          std::printf(" %s|%s", author.first.c_str(), author.last.c_str());
        }
      }
      std::printf("\n");
    }
  }
  return 0;
}
