// match_names.cpp - score one citation key against a list of last names
//
//   ./match_names cormode05 Cormode Muthukrishnan Yan

#include <cstdio>
#include <string>
#include <vector>

#include "citekeys/acronym.hpp"
#include "citekeys/similarity.hpp"
#include "citekeys/text.hpp"

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <citation-key> <last-name>...\n", argv[0]);
    return 1;
  }
  const std::string key = citekeys::normalize_for_match(argv[1]);
  std::vector<std::string> names;
  for (int i = 2; i < argc; ++i) names.emplace_back(argv[i]);

  for (const std::string& name : names) {
    const std::string s_a = citekeys::normalize_for_match(name);
    const citekeys::MetricScores scores = citekeys::score_metrics(s_a, key);
    std::printf("%-20s M1=%d M2=%.3f M3=%.3f M4=%.3f M5=%.3f\n", name.c_str(), scores.m1 ? 1 : 0,
                scores.m2, scores.m3, scores.m4, scores.m5);
  }

  const citekeys::AcronymVerdict verdict = citekeys::is_acronym(argv[1], names);
  std::printf("acronym: %s (score %.2f, threshold %.2f)\n", verdict.is_acronym ? "yes" : "no",
              verdict.score, verdict.threshold);
  return 0;
}
