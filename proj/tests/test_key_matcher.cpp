// Similarity metric and acronym matcher tests, including the brute-force
// oracles for both.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "citekeys/acronym.hpp"
#include "citekeys/similarity.hpp"

using namespace citekeys;

namespace {

// Independent metric evaluation: substring scan for M1/M2, set arithmetic
// straight from the formulas for M3..M5.
struct BruteMetrics {
  bool m1;
  double m2, m3, m4, m5;
};

BruteMetrics brute_metrics(const std::string& s_a, const std::string& s_c, double w) {
  BruteMetrics out{};
  out.m1 = false;
  for (std::size_t i = 0; i + s_a.size() <= s_c.size(); ++i) {
    if (s_c.compare(i, s_a.size(), s_a) == 0) { out.m1 = true; break; }
  }
  std::size_t lcs = 0;
  for (std::size_t i = 0; i < s_a.size(); ++i) {
    for (std::size_t len = 1; i + len <= s_a.size(); ++len) {
      const std::string sub = s_a.substr(i, len);
      if (s_c.find(sub) != std::string::npos) lcs = std::max(lcs, len);
    }
  }
  out.m2 = static_cast<double>(lcs) / static_cast<double>(s_a.size());

  const std::size_t n = std::min<std::size_t>(3, std::min(s_a.size(), s_c.size()));
  std::set<std::string> grams_a, grams_c;
  for (std::size_t i = 0; i + n <= s_a.size(); ++i) grams_a.insert(s_a.substr(i, n));
  for (std::size_t i = 0; i + n <= s_c.size(); ++i) grams_c.insert(s_c.substr(i, n));
  std::set<std::string> inter, uni, only_a;
  std::set_intersection(grams_a.begin(), grams_a.end(), grams_c.begin(), grams_c.end(),
                        std::inserter(inter, inter.begin()));
  std::set_union(grams_a.begin(), grams_a.end(), grams_c.begin(), grams_c.end(),
                 std::inserter(uni, uni.begin()));
  std::set_difference(grams_a.begin(), grams_a.end(), grams_c.begin(), grams_c.end(),
                      std::inserter(only_a, only_a.begin()));
  out.m3 = uni.empty() ? 0.0 : static_cast<double>(inter.size()) / uni.size();
  out.m4 = (std::pow(uni.size(), w) - std::pow(only_a.size(), w)) / std::pow(uni.size(), w);
  out.m5 = 2.0 * static_cast<double>(inter.size()) / (grams_a.size() + grams_c.size());
  return out;
}

// Exhaustive max-weight common subsequence: enumerate every subsequence of
// the key, then search every placement of it inside the name string.
double place(const std::string& sub, std::size_t si, const AcronymInput& names, std::size_t ni,
             const AcronymParams& params, double acc, bool& feasible) {
  if (si == sub.size()) {
    feasible = true;
    return acc;
  }
  double best = -1.0;
  for (std::size_t j = ni; j < names.concatenated.size(); ++j) {
    if (ascii_lower(sub[si]) != ascii_lower(names.concatenated[j])) continue;
    double w;
    if (names.is_first_letter[j]) {
      w = is_ascii_upper(names.concatenated[j]) ? params.w_A : params.w_a;
    } else {
      w = params.w_s;
    }
    bool ok = false;
    const double score = place(sub, si + 1, names, j + 1, params, acc + w, ok);
    if (ok) best = std::max(best, score);
  }
  if (best >= 0.0) {
    feasible = true;
    return best;
  }
  feasible = false;
  return 0.0;
}

double brute_acronym_score(const std::string& key, const AcronymInput& names,
                           const AcronymParams& params) {
  double best = 0.0;
  const std::size_t n = key.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::string sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) sub.push_back(key[i]);
    }
    bool ok = false;
    const double score = place(sub, 0, names, 0, params, 0.0, ok);
    if (ok) best = std::max(best, score);
  }
  return best;
}

}  // namespace

TEST_CASE("ngram_set enumerates distinct grams") {
  CHECK(ngram_set("abcd", 3) == std::set<std::string>{"abc", "bcd"});
  CHECK(ngram_set("aaaa", 2) == std::set<std::string>{"aa"});
  CHECK(ngram_set("ab", 3).empty());
  CHECK(ngram_set("", 1).empty());
}

TEST_CASE("metric scores on the cormode05 pair") {
  const MetricScores s = score_metrics("cormode", "cormode05");
  CHECK(s.n == 3);
  CHECK(s.m1);
  CHECK(s.m2 == Catch::Approx(1.0));
  CHECK(s.m3 == Catch::Approx(5.0 / 7.0));
  CHECK(s.m4 == Catch::Approx(1.0));
  CHECK(s.m5 == Catch::Approx(10.0 / 12.0));
  CHECK(s.m4_match);
  CHECK(s.m5_match);
}

TEST_CASE("identical strings score 1 on every metric") {
  const MetricScores s = score_metrics("knuth", "knuth");
  CHECK(s.m1);
  CHECK(s.m2 == 1.0);
  CHECK(s.m3 == 1.0);
  CHECK(s.m4 == 1.0);
  CHECK(s.m5 == 1.0);
}

TEST_CASE("short strings shrink the gram size") {
  const MetricScores s = score_metrics("reif", "lr");
  CHECK(s.n == 2);
  CHECK_FALSE(s.m1);
  CHECK(s.m3 == 0.0);
  CHECK(s.m5 == 0.0);
}

TEST_CASE("empty inputs are degenerate") {
  CHECK_THROWS_AS(score_metrics("", "abc"), DegenerateInput);
  CHECK_THROWS_AS(score_metrics("abc", ""), DegenerateInput);
}

TEST_CASE("M3 and M5 are symmetric, all scores bounded") {
  std::mt19937 rng(29);
  const std::string alphabet = "abcdefgh";
  for (int trial = 0; trial < 300; ++trial) {
    std::string a, b;
    const int la = 1 + static_cast<int>(rng() % 10);
    const int lb = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < la; ++i) a.push_back(alphabet[rng() % alphabet.size()]);
    for (int i = 0; i < lb; ++i) b.push_back(alphabet[rng() % alphabet.size()]);
    const MetricScores ab = score_metrics(a, b);
    const MetricScores ba = score_metrics(b, a);
    CHECK(ab.m3 == ba.m3);
    CHECK(ab.m5 == ba.m5);
    for (double v : {ab.m2, ab.m3, ab.m4, ab.m5}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("acronym fixtures from the matcher's defining cases") {
  const std::vector<std::string> cmy = {"Cormode", "Muthukrishnan", "Yan"};
  const AcronymVerdict v = is_acronym("CMY", cmy);
  CHECK(v.is_acronym);
  CHECK(v.score == Catch::Approx(6.0));
  CHECK(v.threshold == Catch::Approx(3.0));

  CHECK_FALSE(is_acronym("", cmy).is_acronym);

  const AcronymVerdict logic = is_acronym("logic2006", std::vector<std::string>{"Fischer"});
  CHECK_FALSE(logic.is_acronym);
  CHECK(logic.score == Catch::Approx(0.2));

  const AcronymVerdict lr = is_acronym("LR", std::vector<std::string>{"Ladner", "Reif"});
  CHECK(lr.is_acronym);
  CHECK(lr.score == Catch::Approx(4.0));
}

TEST_CASE("DP equals the exhaustive enumeration on small inputs") {
  const AcronymParams params;
  const std::vector<std::vector<std::string>> name_sets = {{"Cab"}, {"Cab", "bac"}};
  const std::string alphabet = "abC";
  for (const auto& names : name_sets) {
    const AcronymInput input = AcronymInput::from_last_names(names);
    std::mt19937 rng(59);
    for (int trial = 0; trial < 200; ++trial) {
      std::string key;
      const int len = static_cast<int>(rng() % 5);
      for (int i = 0; i < len; ++i) key.push_back(alphabet[rng() % alphabet.size()]);
      const double dp = is_acronym(key, input, params).score;
      const double brute = brute_acronym_score(key, input, params);
      CHECK(dp == brute);
    }
  }
}

TEST_CASE("appending matching characters never lowers the score") {
  const AcronymInput names = AcronymInput::from_last_names({"Cormode", "Yan"});
  std::mt19937 rng(61);
  const std::string alphabet = "cormdeyan";
  for (int trial = 0; trial < 200; ++trial) {
    std::string key;
    const int len = static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) key.push_back(alphabet[rng() % alphabet.size()]);
    const double base = is_acronym(key, names).score;
    const std::string extended = key + alphabet[rng() % alphabet.size()];
    CHECK(is_acronym(extended, names).score >= base);
  }
}

TEST_CASE("the full concatenation always passes") {
  for (const auto& names : std::vector<std::vector<std::string>>{
           {"Cormode"}, {"Cormode", "Muthukrishnan", "Yan"}, {"ter Meulen", "wall"},
           {"a", "b", "c", "d"}}) {
    std::string s_A;
    for (const auto& n : names) {
      for (char c : n) {
        if (!is_ascii_space(c)) s_A.push_back(c);
      }
    }
    INFO(s_A);
    CHECK(is_acronym(s_A, names).is_acronym);
  }
}

TEST_CASE("acronym score respects its upper bound") {
  std::mt19937 rng(67);
  const std::vector<std::string> names = {"Alpha", "beta"};
  const AcronymInput input = AcronymInput::from_last_names(names);
  const AcronymParams params;
  const double bound =
      params.w_A * 2 + params.w_s * (static_cast<double>(input.concatenated.size()) - 2);
  const std::string alphabet = "alphbet";
  for (int trial = 0; trial < 200; ++trial) {
    std::string key;
    const int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) key.push_back(alphabet[rng() % alphabet.size()]);
    const double score = is_acronym(key, input).score;
    CHECK(score >= 0.0);
    CHECK(score <= bound + 1e-12);
  }
}

TEST_CASE("metric oracle over random pairs") {
  std::mt19937 rng(71);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  const MetricConfig config;
  for (int trial = 0; trial < 200; ++trial) {
    std::string a, b;
    const int la = 1 + static_cast<int>(rng() % 12);
    const int lb = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < la; ++i) a.push_back(alphabet[rng() % alphabet.size()]);
    for (int i = 0; i < lb; ++i) b.push_back(alphabet[rng() % alphabet.size()]);
    const MetricScores fast = score_metrics(a, b, config);
    const BruteMetrics slow = brute_metrics(a, b, config.w);
    CHECK(fast.m1 == slow.m1);
    CHECK(std::abs(fast.m2 - slow.m2) < 1e-12);
    CHECK(std::abs(fast.m3 - slow.m3) < 1e-12);
    CHECK(std::abs(fast.m4 - slow.m4) < 1e-12);
    CHECK(std::abs(fast.m5 - slow.m5) < 1e-12);
  }
}
