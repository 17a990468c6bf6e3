// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "citekeys/acronym.hpp"
#include "citekeys/analytics.hpp"
#include "citekeys/logistic.hpp"
#include "citekeys/meta.hpp"
#include "citekeys/names.hpp"
#include "citekeys/pipeline.hpp"
#include "citekeys/report_io.hpp"
#include "citekeys/similarity.hpp"

using namespace citekeys;
namespace fs = std::filesystem;

namespace {

const std::string kSourceDir = CITEKEYS_SOURCE_DIR;
const std::string kCliPath = CITEKEYS_CLI_PATH;

int g_failures = 0;

void run_criterion(const std::string& name, const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    error = body();
  } catch (const std::exception& e) {
    error = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (error.empty()) {
    std::printf("PASS  %-22s (%.2fs)\n", name.c_str(), seconds);
  } else {
    std::printf("FAIL  %-22s (%.2fs): %s\n", name.c_str(), seconds, error.c_str());
    ++g_failures;
  }
  std::fflush(stdout);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------------
// 1. Algorithm fixtures
// ---------------------------------------------------------------------------

std::string acronym_fixtures() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::string> cmy = {"Cormode", "Muthukrishnan", "Yan"};
  for (const char* key : {"CMY", "CormodeMY", "CorMutYan"}) {
    if (!is_acronym(key, cmy).is_acronym) {
      return std::string(key) + " should match Cormode/Muthukrishnan/Yan";
    }
  }
  if (!is_acronym("LR", std::vector<std::string>{"Ladner", "Reif"}).is_acronym) {
    return "LR should match Ladner/Reif";
  }
  if (is_acronym("logic2006", std::vector<std::string>{"Fischer"}).is_acronym) {
    return "logic2006 must not match Fischer";
  }
  if (is_acronym("", cmy).is_acronym) return "empty key must not match";
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= 1.0) return "fixture suite exceeded 1 second";
  return "";
}

// ---------------------------------------------------------------------------
// 2. DP vs exhaustive enumeration
// ---------------------------------------------------------------------------

// Max-weight placement of one key subsequence inside the name string,
// accumulating weights left to right exactly as the DP does.
double place_subsequence(const std::string& sub, std::size_t si, const AcronymInput& names,
                         std::size_t ni, const AcronymParams& params, double acc, bool& ok) {
  if (si == sub.size()) {
    ok = true;
    return acc;
  }
  double best = 0.0;
  bool any = false;
  for (std::size_t j = ni; j < names.concatenated.size(); ++j) {
    if (ascii_lower(sub[si]) != ascii_lower(names.concatenated[j])) continue;
    double w;
    if (names.is_first_letter[j]) {
      w = is_ascii_upper(names.concatenated[j]) ? params.w_A : params.w_a;
    } else {
      w = params.w_s;
    }
    bool sub_ok = false;
    const double score = place_subsequence(sub, si + 1, names, j + 1, params, acc + w, sub_ok);
    if (sub_ok && (!any || score > best)) {
      best = score;
      any = true;
    }
  }
  ok = any;
  return best;
}

double exhaustive_acronym_score(const std::string& key, const AcronymInput& names,
                                const AcronymParams& params) {
  double best = 0.0;
  const std::size_t n = key.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::string sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) sub.push_back(key[i]);
    }
    bool ok = false;
    const double score = place_subsequence(sub, 0, names, 0, params, 0.0, ok);
    if (ok && score > best) best = score;
  }
  return best;
}

std::string dp_vs_brute_force() {
  const AcronymParams params;
  const std::vector<std::vector<std::string>> name_sets = {{"Cab"}, {"Cab", "bac"}};
  const std::string alphabet = "abC";
  long checked = 0;
  for (const auto& names : name_sets) {
    const AcronymInput input = AcronymInput::from_last_names(names);
    // Every string of length 0..6 over the three-letter alphabet.
    std::vector<std::string> keys = {""};
    for (int len = 0; len < 6; ++len) {
      std::vector<std::string> next;
      for (const std::string& k : keys) {
        if (k.size() == static_cast<std::size_t>(len)) {
          for (char c : alphabet) next.push_back(k + c);
        }
      }
      for (const std::string& k : next) keys.push_back(k);
    }
    for (const std::string& key : keys) {
      const double dp = is_acronym(key, input, params).score;
      const double brute = exhaustive_acronym_score(key, input, params);
      ++checked;
      if (dp != brute) {
        std::ostringstream msg;
        msg << "mismatch for key '" << key << "': dp " << dp << " brute " << brute;
        return msg.str();
      }
    }
  }
  if (checked < 2 * 1093) return "enumeration did not cover all strings";
  return "";
}

// ---------------------------------------------------------------------------
// 3. Metric oracle
// ---------------------------------------------------------------------------

std::string metric_oracle() {
  std::mt19937 rng(424242);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  const MetricConfig config;
  for (int trial = 0; trial < 500; ++trial) {
    std::string s_a, s_c;
    const int la = 1 + static_cast<int>(rng() % 12);
    const int lc = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < la; ++i) s_a.push_back(alphabet[rng() % alphabet.size()]);
    for (int i = 0; i < lc; ++i) s_c.push_back(alphabet[rng() % alphabet.size()]);

    // Independent evaluation straight from the formula table.
    bool m1 = false;
    for (std::size_t i = 0; i + s_a.size() <= s_c.size(); ++i) {
      if (s_c.compare(i, s_a.size(), s_a) == 0) { m1 = true; break; }
    }
    std::size_t lcs = 0;
    for (std::size_t i = 0; i < s_a.size(); ++i) {
      for (std::size_t len = lcs + 1; i + len <= s_a.size(); ++len) {
        if (s_c.find(s_a.substr(i, len)) != std::string::npos) lcs = len;
        else break;
      }
    }
    const double m2 = static_cast<double>(lcs) / s_a.size();
    const std::size_t n = std::min<std::size_t>(3, std::min(s_a.size(), s_c.size()));
    std::set<std::string> grams_a, grams_c, uni, inter, only_a;
    for (std::size_t i = 0; i + n <= s_a.size(); ++i) grams_a.insert(s_a.substr(i, n));
    for (std::size_t i = 0; i + n <= s_c.size(); ++i) grams_c.insert(s_c.substr(i, n));
    uni = grams_a;
    uni.insert(grams_c.begin(), grams_c.end());
    for (const auto& g : grams_a) {
      if (grams_c.count(g)) inter.insert(g);
      else only_a.insert(g);
    }
    const double m3 = static_cast<double>(inter.size()) / uni.size();
    const double uw = std::pow(static_cast<double>(uni.size()), config.w);
    const double m4 = (uw - std::pow(static_cast<double>(only_a.size()), config.w)) / uw;
    const double m5 = 2.0 * static_cast<double>(inter.size()) /
                      static_cast<double>(grams_a.size() + grams_c.size());

    const MetricScores scores = score_metrics(s_a, s_c, config);
    if (scores.m1 != m1) return "M1 mismatch on " + s_a + " / " + s_c;
    if (std::abs(scores.m2 - m2) > 1e-12) return "M2 mismatch on " + s_a + " / " + s_c;
    if (std::abs(scores.m3 - m3) > 1e-12) return "M3 mismatch on " + s_a + " / " + s_c;
    if (std::abs(scores.m4 - m4) > 1e-12) return "M4 mismatch on " + s_a + " / " + s_c;
    if (std::abs(scores.m5 - m5) > 1e-12) return "M5 mismatch on " + s_a + " / " + s_c;
  }
  return "";
}

// ---------------------------------------------------------------------------
// 4. Year extraction
// ---------------------------------------------------------------------------

std::string year_extraction() {
  const YearWindow strict{1500, 2030};
  const YearWindow practical{1800, 2030};
  // Both 1730 and 1999 are candidates; key evidence resolves 1999.
  const std::string body = " Phil. Trans. 1730 reprint, 1999.";
  if (extract_year(body, "lif99", strict) != 1999) return "lif99 should resolve to 1999";
  if (extract_year(body, "nodigits", strict) != 1730) {
    return "1730 must be a live candidate under the strict window";
  }
  // No evidence, multiple candidates: first in entry order.
  if (extract_year("Volume 2001 of LNCS, Springer, 2005.", "nodigits", practical) != 2001) {
    return "no-evidence fallback must pick the first candidate";
  }
  // The +-1 rule.
  if (extract_year("Proceedings, 1999.", "smith00", practical) != 1999) {
    return "smith00 should accept 1999 via the +-1 rule";
  }
  return "";
}

// ---------------------------------------------------------------------------
// 5. Knuth regression table
// ---------------------------------------------------------------------------

std::string knuth_regression() {
  const std::vector<std::string> variants = {
      "D.~E. Knuth.", "Donald~E. Knuth", "D.~E.~Knuth", "Knuth, D.", "D. Knuth",
      "Knuth, D.~E.,", "D.~Knuth", "Knuth, D.E.", "D.E. Knuth",
  };
  for (const std::string& variant : variants) {
    const AuthorsResult result = split_authors(variant);
    if (result.authors.size() != 1 || result.authors[0].last != "Knuth") {
      return "variant '" + variant + "' did not resolve to Knuth";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 6. Classifier
// ---------------------------------------------------------------------------

std::vector<LabeledInstance> separable_set(std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> len_noise(5.0, 2.5);
  std::bernoulli_distribution coin(0.5);
  const std::vector<std::string> patterns = {"A.", "Aa", "a", "d"};
  std::vector<LabeledInstance> out;
  while (out.size() < count) {
    WordFeatures f;
    f.capital_period = coin(rng);
    f.capital_period_dup = coin(rng);
    f.init_capital = coin(rng);
    f.ends_with_period = coin(rng);
    f.all_lower = coin(rng);
    f.all_digits = coin(rng);
    f.token_length = std::max(1, static_cast<int>(std::lround(len_noise(rng))));
    f.summarized_pattern = patterns[rng() % patterns.size()];
    f.token_word = "w" + std::to_string(rng() % 20);
    const double margin = 3.0 * f.capital_period + 2.0 * f.init_capital +
                          1.5 * f.ends_with_period - 2.0 * f.all_lower - 1.5 * f.all_digits -
                          0.35 * (f.token_length - 5);
    if (std::abs(margin) < 0.75) continue;
    LabeledInstance inst;
    inst.features = f;
    inst.label = margin > 0 ? 1 : 0;
    out.push_back(std::move(inst));
  }
  return out;
}

std::string classifier_criteria() {
  const auto instances = separable_set(1000, 42);
  const TrainResult result = train(instances, Hyperparams{});
  if (result.holdout.f1() < 0.99) {
    std::ostringstream msg;
    msg << "holdout F1 " << result.holdout.f1() << " below 0.99";
    return msg.str();
  }

  // Fixed seed reproduces the weights bitwise.
  const TrainResult again = train(instances, Hyperparams{});
  if (again.model.weights != result.model.weights || again.model.bias != result.model.bias) {
    return "training is not bitwise reproducible";
  }

  // Analytic gradient vs central finite differences on random points.
  std::vector<const LabeledInstance*> ptrs;
  const auto small = separable_set(60, 77);
  for (const auto& inst : small) ptrs.push_back(&inst);
  FeatureEncoder encoder;
  encoder.fit(ptrs, 1000);
  std::vector<detail::EncodedInstance> data;
  for (const auto& inst : small) data.push_back({encoder.encode(inst.features), inst.label});
  const int dims = encoder.dimensions();
  std::mt19937 rng(2024);
  std::normal_distribution<double> dist(0.0, 1.0);
  const double step = 1e-5;
  for (int point = 0; point < 20; ++point) {
    std::vector<double> weights(dims);
    for (double& v : weights) v = dist(rng);
    const double bias = dist(rng);
    std::vector<double> grad(dims, 0.0);
    double grad_b = 0.0;
    detail::loss_and_gradient(data, weights, bias, 1e-3, 1.0, &grad, &grad_b);
    double diff_sq = 0.0, norm_sq = 0.0;
    for (int d = 0; d < dims; ++d) {
      std::vector<double> plus = weights, minus = weights;
      plus[d] += step;
      minus[d] -= step;
      const double fd =
          (detail::loss_and_gradient(data, plus, bias, 1e-3, 1.0, nullptr, nullptr) -
           detail::loss_and_gradient(data, minus, bias, 1e-3, 1.0, nullptr, nullptr)) /
          (2.0 * step);
      diff_sq += (fd - grad[d]) * (fd - grad[d]);
      norm_sq += grad[d] * grad[d];
    }
    const double fd_b =
        (detail::loss_and_gradient(data, weights, bias + step, 1e-3, 1.0, nullptr, nullptr) -
         detail::loss_and_gradient(data, weights, bias - step, 1e-3, 1.0, nullptr, nullptr)) /
        (2.0 * step);
    diff_sq += (fd_b - grad_b) * (fd_b - grad_b);
    norm_sq += grad_b * grad_b;
    if (std::sqrt(diff_sq) > 1e-4 * std::max(1e-12, std::sqrt(norm_sq))) {
      std::ostringstream msg;
      msg << "gradient check failed at point " << point << " (relative error "
          << std::sqrt(diff_sq) / std::max(1e-12, std::sqrt(norm_sq)) << ")";
      return msg.str();
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 7. Golden end-to-end run
// ---------------------------------------------------------------------------

std::string golden_run() {
  const fs::path out = fs::temp_directory_path() / "citekeys-acceptance-golden";
  fs::remove_all(out);
  const std::string cmd = kCliPath + " analyze -i " + kSourceDir + "/data/minicorpus -o " +
                          out.string() + " >/dev/null 2>&1";
  if (std::system(cmd.c_str()) != 0) return "analyze run failed";
  const std::string got = read_file((out / "report.json").string());
  const std::string golden = read_file(kSourceDir + "/data/golden/report.json");
  if (golden.empty()) return "missing golden file";
  if (got != golden) {
    std::size_t i = 0;
    while (i < got.size() && i < golden.size() && got[i] == golden[i]) ++i;
    std::ostringstream msg;
    msg << "report.json differs from golden at byte " << i << " (golden " << golden.size()
        << " bytes, got " << got.size() << ")";
    return msg.str();
  }
  return "";
}

// ---------------------------------------------------------------------------
// 8. Merge law on random partitions
// ---------------------------------------------------------------------------

std::string merge_law() {
  RunConfig config;
  config.inputs = {kSourceDir + "/data/minicorpus"};
  const ExtractResult extraction = run_extract(config);
  const std::string whole =
      report_to_json_text(build_report(extraction.records, config.analytics), config.analytics);

  std::mt19937 rng(9001);
  for (int trial = 0; trial < 4; ++trial) {
    std::map<std::string, bool> side;
    std::vector<BibMetaRecord> left, right;
    for (const auto& record : extraction.records) {
      if (!side.count(record.paper_id)) side[record.paper_id] = rng() % 2 == 0;
      (side[record.paper_id] ? left : right).push_back(record);
    }
    const CorpusReport merged = merge_reports(build_report(left, config.analytics),
                                              build_report(right, config.analytics));
    if (report_to_json_text(merged, config.analytics) != whole) {
      return "merged partition report differs from the whole-corpus report (trial " +
             std::to_string(trial) + ")";
    }
  }
  return "";
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  run_criterion("acronym-fixtures", acronym_fixtures);
  run_criterion("dp-vs-brute-force", dp_vs_brute_force);
  run_criterion("metric-oracle", metric_oracle);
  run_criterion("year-extraction", year_extraction);
  run_criterion("knuth-regression", knuth_regression);
  run_criterion("classifier", classifier_criteria);
  run_criterion("golden-run", golden_run);
  run_criterion("merge-law", merge_law);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
