#!/usr/bin/env python3
"""Independent counting oracle for the mini-corpus golden report.

Reads the planted ground truth (data/minicorpus/ground_truth.ndjson) and
computes data/golden/report.json by straight-line counting, with its own
Python implementations of the matching rules. The C++ pipeline must produce
a byte-identical report from the rendered LaTeX files.

Run from the repository root:  python3 tools/oracle/golden_oracle.py
"""

import json
import os

ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
TRUTH = os.path.join(ROOT, "data", "minicorpus", "ground_truth.ndjson")
GOLDEN_DIR = os.path.join(ROOT, "data", "golden")

# Defaults mirrored from the run configuration.
METRIC_THRESHOLD = 0.5
METRIC_W = 0.5
W_CAPITAL = 2.0
W_LOWER = 1.1
W_OTHER = 0.1
ACRO_FACTOR = 0.5
NGRAM_MIN, NGRAM_MAX = 2, 10
TOP_K = 20
DECADES = [1990, 2000, 2010]
STRICT_PMR, LOOSE_PMR = 1.0, 0.9
AFFINITY_MARGIN = 0.2
TYPE_LEXICON = [
    "thesis", "phdthesis", "mastersthesis", "book", "survey", "article",
    "report", "techreport", "proceedings", "conference", "journal", "manual",
    "note", "misc", "tutorial", "standard", "patent",
]


# ---------------------------------------------------------------------------
# String handling (independent re-implementation)
# ---------------------------------------------------------------------------

def fold(s):
    """LaTeX accent folding for the fixture's character repertoire."""
    out = []
    i = 0
    while i < len(s):
        c = s[i]
        if c == "\\" and i + 1 < len(s):
            nxt = s[i + 1]
            if nxt.isalpha():
                j = i + 1
                while j < len(s) and s[j].isalpha():
                    j += 1
                i = j
                continue
            if nxt in "\"'`^~=.":
                i += 2
                continue
            out.append(nxt)
            i += 2
            continue
        if c in "{}":
            i += 1
            continue
        if ord(c) < 128:
            out.append(c)
        i += 1
    return "".join(out)


def normalize(s):
    return fold(s).lower()


def matchable_last(last):
    return "".join(ch for ch in normalize(last) if not ch.isspace())


def ngrams(s, n):
    return {s[i:i + n] for i in range(len(s) - n + 1)} if len(s) >= n else set()


def metric_m1(s_a, s_c):
    return s_a in s_c


def metric_m4(s_a, s_c):
    n = min(3, len(s_a), len(s_c))
    grams_a, grams_c = ngrams(s_a, n), ngrams(s_c, n)
    union = float(len(grams_a | grams_c))
    a_minus_c = float(len(grams_a - grams_c))
    union_w = union ** METRIC_W
    if union_w <= 0:
        return False
    return (union_w - a_minus_c ** METRIC_W) / union_w >= METRIC_THRESHOLD


def is_acronym(key, last_names):
    s_a_chars = []
    first_flags = []
    for name in last_names:
        folded = "".join(ch for ch in fold(name) if not ch.isspace())
        for pos, ch in enumerate(folded):
            s_a_chars.append(ch)
            first_flags.append(pos == 0)
    key = fold(key)
    rows, cols = len(key), len(s_a_chars)
    prev = [0.0] * (cols + 1)
    for i in range(1, rows + 1):
        cur = [0.0] * (cols + 1)
        kc = key[i - 1].lower()
        for j in range(1, cols + 1):
            nc = s_a_chars[j - 1]
            w = 0.0
            if kc == nc.lower():
                if first_flags[j - 1]:
                    w = W_CAPITAL if nc.isupper() else W_LOWER
                else:
                    w = W_OTHER
            cur[j] = max(cur[j - 1], prev[j], prev[j - 1] + w)
        prev = cur
    score = prev[cols]
    return score > ACRO_FACTOR * W_CAPITAL * len(last_names)


def is_alphabetical(lasts):
    return all(lasts[i - 1] <= lasts[i] for i in range(1, len(lasts)))


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------

def count_grams(text, target, field):
    for n in range(NGRAM_MIN, NGRAM_MAX + 1):
        if n > len(text):
            break
        for i in range(len(text) - n + 1):
            term = text[i:i + n]
            slot = target.setdefault(n, {}).setdefault(term, [0, 0, 0])
            slot[field] += 1


def build(records):
    totals = {"papers": 0, "entries": 0, "keys": 0, "entries_with_authors": 0,
              "authors": 0, "entries_with_year": 0, "entries_with_title": 0}
    cond = {"m1": {}, "m4": {}}
    ordering = {
        "excluded": 0,
        "acronym": dict.fromkeys(
            ["alpha_match", "alpha_nomatch", "nonalpha_match", "nonalpha_nomatch"], 0),
        "first_author": dict.fromkeys(
            ["alpha_match", "alpha_nomatch", "nonalpha_match", "nonalpha_nomatch"], 0),
    }
    buckets = [{"start": DECADES[i], "end": DECADES[i + 1], "citations": 0,
                "acronym_matches": 0, "first_author_matches": 0}
               for i in range(len(DECADES) - 1)]
    trend_no_year = 0
    trend_out_of_range = 0
    per_paper = {}
    grams = {}

    for r in records:
        paper = per_paper.setdefault(r["paper"], {
            "entries": 0, "keyed": 0, "acronym_matched": 0, "first_author_matched": 0,
            "dblp_copied": 0, "dblp_copied_with_year": 0, "dblp_copied_after_2000": 0,
            "max_year": 0})
        paper["entries"] += 1
        totals["entries"] += 1
        if r["year"] is not None:
            totals["entries_with_year"] += 1
            paper["max_year"] = max(paper["max_year"], r["year"])
        if r["title"] is not None:
            totals["entries_with_title"] += 1
        if r["authors"]:
            totals["entries_with_authors"] += 1
            totals["authors"] += len(r["authors"])

        if r["title"] is not None:
            count_grams(normalize(r["title"]), grams, 1)
        for a in r["authors"]:
            name = a["last"] if not a["first"] else a["first"] + " " + a["last"]
            count_grams(normalize(name), grams, 2)

        if r["key"] is None:
            continue
        totals["keys"] += 1
        paper["keyed"] += 1
        count_grams(r["key"].lower(), grams, 0)

        key_norm = normalize(r["key"])
        lasts_display = [a["last"] for a in r["authors"]]
        lasts_match = [matchable_last(a["last"]) for a in r["authors"]]
        m1 = [bool(s) and s in key_norm for s in lasts_match]
        m4 = [bool(s) and metric_m4(s, key_norm) for s in lasts_match]
        acr = is_acronym(r["key"], lasts_display) if lasts_display else False
        first_author = bool(m1) and m1[0]
        alpha = is_alphabetical(lasts_match)
        dblp = r["key"].lower().startswith("dblp:")

        if acr:
            paper["acronym_matched"] += 1
        if first_author:
            paper["first_author_matched"] += 1
        if dblp:
            paper["dblp_copied"] += 1
            if r["year"] is not None:
                paper["dblp_copied_with_year"] += 1
                if r["year"] > 2000:
                    paper["dblp_copied_after_2000"] += 1

        j = len(r["authors"])
        if j > 0:
            for variant, flags in (("m1", m1), ("m4", m4)):
                col = cond[variant].setdefault(j, {"den": 0, "num": {}})
                col["den"] += 1
                for i, flag in enumerate(flags):
                    if flag:
                        col["num"][i + 1] = col["num"].get(i + 1, 0) + 1

        if j >= 2:
            for split, flag in (("acronym", acr), ("first_author", first_author)):
                cell = ("alpha_" if alpha else "nonalpha_") + ("match" if flag else "nomatch")
                ordering[split][cell] += 1
        else:
            ordering["excluded"] += 1

        if r["year"] is None:
            trend_no_year += 1
        else:
            placed = False
            for b in buckets:
                if b["start"] <= r["year"] < b["end"]:
                    b["citations"] += 1
                    if acr:
                        b["acronym_matches"] += 1
                    if first_author:
                        b["first_author_matches"] += 1
                    placed = True
                    break
            if not placed:
                trend_out_of_range += 1

    totals["papers"] = len(per_paper)
    return totals, cond, ordering, buckets, trend_no_year, trend_out_of_range, per_paper, grams


# ---------------------------------------------------------------------------
# Derived views
# ---------------------------------------------------------------------------

def consistency(per_paper):
    view = {"acronym": {"papers": 0, "strict_num": 0, "loose_num": 0},
            "first_author": {"papers": 0, "strict_num": 0, "loose_num": 0}}
    for stats in per_paper.values():
        if stats["keyed"] == 0:
            continue
        for split, field in (("acronym", "acronym_matched"), ("first_author", "first_author_matched")):
            pmr = stats[field] / stats["keyed"]
            view[split]["papers"] += 1
            if pmr >= STRICT_PMR:
                view[split]["strict_num"] += 1
            if pmr >= LOOSE_PMR:
                view[split]["loose_num"] += 1
    return view


def dblp(per_paper, keys_total):
    view = {"keys_total": keys_total, "keys_copied": 0, "papers_total": 0,
            "papers_with_copies": 0, "papers_majority_copied": 0,
            "copied_keys_with_year": 0, "copied_keys_after_2000": 0,
            "papers_with_copies_with_era": 0, "papers_with_copies_after_2000": 0}
    for stats in per_paper.values():
        view["keys_copied"] += stats["dblp_copied"]
        view["copied_keys_with_year"] += stats["dblp_copied_with_year"]
        view["copied_keys_after_2000"] += stats["dblp_copied_after_2000"]
        if stats["keyed"] == 0:
            continue
        view["papers_total"] += 1
        if stats["dblp_copied"] > 0:
            view["papers_with_copies"] += 1
            if 2 * stats["dblp_copied"] > stats["keyed"]:
                view["papers_majority_copied"] += 1
            if stats["max_year"] > 0:
                view["papers_with_copies_with_era"] += 1
                if stats["max_year"] > 2000:
                    view["papers_with_copies_after_2000"] += 1
    return view


def assign_cluster(term, ctx):
    if term and all(ch.isdigit() for ch in term):
        return "year_and_phrase"
    if len(term) >= 2 and term in "etal":
        return "year_and_phrase"
    if len(term) >= 3 and any(term in word for word in TYPE_LEXICON):
        return "type_and_sources"
    title_count, author_count = ctx[1], ctx[2]
    total = title_count + author_count
    if total == 0:
        return "unassigned"
    diff = title_count / total - author_count / total
    if diff >= AFFINITY_MARGIN:
        return "title_words"
    if -diff >= AFFINITY_MARGIN:
        return "author_names"
    return "unassigned"


def top_terms(grams, n):
    terms = []
    for term, ctx in grams.get(n, {}).items():
        if ctx[0] == 0:
            continue
        terms.append((term, ctx))
    terms.sort(key=lambda t: (-t[1][0], t[0]))
    out = []
    for term, ctx in terms[:TOP_K]:
        out.append({"term": term, "count": ctx[0], "cluster": assign_cluster(term, ctx),
                    "title_count": ctx[1], "author_count": ctx[2]})
    return out


def main():
    records = [json.loads(line) for line in open(TRUTH, encoding="utf-8")]
    (totals, cond, ordering, buckets, trend_no_year, trend_out_of_range,
     per_paper, grams) = build(records)

    report = {}
    report["schema"] = "citekeys-report-1"
    report["totals"] = {k: totals[k] for k in
                        ["papers", "entries", "keys", "entries_with_authors", "authors",
                         "entries_with_year", "entries_with_title"]}
    report["cond_prob"] = {
        variant: {
            str(j): {"den": col["den"],
                     "num": {str(i): col["num"][i] for i in sorted(col["num"])}}
            for j, col in sorted(cond[variant].items())
        }
        for variant in ("m1", "m4")
    }
    report["ordering"] = {
        "excluded": ordering["excluded"],
        "acronym": ordering["acronym"],
        "first_author": ordering["first_author"],
    }
    report["trend"] = {"buckets": buckets, "excluded_no_year": trend_no_year,
                       "excluded_out_of_range": trend_out_of_range}
    report["consistency"] = consistency(per_paper)
    report["dblp"] = dblp(per_paper, totals["keys"])
    report["top_terms"] = {str(n): top_terms(grams, n) for n in range(NGRAM_MIN, NGRAM_MAX + 1)}
    report["per_paper"] = [
        {"paper": paper, **{k: stats[k] for k in
                            ["entries", "keyed", "acronym_matched", "first_author_matched",
                             "dblp_copied", "dblp_copied_with_year", "dblp_copied_after_2000",
                             "max_year"]}}
        for paper, stats in sorted(per_paper.items())
    ]
    report["ngrams"] = {
        str(n): {term: grams[n][term] for term in sorted(grams[n])}
        for n in sorted(grams)
    }

    os.makedirs(GOLDEN_DIR, exist_ok=True)
    path = os.path.join(GOLDEN_DIR, "report.json")
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
