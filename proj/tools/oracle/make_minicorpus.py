#!/usr/bin/env python3
"""Builds the bundled synthetic mini-corpus.

One master table drives both outputs, so the LaTeX files and the expected
extraction records can never drift apart:

  data/minicorpus/pNN.tex|.bbl   -- the corpus itself
  data/minicorpus/ground_truth.ndjson -- expected per-entry records
  data/fixtures/bad/*            -- malformed inputs for the parser tests

Run from the repository root:  python3 tools/oracle/make_minicorpus.py
"""

import json
import os

ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
CORPUS_DIR = os.path.join(ROOT, "data", "minicorpus")
BAD_DIR = os.path.join(ROOT, "data", "fixtures", "bad")


# ---------------------------------------------------------------------------
# Entry construction helpers
# ---------------------------------------------------------------------------

def il(first, last):
    """Author rendered as 'F. Last' (initials first)."""
    return {"first": first, "last": last, "render": "il"}


def cl(first, last):
    """Author rendered as 'Last, F.' (comma form)."""
    return {"first": first, "last": last, "render": "cl"}


def org(last):
    return {"first": "", "last": last, "render": "org"}


def render_author(a, tilde=False):
    sep = "~" if tilde else " "
    if a["render"] == "org" or not a["first"]:
        return a["last"]
    if a["render"] == "cl":
        return f"{a['last']}, {a['first']}"
    return f"{a['first']}{sep}{a['last']}"


def render_author_list(authors, joiner="oxford", tilde=False):
    parts = [render_author(a, tilde) for a in authors]
    if len(parts) == 1:
        return parts[0]
    if joiner == "ands":
        return " and ".join(parts)
    if joiner == "plain":
        return ", ".join(parts)
    if len(parts) == 2:
        return f"{parts[0]} and {parts[1]}"
    return ", ".join(parts[:-1]) + ", and " + parts[-1]


def entry(key, authors, title, venue, year=None, style="newblock", explicit=None,
          joiner="oxford", tilde=False, author_src=None, et_al=False, title_render=None):
    """One bib entry spec. `venue` must contain the year exactly as rendered
    (or no four-digit run at all when year is None)."""
    return {
        "key": key,
        "explicit": explicit,
        "authors": authors,
        "title": title,
        "title_render": title_render or title,
        "venue": venue,
        "year": year,
        "style": style,
        "joiner": joiner,
        "tilde": tilde,
        "author_src": author_src,
        "et_al": et_al,
    }


STYLE_PATTERN_ID = {
    "newblock": "newblock",
    "pre_newblock": "pre_newblock",
    "period_quote": "period_quote",
    "bibinfo": "bibinfo_author",
    "bauthor": "bauthor",
    "name": "name_cmd",
    "bibsc": "bibsc",
    "BIBentry": "newblock",
}


def render_entry(e):
    """Returns (latex_text, expected_author_text)."""
    key = e["key"]
    opt = f"[{e['explicit']}]" if e["explicit"] else ""
    src = e["author_src"] or render_author_list(e["authors"], e["joiner"], e["tilde"])
    # No doubled sentence period when the list already ends with initials.
    etal = " et al." if e["et_al"] else ("" if src.endswith(".") else ".")
    title = e["title_render"]
    venue = e["venue"]
    style = e["style"]

    if style in ("newblock", "BIBentry"):
        cmd = "\\BIBentry" if style == "BIBentry" else "\\bibitem"
        text = f"{cmd}{opt}{{{key}}}\n{src}{etal}\n\\newblock {title}.\n\\newblock {venue}\n"
        return text, src + etal
    if style == "pre_newblock":
        text = f"\\bibitem{opt}{{{key}}}\n{src}{etal}\n\\newblock {title}, {venue}\n"
        return text, src + etal
    if style == "period_quote":
        text = f"\\bibitem{opt}{{{key}}}\n{src}{etal} ``{title}.'' {venue}\n"
        return text, src + etal
    if style == "bibinfo":
        groups = [f"\\bibinfo{{author}}{{{render_author(a)}}}" for a in e["authors"]]
        expected = render_author_list(e["authors"], e["joiner"])
        if len(groups) == 1:
            joined = groups[0]
        elif e["joiner"] == "ands":
            joined = " and ".join(groups)
        elif len(groups) == 2:
            joined = f"{groups[0]} and {groups[1]}"
        else:
            joined = ", ".join(groups[:-1]) + " and " + groups[-1]
            expected = ", ".join(render_author(a) for a in e["authors"][:-1]) + \
                " and " + render_author(e["authors"][-1])
        year_cmd = f"\\bibinfo{{year}}{{{e['year']}}}"
        text = (f"\\bibitem{opt}{{{key}}}\n{joined}.\n"
                f"\\newblock \\bibinfo{{title}}{{{title}}}.\n"
                f"\\newblock \\bibinfo{{journal}}{{{venue}}} ({year_cmd}).\n")
        return text, expected
    if style == "bauthor":
        groups = []
        for a in e["authors"]:
            groups.append(f"\\bauthor{{\\bsnm{{{a['last']}}}, \\binits{{{a['first']}}}}}")
        expected_parts = [f"{a['last']}, {a['first']}" for a in e["authors"]]
        if len(groups) == 1:
            joined, expected = groups[0], expected_parts[0]
        else:
            joined = " and ".join(groups)
            expected = " and ".join(expected_parts)
        text = (f"\\bibitemstart{opt}{{{key}}}\n{joined}.\n"
                f"\\newblock {title}.\n\\newblock {venue}\n\\bibitemend\n")
        return text, expected
    if style in ("name", "bibsc"):
        cmd = "Name" if style == "name" else "bibsc"
        groups = [f"\\{cmd}{{{render_author(a)}}}" for a in e["authors"]]
        joined = " and ".join(groups)
        expected = " and ".join(render_author(a) for a in e["authors"])
        text = f"\\bibitem{opt}{{{key}}} {joined}. {title}. {venue}\n"
        return text, expected
    raise ValueError(style)


def expected_record(paper_id, bib_index, ordinal, e, author_text):
    return {
        "paper": paper_id,
        "bib": bib_index,
        "ordinal": ordinal,
        "key": e["key"],
        "explicit_key": e["explicit"],
        "year": e["year"],
        "author_text": author_text,
        "method": "pattern",
        "pattern": STYLE_PATTERN_ID[e["style"]],
        "authors": [{"first": a["first"], "last": a["last"]} for a in e["authors"]],
        "title": e["title"],
        "et_al": e["et_al"],
    }


def paper_document(entries, kind, two_bibs_split=None):
    """Renders one paper. two_bibs_split=k puts the first k entries in a first
    thebibliography environment and the rest in a second one."""
    def bib_env(es):
        body = "".join(render_entry(e)[0] + "\n" for e in es)
        return "\\begin{thebibliography}{99}\n" + body + "\\end{thebibliography}\n"

    if two_bibs_split is None:
        envs = bib_env(entries)
    else:
        envs = bib_env(entries[:two_bibs_split]) + "\n% appendix references\n" + \
            bib_env(entries[two_bibs_split:])
    if kind == "bbl":
        return "% generated bibliography\n" + envs
    return ("\\documentclass{article}\n"
            "\\begin{document}\n"
            "Synthetic corpus paper. % body text\n"
            "We cite \\cite{" + entries[0]["key"] + "}.\n\n"
            + envs +
            "\\end{document}\n")


# ---------------------------------------------------------------------------
# The master table
# ---------------------------------------------------------------------------

def build_papers():
    papers = []

    papers.append(("p01.tex", None, [
        entry("CLR90", [il("T.", "Cormen"), il("C.", "Leiserson"), il("R.", "Rivest")],
              "Introduction to algorithms", "MIT Press, 1990.", 1990),
        entry("GJ90", [il("M.", "Garey"), il("D.", "Johnson")],
              "Computers and intractability", "Freeman, 1990.", 1990),
        entry("BCW93", [il("T.", "Bell"), il("J.", "Cleary"), il("I.", "Witten")],
              "Text compression", "Prentice Hall, 1993.", 1993),
        entry("HU94", [il("J.", "Hopcroft"), il("J.", "Ullman")],
              "Formal languages and automata", "Addison-Wesley, 1994.", 1994),
        entry("MR95", [il("R.", "Motwani"), il("P.", "Raghavan")],
              "Randomized algorithms", "Cambridge University Press, 1995.", 1995),
        entry("AMO93", [il("R.", "Ahuja"), il("T.", "Magnanti"), il("J.", "Orlin")],
              "Network flows theory and applications", "Prentice Hall, 1993.", 1993),
        entry("KT97", [il("J.", "Kleinberg"), il("E.", "Tardos")],
              "Approximation algorithms for disjoint paths", "Proc. FOCS, 1997.", 1997),
        entry("PS98", [il("C.", "Papadimitriou"), il("K.", "Steiglitz")],
              "Combinatorial optimization", "Dover, 1998.", 1998),
    ]))

    papers.append(("p02.tex", None, [
        entry("swift94", [il("T.", "Swift"), il("K.", "Sagonas")],
              "Tabling in logic programming", "Proc. ICLP, 1994.", 1994),
        entry("warren92", [il("D.S.", "Warren"), il("T.", "Swift")],
              "Memoing for logic programs", "CACM 35(3), 1992.", 1992),
        entry("tarjan95", [il("R.", "Tarjan"), il("D.", "Sleator")],
              "Self-adjusting search trees", "Journal of the ACM, 1995.", 1995),
        entry("rivest91", [il("R.", "Rivest"), il("L.", "Adleman")],
              "Cryptographic signatures", "CRYPTO, 1991.", 1991),
        entry("ullman93", [il("J.", "Ullman"), il("A.", "Aho")],
              "Database theory notes", "Stanford lecture notes, 1993.", 1993),
        entry("lamport94", [il("L.", "Lamport")],
              "The temporal logic of actions", "TOPLAS 16(3), 1994.", 1994),
        entry("knuth97", [il("D.", "Knuth")],
              "The art of computer programming", "Addison-Wesley, 1997.", 1997, et_al=True),
        entry("vitter98", [il("J.", "Vitter"), il("E.", "Shriver")],
              "External memory algorithms", "Algorithmica, 1998.", 1998),
        entry("motwani96", [il("R.", "Motwani"), il("P.", "Raghavan")],
              "Randomized rounding notes", "Manuscript, 1996.", 1996),
        entry("goldberg95", [il("A.", "Goldberg"), il("R.", "Tarjan")],
              "Network flow computations", "Math. Programming, 1995.", 1995),
    ]))

    papers.append(("p03.tex", None, [
        entry("tabling96", [il("K.", "Sagonas"), il("T.", "Swift"), il("D.S.", "Warren")],
              "An abstract machine for tabled execution", "Proc. PLDI, 1996.", 1996,
              author_src="K.~Sagonas and T.~Swift and D.S. Warren"),
        entry("temporal-logic", [il("A.", "Pnueli")],
              "The temporal logic of programs", "Proc. FOCS, 1992.", 1992, style="name"),
        entry("model-check93", [il("E.", "Clarke"), il("O.", "Grumberg"), il("D.", "Peled")],
              "Model checking procedures", "Workshop notes, 1993.", 1993),
        entry("lambda-calc", [il("H.", "Barendregt")],
              "The lambda calculus syntax and semantics", "Studies in Logic, volume 103, 1991.",
              1991),
        entry("unification90", [il("J.", "Siekmann")],
              "Aspect unification theory", "J. Symbolic Computation, 1990.", 1990,
              title_render="{A}spect unification theory"),
        entry("rewriting", [il("N.", "Dershowitz"), il("J.", "Jouannaud")],
              "Rewrite systems handbook chapter", "Elsevier, 1990.", 1990),
        entry("prolog-impl", [il("D.", "Warren")],
              "An abstract prolog instruction set", "Technical report SRI.", None),
        entry("types-semantics", [il("B.", "Pierce")],
              "Type systems for programming", "Cambridge notes 1999.", 1999,
              style="pre_newblock"),
    ]))

    papers.append(("p04.tex", None, [
        entry("knuth92", [cl("D.E.", "Knuth")],
              "Literate programming", "CSLI lecture notes, 1992.", 1992),
        entry("taocp93", [il("Donald E.", "Knuth")],
              "Sorting and searching volume", "Addison-Wesley, 1993.", 1993),
        entry("telelogic94", [org("Telelogic")],
              "Telelogic tau reference manual", "Technical documentation, 1994.", 1994),
        entry("sun-jdk", [org("Sun")],
              "Java development kit documentation", "White paper.", None),
        entry("AHSUW95", [il("A.", "Aho"), il("B.", "Hopcroft"), il("C.", "Sethi"),
                          il("J.", "Ullman"), il("D.", "Wood")],
              "Compiler construction principles", "Addison-Wesley, 1995.", 1995),
        entry("graph-drawing", [il("G.", "Di Battista"), il("P.", "Eades"),
                                il("R.", "Tamassia"), il("I.", "Tollis")],
              "Algorithms for drawing graphs", "Computational Geometry, 1994.", 1994),
        entry("cesa-bianchi96", [il("N.", "Cesa-Bianchi"), il("G.", "Lugosi")],
              "Worst case prediction bounds", "Proc. COLT, 1996.", 1996),
        entry("ozsu-valduriez91", [il("A.", "{\\\"O}zsu"), il("P.", "Valduriez")],
              "Distributed database systems", "Prentice Hall, 1991.", 1991),
        entry("partee90", [cl("B.H.", "Partee"), il("A.", "ter Meulen"), il("R.E.", "Wall")],
              "Mathematical methods in linguistics", "Kluwer, 1990.", 1990,
              author_src="Partee,B.H., A. ter Meulen, and R.E. Wall"),
        entry("knuth-etal-97", [il("D.", "Knuth")],
              "Heuristic search methods", "Stanford report, 1997.", 1997, et_al=True),
        entry("cover91", [il("T.", "Cover"), il("J.", "Thomas")],
              "Elements of information theory", "Wiley, 1991.", 1991),
        entry("quicksort-hoare", [il("C.A.R.", "Hoare")],
              "Quicksort analysis revisited", "Computer Journal, 1990.", 1990),
    ]))

    papers.append(("p05.bbl", None, [
        entry("ladner-fischer", [il("R.", "Ladner"), il("M.", "Fischer")],
              "Parallel prefix computation", "Journal of the ACM, 27(4), 1985.", 1985,
              style="period_quote"),
        entry("LR", [il("R.", "Ladner"), il("J.", "Reif")],
              "On parallel computation", "SIAM Journal, 1990.", 1990, style="period_quote"),
        entry("erdos-random", [il("P.", "Erdos")],
              "On random graphs", "Publicationes Mathematicae.", None, style="period_quote"),
        entry("prefix-sums91", [il("G.", "Blelloch")],
              "Prefix sums and applications", "CMU tech report 1991.", 1991,
              style="pre_newblock"),
        entry("valiant90", [il("L.", "Valiant")],
              "A bridging model for parallel computation", "CACM, 1990.", 1990,
              style="period_quote"),
        entry("cook-levin", [il("S.", "Cook")],
              "Complexity of theorem proving", "Complexity compendium, 1995.", 1995,
              style="pre_newblock"),
        entry("JaJa92", [il("J.", "JaJa")],
              "An introduction to parallel algorithms", "Addison-Wesley, 1992.", 1992,
              style="period_quote"),
    ]))

    papers.append(("p06.tex", None, [
        entry("clr90", [il("T.", "Cormen"), il("C.", "Leiserson"), il("R.", "Rivest")],
              "Algorithm design techniques", "MIT Press, 1990.", 1990, explicit="CLR90"),
        entry("gj91", [il("M.", "Garey"), il("D.", "Johnson")],
              "A guide to intractability", "Freeman, 1991.", 1991, explicit="GJ79"),
        entry("ab95", [il("N.", "Alon"), il("R.", "Boppana")],
              "The monotone circuit complexity of boolean functions",
              "Combinatorica, 1995.", 1995, explicit="AB95"),
        entry("pap94", [il("C.", "Papadimitriou")],
              "Computational complexity", "Addison-Wesley, 1994.", 1994, explicit="Pap94"),
        entry("ms96", [il("K.", "Mehlhorn"), il("S.", "Naher")],
              "The LEDA platform", "CACM, 1996.", 1996, explicit="MS96"),
        entry("sv97", [il("B.", "Schieber"), il("U.", "Vishkin")],
              "On finding lowest common ancestors", "SIAM J. Computing, 1997.", 1997,
              explicit="SV97"),
    ]))

    papers.append(("p07.tex", None, [
        entry("termeulen93", [il("A.", "ter Meulen")],
              "Representing time in natural language", "MIT Press, 1993.", 1993),
        entry("vanrijn98", [il("J.", "van Rijn"), il("K.", "Sims")],
              "Adaptive agent architectures", "Proc. AAMAS workshop, 1998.", 1998),
        entry("cesa-bianchi97", [il("N.", "Cesa-Bianchi"), il("Y.", "Freund"),
                                 il("D.", "Haussler")],
              "How to use expert advice", "Journal of the ACM, 1997.", 1997),
        entry("vcdim-learn", [il("V.", "Vapnik"), il("A.", "Chervonenkis")],
              "Uniform convergence of relative frequencies", "Theory of Probability, 1991.",
              1991),
        entry("OV99", [cl("M.T.", "{\\\"O}zsu"), cl("P.", "Valduriez")],
              "Principles of distributed databases", "Prentice Hall, 1999.", 1999,
              joiner="ands"),
        entry("fillmore92", [cl("C.J.", "Fillmore"), il("P.", "Kay"), il("M.C.", "O'Connor")],
              "Regularity and idiomaticity in grammar", "Language 64, 1992.", 1992,
              author_src="Fillmore, C.J., P. Kay, and M.C. O'Connor"),
        entry("vandenberg96", [il("J.", "van den Berg")],
              "Stochastic geometry models", "CWI tract, 1996.", 1996),
        entry("springer-lncs", [org("Springer")],
              "LaTeX class documentation", "Editorial guide.", None),
    ]))

    papers.append(("p08.tex", None, [
        entry("DBLP:conf/stoc/AlonB95", [il("N.", "Alon"), il("R.", "Boppana")],
              "Monotone circuits revisited", "Proc. STOC, 1995.", 1995),
        entry("DBLP:journals/siamcomp/CookL97", [il("S.", "Cook"), il("A.", "Levin")],
              "Reductions and completeness", "SIAM J. Computing, 1997.", 1997),
        entry("DBLP:conf/focs/GoldreichL96", [il("O.", "Goldreich"), il("L.", "Levin")],
              "Hard core predicates", "Proc. FOCS, 1996.", 1996),
        entry("DBLP:journals/jcss/KarpR98", [il("R.", "Karp"), il("M.", "Rabin")],
              "Efficient randomized pattern matching", "JCSS, 1998.", 1998),
        entry("streaming-intro", [il("S.", "Muthukrishnan")],
              "Data streams algorithms and applications", "Foundations and Trends, 1998.", 1998),
        entry("amortized99", [il("R.", "Tarjan")],
              "Amortized computational complexity", "SIAM J. Algebraic Methods, 1999.", 1999),
    ]))

    papers.append(("p09.tex", None, [
        entry("achterberg08", [cl("T.", "Achterberg")],
              "SCIP solving constraint integer programs",
              "Mathematical Programming Computation", 2008, style="bibinfo"),
        entry("gamrath09", [cl("G.", "Gamrath"), cl("M.", "Luebbecke")],
              "Experiments with a generic decomposition", "Operations Research Letters",
              2009, style="bibinfo"),
        entry("berthold06", [cl("T.", "Berthold"), cl("S.", "Heinz")],
              "Primal heuristics for mixed integer programs", "ZIB Report", 2006,
              style="bibinfo"),
        entry("wolter06", [cl("K.", "Wolter")],
              "Implementation of cutting plane separators", "Diploma thesis notes", 2006,
              style="bibinfo"),
        entry("koch04", [cl("T.", "Koch")],
              "Rapid mathematical programming", "Technische Universitaet Berlin", 2004,
              style="bibinfo"),
        entry("pfetsch05", [cl("M.", "Pfetsch"), cl("V.", "Kaibel")],
              "Packing and partitioning orbitopes", "Mathematical Programming", 2005,
              style="bibinfo"),
        entry("lodi02", [cl("A.", "Lodi"), cl("S.", "Martello"), cl("M.", "Monaci")],
              "Two dimensional packing problems, a survey", "EJOR", 2002, style="bibinfo"),
        entry("orlin03", [cl("J.", "Orlin"), cl("A.", "Schulz")],
              "Fast primal heuristics", "Operations Research", 2003, style="bibinfo"),
    ]))

    papers.append(("p10.tex", None, [
        entry("knuth-dek00", [cl("D.E.", "Knuth"), cl("D.S.", "Warren")],
              "Deductive databases in practice", "Springer LNCS, 2000.", 2000,
              style="bauthor"),
        entry("johnson-trick02", [cl("D.", "Johnson"), cl("M.", "Trick")],
              "Cliques coloring and satisfiability", "DIMACS Series, 2002.", 2002,
              style="bauthor"),
        entry("mehlhorn-naher05", [cl("K.", "Mehlhorn"), cl("S.", "Naher")],
              "Algorithm engineering notes", "Springer, 2005.", 2005, style="bauthor"),
        entry("sanders04", [cl("P.", "Sanders")],
              "Algorithm engineering for large data", "Habilitation overview, 2004.", 2004,
              style="bauthor"),
        entry("wagner-willhalm03", [cl("D.", "Wagner"), cl("T.", "Willhalm")],
              "Geometric speed up techniques", "Proc. ESA, 2003.", 2003, style="bauthor"),
        entry("dementiev08", [cl("R.", "Dementiev"), cl("L.", "Kettner"), cl("P.", "Sanders")],
              "STXXL standard template library", "Software Practice, 2008.", 2008,
              style="bauthor"),
    ]))

    papers.append(("p11.tex", None, [
        entry("CM05", [il("G.", "Cormode"), il("S.", "Muthukrishnan")],
              "The count min sketch and its applications", "J. Algorithms, 2005.", 2005,
              style="BIBentry"),
        entry("AMS02", [il("N.", "Alon"), il("Y.", "Matias"), il("M.", "Szegedy")],
              "The space complexity of approximating frequency moments", "JCSS, 2002.",
              2002, style="BIBentry"),
        entry("GGR02", [il("O.", "Goldreich"), il("S.", "Goldwasser"), il("D.", "Ron")],
              "Property testing and learning", "Journal of the ACM, 2002.", 2002,
              style="BIBentry"),
        entry("BYJKS04", [il("Z.", "Bar-Yossef"), il("T.S.", "Jayram"), il("R.", "Kumar"),
                          il("D.", "Sivakumar")],
              "An information statistics approach", "JCSS, 2004.", 2004, style="BIBentry"),
        entry("FKS03", [il("M.", "Fredman"), il("J.", "Komlos"), il("E.", "Szemeredi")],
              "Storing a sparse table", "Journal of the ACM, 2003.", 2003, style="BIBentry"),
        entry("CW09", [il("K.", "Clarkson"), il("D.", "Woodruff")],
              "Numerical linear algebra in the streaming model", "Proc. STOC, 2009.", 2009,
              style="BIBentry"),
    ]))

    papers.append(("p12.tex", None, [
        entry("vardi00", [il("M.", "Vardi")],
              "An automata theoretic approach", "Proc. CAV, 2000.", 2000, style="name"),
        entry("milner01", [cl("R.", "Milner")],
              "Communicating and mobile systems", "Cambridge University Press, 2001.", 2001,
              style="bibsc"),
        entry("emerson-clarke02", [il("E.", "Emerson"), il("E.", "Clarke")],
              "Design and synthesis of synchronization skeletons", "Science of Programming, 2002.",
              2002, style="name"),
        entry("hoare-he04", [cl("C.A.R.", "Hoare"), cl("J.", "He")],
              "Unifying theories of programming", "Prentice Hall, 2004.", 2004, style="bibsc"),
        entry("abadi-cardelli05", [il("M.", "Abadi"), il("L.", "Cardelli")],
              "A theory of objects", "Springer, 2005.", 2005),
        entry("igarashi-pierce01", [il("A.", "Igarashi"), il("B.", "Pierce"), il("P.", "Wadler")],
              "Featherweight Java a minimal core calculus", "TOPLAS, 2001.", 2001),
    ]))

    papers.append(("p13.tex", None, [
        entry("DBLP:conf/sigmod/AbadiM08", [il("D.", "Abadi"), il("S.", "Madden")],
              "Column stores vs row stores", "Proc. SIGMOD, 2008.", 2008),
        entry("survey2003", [il("S.", "Babu"), il("J.", "Widom")],
              "Continuous queries over data streams", "SIGMOD Record, 2003.", 2003),
        entry("thesis-chen04", [il("M.", "Chen")],
              "Query processing architectures", "PhD dissertation, 2004.", 2004),
        entry("streambook07", [il("L.", "Golab"), il("M.T.", "{\\\"O}zsu")],
              "Data stream management", "Morgan Claypool, 2007.", 2007),
        entry("aurora03", [il("D.", "Abadi"), il("D.", "Carney"), il("U.", "Cetintemel"),
                           il("M.", "Cherniack"), il("C.", "Convey")],
              "Aurora a new model for stream processing", "VLDB Journal, 2003.", 2003),
        entry("telegraphcq03", [il("S.", "Chandrasekaran"), il("O.", "Cooper"),
                                il("A.", "Deshpande"), il("M.", "Franklin")],
              "Continuous dataflow processing", "Proc. CIDR, 2003.", 2003),
        entry("gigascope03", [il("C.", "Cranor"), il("T.", "Johnson"), il("O.", "Spatscheck")],
              "A stream database for network applications", "Proc. SIGMOD, 2003.", 2003),
        entry("stream-intro02", [il("B.", "Babcock"), il("S.", "Babu"), il("M.", "Datar"),
                                 il("R.", "Motwani"), il("J.", "Widom")],
              "Models and issues in data stream systems", "Proc. PODS, 2002.", 2002),
        entry("windows-etal05", [il("J.", "Kang"), il("J.", "Naughton")],
              "Evaluating window joins", "Proc. ICDE, 2005.", 2005),
        entry("punctuation02", [il("P.", "Tucker"), il("D.", "Maier")],
              "Exploiting punctuation semantics", "TKDE, 2002.", 2002),
    ]))

    papers.append(("p14.tex", None, [
        entry("BK01", [il("P.", "Beame"), il("S.", "Kahn")],
              "Resolution complexity bounds", "Proc. CCC, 2001.", 2001),
        entry("CP07", [il("T.", "Chan"), il("M.", "Patrascu")],
              "Voronoi diagrams in higher dimensions", "Proc. SODA, 2007.", 2007),
        entry("DI04", [il("E.", "Demaine"), il("P.", "Indyk")],
              "Lower bounds for dynamic problems", "Manuscript, 2004.", 2004),
        entry("EF02", [il("J.", "Erickson"), il("S.", "Fortune")],
              "Geometric shortest paths", "Discrete Geometry, 2002.", 2002),
        entry("GT05", [il("H.", "Gabow"), il("R.", "Tarjan")],
              "Faster scaling algorithms", "SIAM J. Computing, 2005.", 2005),
        entry("HK06", [il("T.", "Hagerup"), il("J.", "Katajainen")],
              "Sorting small sequences", "Nordic J. Computing, 2006.", 2006),
        entry("IPZ01", [il("R.", "Impagliazzo"), il("R.", "Paturi"), il("F.", "Zane")],
              "Which problems have strongly exponential complexity", "JCSS, 2001.", 2001),
        entry("KL08", [il("P.", "Klein"), il("H.", "Lu")],
              "Planar graph decompositions", "Proc. STOC, 2008.", 2008),
    ]))

    papers.append(("p15.bbl", None, [
        entry("pnueli03", [il("A.", "Pnueli"), il("D.", "Harel")],
              "Statecharts retrospective", "Formal Methods, 2003.", 2003),
        entry("vardi01", [il("M.", "Vardi"), il("P.", "Wolper")],
              "Reasoning about infinite computations", "Information and Computation, 2001.", 2001),
        entry("sistla02", [il("A.", "Sistla"), il("E.", "Clarke")],
              "The complexity of propositional temporal logics", "Journal of the ACM, 2002.", 2002),
        entry("thomas04", [il("W.", "Thomas"), il("E.", "Graedel")],
              "Automata logics and infinite games", "Springer LNCS, 2004.", 2004),
        entry("kupferman05", [il("O.", "Kupferman"), il("M.", "Vardi")],
              "Safraless decision procedures", "Proc. FOCS, 2005.", 2005),
        entry("piterman06", [il("N.", "Piterman"), il("A.", "Pnueli")],
              "Synthesis of reactive designs", "Proc. VMCAI, 2006.", 2006),
        entry("semantics07", [il("R.", "Milner")],
              "Bigraphs and their algebra", "ENTCS, 2007.", 2007),
        entry("schewe08", [il("S.", "Schewe"), il("B.", "Finkbeiner")],
              "Bounded synthesis procedures", "Proc. ATVA, 2008.", 2008),
        entry("jobstmann09", [il("B.", "Jobstmann"), il("R.", "Bloem")],
              "Optimizations for ltl synthesis", "Proc. FMCAD, 2009.", 2009),
        entry("ehlers09", [il("R.", "Ehlers"), il("B.", "Finkbeiner")],
              "Symbolic bounded synthesis", "Technical report, 2009.", 2009),
    ]))

    papers.append(("p16.tex", None, [
        entry("flajolet-book09", [il("P.", "Flajolet"), il("R.", "Sedgewick")],
              "Analytic combinatorics", "Cambridge University Press, 2009.", 2009),
        entry("mitzenmacher-survey05", [il("M.", "Mitzenmacher")],
              "A brief history of generative models", "Internet Mathematics, 2005.", 2005),
        entry("phd-pagh02", [il("R.", "Pagh")],
              "Dispersing hash functions", "BRICS dissertation series, 2002.", 2002),
        entry("tutorial-indyk04", [il("P.", "Indyk")],
              "Sketching streams tutorial", "Summer school notes, 2004.", 2004),
        entry("report-feige07", [il("U.", "Feige")],
              "Refuting smoothed instances", "Weizmann report, 2007.", 2007),
        entry("lecture-spielman09", [il("D.", "Spielman")],
              "Spectral graph theory lectures", "Yale course notes, 2009.", 2009),
        entry("manual-lapack00", [il("E.", "Anderson"), il("Z.", "Bai")],
              "LAPACK users guide", "SIAM, 2000.", 2000),
        entry("standard-ieee08", [org("IEEE")],
              "Floating point arithmetic standard", "IEEE Std 754-2008.", 2008),
    ]))

    papers.append(("p17.tex", None, [
        entry("CMY05", [il("G.", "Cormode"), il("S.", "Muthukrishnan"), il("J.", "Yan")],
              "Scienceography studies", "Technical report, 2005.", 2005),
        entry("CormodeMY08", [il("G.", "Cormode"), il("S.", "Muthukrishnan"), il("J.", "Yan")],
              "People like us analysis", "Proc. workshop, 2008.", 2008),
        entry("CorMutYan02", [il("G.", "Cormode"), il("S.", "Muthukrishnan"), il("J.", "Yan")],
              "Comparing data streams", "Proc. conference, 2002.", 2002),
        entry("CGHJ09", [il("G.", "Cormode"), il("M.", "Garofalakis"), il("P.", "Haas"),
                         il("C.", "Jermaine")],
              "Synopses for massive data", "Foundations and Trends, 2009.", 2009),
        entry("GKMS01", [il("A.", "Gilbert"), il("Y.", "Kotidis"), il("S.", "Muthukrishnan"),
                         il("M.", "Strauss")],
              "Surfing wavelets on streams", "Proc. VLDB, 2001.", 2001),
        entry("muthu05", [il("S.", "Muthukrishnan")],
              "Data stream algorithms overview", "Now Publishers, 2005.", 2005),
        entry("CKMS06", [il("G.", "Cormode"), il("F.", "Korn"), il("S.", "Muthukrishnan"),
                         il("D.", "Srivastava")],
              "Space and time efficient quantiles", "Proc. ICDE, 2006.", 2006),
        entry("indyk-woodruff05", [il("P.", "Indyk"), il("D.", "Woodruff")],
              "Optimal approximations of frequency moments", "Proc. STOC, 2005.", 2005),
    ]))

    papers.append(("p18.tex", None, [
        entry("AB04", [il("S.", "Arora"), il("B.", "Barak")],
              "Complexity theory a modern approach", "Draft chapters, 2004.", 2004),
        entry("arora07", [il("S.", "Arora"), il("S.", "Safra")],
              "Probabilistic checking of proofs", "Journal of the ACM, 2007.", 2007),
        entry("ZN03", [il("D.", "Zuckerman"), il("N.", "Nisan")],
              "Randomness is linear in space", "JCSS, 2003.", 2003),
        entry("wigderson08", [il("A.", "Wigderson"), il("S.", "Goldwasser")],
              "Derandomization perspectives", "Survey lecture, 2008.", 2008),
        entry("circuits01", [il("M.", "Ajtai"), il("J.", "Komlos")],
              "Sorting networks revisited", "Combinatorica, 2001.", 2001),
        entry("sorting-nets02", [il("E.", "Szemeredi"), il("M.", "Ajtai")],
              "Depth optimal networks", "Proc. STOC, 2002.", 2002),
        entry("GM07", [il("S.", "Goldwasser"), il("S.", "Micali")],
              "Probabilistic encryption revisited", "JCSS, 2007.", 2007),
        entry("naor06", [il("M.", "Naor"), il("U.", "Feige")],
              "Zero knowledge and commitments", "Proc. CRYPTO, 2006.", 2006),
    ]))

    papers.append(("p19.tex", None, [
        entry("lif99", [il("V.", "Lifschitz")],
              "Logic programs with classical negation",
              "Philosophical studies reprint volume, 1999.", 1999),
        entry("smith00", [il("J.", "Smith"), il("K.", "Jones")],
              "Empirical methods overview", "Proceedings, 1999.", 1999),
        entry("byear-demo03", [il("T.", "Suzuki")],
              "Annotated bibliography formats", "Journal archive, \\byear{2003}.", 2003),
        entry("multi-cand", [il("R.", "Baeza-Yates")],
              "Approximate string matching", "Volume 2001 of LNCS, Springer, 2005.", 2001),
        entry("gupta07", [il("A.", "Gupta")],
              "Embeddings of finite metrics", "Journal 39(2), 2007.", 2007),
        entry("twodigit72", [il("V.", "Strassen")],
              "Gaussian elimination is not optimal", "Numerische Mathematik, 1972.", 1972),
        entry("pages-trap05", [il("K.", "Mulmuley")],
              "Geometric complexity theory", "pages 1035--1100, SODA, 2005.", 2005),
    ]))

    papers.append(("p20.tex", 5, [
        entry("cover01", [il("T.", "Cover"), il("J.", "Thomas")],
              "Network information theory elements", "Wiley, 2001.", 2001),
        entry("coverage-sensors03", [il("S.", "Kumar"), il("T.", "Lai")],
              "Coverage problems in wireless sensor networks", "Proc. MobiCom, 2003.", 2003),
        entry("zhu-coverage05", [il("Y.", "Zhu"), il("M.", "Li")],
              "Barrier coverage models", "Proc. INFOCOM, 2005.", 2005),
        entry("CT06", [il("T.", "Cover"), il("J.", "Thomas")],
              "Elements of information theory second edition", "Wiley, 2006.", 2006),
        entry("info-theory-notes", [il("R.", "Gallager")],
              "Information theory course material", "Course notes.", None),
        entry("shannon01", [il("C.", "Shannon")],
              "A mathematical theory of communication", "Reprint collection, 2001.", 2001),
        entry("kraft-inequality02", [il("L.", "Kraft")],
              "Prefix codes and inequalities", "Archive volume, 2002.", 2002),
        entry("huffman-codes04", [il("D.", "Huffman")],
              "Minimum redundancy codes", "Reprint series, 2004.", 2004),
    ]))

    return papers


# ---------------------------------------------------------------------------
# Bad fixtures for parser edge-case tests
# ---------------------------------------------------------------------------

BAD_FILES = {
    "unbalanced.tex": "\\begin{thebibliography}{9}\n\\bibitem{a} A. Author.\n",
    "nested.tex": ("\\begin{thebibliography}{9}\n\\bibitem{a} X.\n"
                   "\\begin{thebibliography}{9}\n\\bibitem{b} Y.\n"
                   "\\end{thebibliography}\n\\end{thebibliography}\n"),
    "dangling.bbl": ("\\begin{thebibliography}{9}\n\\bibitemstart{a}\nA. Author.\n"
                     "\\end{thebibliography}\n"),
    "missingkey.tex": ("\\begin{thebibliography}{9}\n"
                       "\\bibitem{good96}\nA. Author.\n\\newblock Fine title.\n"
                       "\\newblock Venue, 1996.\n"
                       "\\bibitem\nB. Broken.\n\\newblock No key above.\n"
                       "\\newblock Venue, 1997.\n"
                       "\\end{thebibliography}\n"),
    "harvard.tex": ("\\begin{thebibliography}{9}\n"
                    "\\harvarditem{Smith}{1990}{smith90} J. Smith. Old style.\n"
                    "\\bibitem{ok91}\nC. Clean.\n\\newblock Good title.\n"
                    "\\newblock Venue, 1991.\n"
                    "\\end{thebibliography}\n"),
    "comments.tex": ("% leading comment about \\bibitem{ghost}\n"
                     "\\begin{thebibliography}{9}\n"
                     "\\bibitem{real94} % trailing comment\n"
                     "A. Real.\n\\newblock 100\\% genuine title.\n"
                     "\\newblock Venue, 1994.\n"
                     "% \\bibitem{commented-out}\n"
                     "\\end{thebibliography}\n"),
}


def main():
    os.makedirs(CORPUS_DIR, exist_ok=True)
    os.makedirs(BAD_DIR, exist_ok=True)

    papers = build_papers()
    truth = []
    for paper_id, two_bibs_split, entries in papers:
        kind = "bbl" if paper_id.endswith(".bbl") else "tex"
        doc = paper_document(entries, kind, two_bibs_split)
        with open(os.path.join(CORPUS_DIR, paper_id), "w", encoding="utf-8") as f:
            f.write(doc)
        for idx, e in enumerate(entries):
            if two_bibs_split is None or idx < two_bibs_split:
                bib, ordinal = 0, idx
            else:
                bib, ordinal = 1, idx - two_bibs_split
            _, author_text = render_entry(e)
            truth.append(expected_record(paper_id, bib, ordinal, e, author_text))

    with open(os.path.join(CORPUS_DIR, "ground_truth.ndjson"), "w", encoding="utf-8") as f:
        for record in truth:
            f.write(json.dumps(record, separators=(",", ":"), ensure_ascii=False) + "\n")

    for name, content in BAD_FILES.items():
        with open(os.path.join(BAD_DIR, name), "w", encoding="utf-8") as f:
            f.write(content)
    # One file with a broken UTF-8 byte.
    with open(os.path.join(BAD_DIR, "nonutf8.bbl"), "wb") as f:
        f.write(b"\\begin{thebibliography}{9}\n"
                b"\\bibitem{latin1-95}\nJ. M\xfcller.\n\\newblock Encoding pitfalls.\n"
                b"\\newblock Venue, 1995.\n"
                b"\\end{thebibliography}\n")

    print(f"wrote {len(papers)} papers, {len(truth)} entries, {len(BAD_FILES) + 1} bad fixtures")


if __name__ == "__main__":
    main()
