"""Record the brute-force sense-overlap oracle for the bank/river and
bank/money pairs as a JSON fixture.

This deliberately shares no code with ``lexsum``: it reads the original
WordNet 3.0 database files (data.noun, index.sense), walks hypernym pointers
by explicit path enumeration, and counts gloss n-gram overlaps by listing
every n-gram of both glosses.

Usage: python tools/record_wsd_oracle.py WNDB_DIR STOPLIST OUT.json
"""
import json
import re
import sys
from collections import defaultdict

DEPTH = 3
LAMBDA = 5
THRESHOLD = 2
PAIRS = [("bank", "river"), ("bank", "money")]


def read_db(db_dir):
    hypernyms, glosses = {}, {}
    with open(f"{db_dir}/data.noun", encoding="latin-1") as fh:
        for line in fh:
            if line.startswith("  "):
                continue
            head, _, gloss = line.partition(" | ")
            t = head.split()
            sid = 100_000_000 + int(t[0])
            n_words = int(t[3], 16)
            i = 4 + 2 * n_words
            hyps = []
            for k in range(int(t[i])):
                sym, off, pos, _ = t[i + 1 + 4 * k: i + 5 + 4 * k]
                if sym == "@" and pos == "n":
                    hyps.append(100_000_000 + int(off))
            hypernyms[sid] = hyps
            glosses[sid] = gloss.strip()
    senses = defaultdict(list)
    with open(f"{db_dir}/index.sense", encoding="latin-1") as fh:
        for line in fh:
            key, off, number, _ = line.split()
            lemma, rest = key.split("%")
            if rest.startswith("1:"):
                senses[lemma].append((int(number), 100_000_000 + int(off)))
    return hypernyms, glosses, {k: [s for _, s in sorted(v)] for k, v in senses.items()}


def all_paths(start, hypernyms, depth):
    """Every root-to-node path of at most ``depth`` synsets starting at ``start``."""
    paths = [[start]]
    frontier = [[start]]
    for _ in range(depth - 1):
        nxt = []
        for path in frontier:
            for h in hypernyms.get(path[-1], []):
                if h not in path:
                    nxt.append(path + [h])
        paths += nxt
        frontier = nxt
    return paths


def ngrams(tokens, n):
    return [" ".join(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


def main(db_dir, stoplist, out):
    stop = set()
    for line in open(stoplist, encoding="utf-8"):
        line = line.split("#")[0].strip()
        if line:
            stop.add(line)
    hypernyms, glosses, senses = read_db(db_dir)

    def gloss_tokens(sid):
        return [w for w in re.findall(r"[a-z]+", glosses[sid].lower()) if w not in stop]

    def pair_score(s1, s2, w1, w2):
        g1, g2 = gloss_tokens(s1), gloss_tokens(s2)
        score = 0
        for n in (1, 2):
            shared = set()
            for a in ngrams(g1, n):
                for b in ngrams(g2, n):
                    if a == b:
                        shared.add(a)
            score += len(shared)
        if w1 in g2 or w2 in g1:
            score += LAMBDA
        return score

    def side(w, other):
        own, theirs = senses[w], senses[other]
        overlaps = []
        for s in own:
            reached = {node for p in all_paths(s, hypernyms, DEPTH) for node in p}
            overlaps.append(sum(1 for t in theirs if t in reached))
        gloss = [max(pair_score(s, t, w, other) for t in theirs) for s in own]
        if max(overlaps) > 0:
            chosen, method = own[overlaps.index(max(overlaps))], "pair_overlap"
        elif max(gloss) > THRESHOLD:
            chosen, method = own[gloss.index(max(gloss))], "gloss_overlap"
        else:
            chosen, method = own[0], "first_sense"
        literal = own[overlaps.index(max(overlaps))] if max(overlaps) > 0 else own[0]
        return {
            "senses": own,
            "tree_overlaps": overlaps,
            "gloss_scores": gloss,
            "chosen": chosen,
            "method": method,
            "chosen_gloss": glosses[chosen],
            "literal_chosen": literal,
        }

    record = {
        "depth": DEPTH,
        "lambda": LAMBDA,
        "threshold": THRESHOLD,
        "relations": ["hypernym"],
        "pairs": [
            {"words": [a, b], a: side(a, b), b: side(b, a)} for a, b in PAIRS
        ],
    }
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(record, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main(*sys.argv[1:4])
