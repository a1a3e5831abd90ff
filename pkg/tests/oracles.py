"""Independent brute-force reference implementations used by the tests.

Nothing here imports from ``lexsum``.
"""
import math
from itertools import combinations


def lesk_bruteforce(g1, g2, max_n=2):
    total = 0
    for n in range(1, max_n + 1):
        grams1 = [" ".join(g1[i:i + n]) for i in range(len(g1) - n + 1)]
        grams2 = [" ".join(g2[i:i + n]) for i in range(len(g2) - n + 1)]
        shared = []
        for a in grams1:
            if a in shared:
                continue
            for b in grams2:
                if a == b:
                    shared.append(a)
                    break
        total += len(shared)
    return total


def rouge_bruteforce(refs, cand, n):
    cand_grams = [tuple(cand[i:i + n]) for i in range(len(cand) - n + 1)]
    matched = total = 0
    for ref in refs:
        ref_grams = [tuple(ref[i:i + n]) for i in range(len(ref) - n + 1)]
        total += len(ref_grams)
        for g in set(ref_grams):
            in_ref = sum(1 for x in ref_grams if x == g)
            in_cand = sum(1 for x in cand_grams if x == g)
            matched += min(in_ref, in_cand)
    return matched / total


def _cos(u, v):
    dot = math.fsum(a * b for a, b in zip(u, v))
    return dot / (math.sqrt(math.fsum(a * a for a in u)) * math.sqrt(math.fsum(b * b for b in v)))


def cluster_oracle(vectors, threshold, linkage="centroid", tol=1e-12):
    """Final partition chosen among all merge orders under the tie rule.

    Every sequence of pairwise merges is enumerated. A sequence is legal
    when each step merges a pair whose similarity is maximal at that step
    and not below ``threshold``, and it ends exactly when no pair reaches
    the threshold. Among legal sequences, the one whose list of merged
    (lower id, higher id) pairs is lexicographically smallest wins; a
    cluster's id is its smallest chain index.
    """
    def profile(cluster):
        return [sum(vectors[i][k] for i in cluster) for k in range(len(vectors[0]))]

    def sim(a, b):
        if linkage == "centroid":
            return _cos(profile(a), profile(b))
        vals = [_cos(vectors[i], vectors[j]) for i in a for j in b]
        return math.fsum(vals) / len(vals)

    legal = []

    def walk(clusters, history):
        pairs = list(combinations(sorted(clusters, key=min), 2))
        sims = {p: sim(*p) for p in pairs}
        best = max(sims.values()) if sims else None
        if best is None or best < threshold:
            legal.append((history, clusters))
            return
        for (a, b), s in sims.items():
            if s >= best - tol:
                merged = [c for c in clusters if c not in (a, b)] + [a | b]
                walk(merged, history + [(min(a), min(b))])

    walk([frozenset([i]) for i in range(len(vectors))], [])
    history, clusters = min(legal, key=lambda h: h[0])
    outcomes = {tuple(sorted(tuple(sorted(c)) for c in cl)) for _, cl in legal}
    return sorted(sorted(c) for c in clusters), outcomes


# sentence indices of each chain's members, six sentences in all; chains 2
# and 3 coincide and several pairs tie on cosine
CLUSTER_POOL = [
    [0, 0, 1],
    [0, 1],
    [2, 3],
    [2, 3],
    [3, 4, 5],
    [1, 2],
    [5, 5, 4],
]
CLUSTER_SENTENCES = 6
CLUSTER_THRESHOLDS = [0.0, 0.3, 0.5, 0.7, 0.9, 1.0, 1.01]


def occurrence(sentences, n):
    return [sentences.count(k) for k in range(n)]
