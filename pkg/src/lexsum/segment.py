"""Chain clustering by sentence occurrence and topic sequence extraction."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from .chains import LexicalChain
from .errors import ConfigError, IndexOutOfRange, ZeroVector

TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ChainCluster:
    id: int
    chains: tuple[LexicalChain, ...]
    score: float
    profile: tuple[int, ...]

    @property
    def f(self) -> int:
        return len(self.chains)


@dataclass(frozen=True)
class TopicSequence:
    cluster_id: int
    start_sentence: int
    end_sentence: int
    l: int  # noqa: E741
    slc: int
    plc: int
    score: float = 0.0

    @property
    def sentences(self) -> range:
        return range(self.start_sentence, self.end_sentence + 1)


def occurrence_vector(chain: LexicalChain, n_sentences: int) -> tuple[int, ...]:
    if not chain.members:
        raise ValueError("empty chain has no occurrence vector")
    counts = [0] * n_sentences
    for m in chain.members:
        if not 0 <= m.sentence_index < n_sentences:
            raise IndexOutOfRange(
                f"member {m.lemma!r} in sentence {m.sentence_index} outside 0..{n_sentences - 1}"
            )
        counts[m.sentence_index] += 1
    return tuple(counts)


def cosine(v1: Sequence[float], v2: Sequence[float]) -> float:
    if len(v1) != len(v2):
        raise ValueError(f"length mismatch: {len(v1)} != {len(v2)}")
    n1 = math.sqrt(sum(x * x for x in v1))
    n2 = math.sqrt(sum(x * x for x in v2))
    if n1 == 0 or n2 == 0:
        raise ZeroVector("cosine of a zero vector is undefined")
    return sum(a * b for a, b in zip(v1, v2)) / (n1 * n2)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mean(values):
    return sum(values) / len(values)


def cluster_chains(
    chains: Sequence[LexicalChain],
    stop_threshold: float = 0.5,
    n_sentences: int | None = None,
    linkage: str = "centroid",
) -> list[ChainCluster]:
    """Agglomerative clustering of chains by sentence-occurrence cosine.

    Every chain starts in its own cluster (id = position in ``chains``). The
    most similar pair is merged until the best similarity drops below
    ``stop_threshold``; ties go to the lexicographically smallest id pair and
    the merged cluster keeps the smaller id. ``linkage="centroid"`` compares
    summed profiles, ``"average"`` averages member-pair cosines.
    """
    if linkage not in ("centroid", "average"):
        raise ConfigError(f"unknown linkage {linkage!r}")
    if not chains:
        return []
    if n_sentences is None:
        n_sentences = 1 + max(m.sentence_index for c in chains for m in c.members)
    vectors = [occurrence_vector(c, n_sentences) for c in chains]
    # cluster id -> member chain positions
    clusters: dict[int, list[int]] = {i: [i] for i in range(len(chains))}
    profiles = {i: vectors[i] for i in range(len(chains))}

    def similarity(a, b):
        if linkage == "centroid":
            return cosine(profiles[a], profiles[b])
        return _mean([cosine(vectors[i], vectors[j]) for i in clusters[a] for j in clusters[b]])

    while len(clusters) > 1:
        ids = sorted(clusters)
        best = None
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                sim = similarity(ids[x], ids[y])
                if best is None or sim > best[0] + TIE_TOLERANCE:
                    best = (sim, ids[x], ids[y])
        sim, a, b = best
        if sim < stop_threshold:
            break
        clusters[a].extend(clusters.pop(b))
        profiles[a] = _add(profiles[a], profiles.pop(b))

    out = []
    for cid in sorted(clusters):
        members = tuple(chains[i] for i in sorted(clusters[cid]))
        out.append(ChainCluster(cid, members, _mean([c.score for c in members]), profiles[cid]))
    return out


def sequence_score(seq: TopicSequence, cluster: ChainCluster) -> float:
    """Cluster score * length * ((1 + chains starting) + chains present) / f**2."""
    f = cluster.f
    if f < 1:
        raise ValueError("cluster has no chains")
    return cluster.score * seq.l * ((1 + seq.slc) + seq.plc) / (f * f)


def extract_sequences(cluster: ChainCluster, doc=None) -> list[TopicSequence]:
    """Maximal runs of consecutive sentences touched by the cluster, scored."""
    profile = cluster.profile
    if doc is not None and len(profile) < len(doc.sentences):
        profile = profile + (0,) * (len(doc.sentences) - len(profile))
    runs = []
    start = None
    for k, count in enumerate(profile):
        if count > 0 and start is None:
            start = k
        elif count == 0 and start is not None:
            runs.append((start, k - 1))
            start = None
    if start is not None:
        runs.append((start, len(profile) - 1))

    out = []
    for start, end in runs:
        slc = plc = 0
        for chain in cluster.chains:
            idx = [m.sentence_index for m in chain.members]
            if start <= min(idx) <= end:
                slc += 1
            if any(start <= i <= end for i in idx):
                plc += 1
        seq = TopicSequence(cluster.id, start, end, end - start + 1, slc, plc)
        out.append(replace(seq, score=sequence_score(seq, cluster)))
    return out
