"""Synthetic topic corpus used by the training and acceptance tests.

Each topic owns five rare informative words whose embedding vectors cluster
around the topic center. Fragments pad them with fifteen filler words drawn
from a shared pool of pure noise vectors, one word per document-frequency
tier. Pair fragments reuse the first fragment's filler choices with a
tier-dependent probability that fades with frequency, mimicking how adjacent
windows of real text repeat mid-frequency vocabulary while the most common
words coincide everywhere. After rarest-first sorting, positions 1-5 hold the
informative words and positions 6-20 map to the filler tiers in order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from shortsim.corpus import NONPAIR, PAIR, Couple
from shortsim.embeddings import DfTable, EmbeddingTable

N_INFORMATIVE = 5
N_TIERS = 15
N_WORDS = N_INFORMATIVE + N_TIERS
DOC_COUNT = 100_000


@dataclass
class SyntheticCorpus:
    emb: EmbeddingTable
    df: DfTable
    couples: list[Couple]
    n_words: int = N_WORDS


def build_corpus(
    n_couples: int = 30_000,
    n_topics: int = 50,
    dim: int = 16,
    seed: int = 2024,
    topic_scale: float = 0.6,
    informative_noise: float = 0.35,
    filler_scale: float = 1.6,
    words_per_tier: int = 4,
    max_reuse: float = 0.9,
) -> SyntheticCorpus:
    """Generate a balanced couple set plus matching embedding and df tables."""
    rng = np.random.default_rng(seed)

    words: list[str] = []
    vectors: list[np.ndarray] = []
    df: dict[str, int] = {}

    centers = rng.normal(0.0, topic_scale / np.sqrt(dim), size=(n_topics, dim))
    topic_words = []
    for t in range(n_topics):
        names = []
        for k in range(N_INFORMATIVE):
            name = f"t{t}w{k}"
            names.append(name)
            words.append(name)
            vectors.append(
                centers[t] + rng.normal(0.0, informative_noise / np.sqrt(dim), size=dim)
            )
            # Rare and distinct: all informative dfs sit far below any filler df.
            df[name] = 20 + k * 60 + t
        topic_words.append(names)

    tier_words = []
    for tier in range(N_TIERS):
        names = []
        for m in range(words_per_tier):
            name = f"f{tier}x{m}"
            names.append(name)
            words.append(name)
            vectors.append(rng.normal(0.0, filler_scale / np.sqrt(dim), size=dim))
            df[name] = 2000 + tier * 4000 + m
        tier_words.append(names)

    # Reuse probability decays across tiers: mid-frequency words repeat within
    # a pair's two windows, the most common words coincide by chance anyway.
    reuse = max_reuse * (1.0 - np.arange(N_TIERS) / N_TIERS)

    def draw_fillers(base: list[str] | None) -> list[str]:
        chosen = []
        for tier in range(N_TIERS):
            pool = tier_words[tier]
            if base is not None and rng.random() < reuse[tier]:
                chosen.append(base[tier])
            else:
                chosen.append(pool[int(rng.integers(len(pool)))])
        return chosen

    def assemble(informative: list[str], fillers: list[str]) -> tuple[str, ...]:
        tokens = list(informative) + list(fillers)
        rng.shuffle(tokens)
        return tuple(tokens)

    couples: list[Couple] = []
    n_pairs = n_couples // 2
    for i in range(n_couples):
        if i < n_pairs:
            t = int(rng.integers(n_topics))
            fillers1 = draw_fillers(None)
            fillers2 = draw_fillers(fillers1)
            couples.append(
                Couple(
                    assemble(topic_words[t], fillers1),
                    assemble(topic_words[t], fillers2),
                    PAIR,
                )
            )
        else:
            t = int(rng.integers(n_topics))
            s = int(rng.integers(n_topics - 1))
            if s >= t:
                s += 1
            couples.append(
                Couple(
                    assemble(topic_words[t], draw_fillers(None)),
                    assemble(topic_words[s], draw_fillers(None)),
                    NONPAIR,
                )
            )

    emb = EmbeddingTable(words, np.array(vectors))
    return SyntheticCorpus(emb=emb, df=DfTable(DOC_COUNT, df), couples=couples)
