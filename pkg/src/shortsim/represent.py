"""Fragment representations: tf-idf and word embedding aggregation schemes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .embeddings import DfTable, EmbeddingTable
from .factors import ImportanceFactors

AGGREGATION_KINDS = (
    "mean",
    "max",
    "min",
    "minmax_concat",
    "mean_top_idf",
    "max_top_idf",
    "minmax_top_idf",
    "mean_idf_weighted",
    "mean_importance",
)

_TOP_IDF_KINDS = ("mean_top_idf", "max_top_idf", "minmax_top_idf")


@dataclass
class AggregationMethod:
    """Aggregation scheme selector.

    ``top_fraction`` applies to the top-idf variants only; ``factors`` must be
    given exactly for ``mean_importance``.
    """

    kind: str
    top_fraction: float = 0.3
    factors: ImportanceFactors | None = None

    def __post_init__(self) -> None:
        if self.kind not in AGGREGATION_KINDS:
            raise ValueError(
                f"unknown aggregation kind {self.kind!r}; valid: {', '.join(AGGREGATION_KINDS)}"
            )
        if not 0.0 < self.top_fraction <= 1.0:
            raise ValueError("top_fraction must be in (0, 1]")
        if (self.factors is not None) != (self.kind == "mean_importance"):
            raise ValueError("factors must be present iff kind == 'mean_importance'")


def tfidf_vector(fragment: Sequence[str], df: DfTable) -> dict[str, float]:
    """Sparse tf-idf entries: in-fragment count times idf, zero-idf words dropped."""
    counts: dict[str, int] = {}
    for word in fragment:
        counts[word] = counts.get(word, 0) + 1
    out: dict[str, float] = {}
    for word, count in counts.items():
        w_idf = df.idf(word)
        if w_idf != 0.0:
            out[word] = count * w_idf
    return out


def sparse_cosine_similarity(a: dict[str, float], b: dict[str, float]) -> float:
    """Cosine similarity of two sparse vectors; 0 if either is empty."""
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    if na == 0.0 or nb == 0.0:
        return 0.0
    if len(b) < len(a):
        a, b = b, a
    dot = sum(v * b[w] for w, v in a.items() if w in b)
    return dot / (na * nb)


def _fragment_matrix(fragment: Sequence[str], emb: EmbeddingTable) -> np.ndarray:
    if len(fragment) == 0:
        raise ValueError("cannot aggregate an empty fragment")
    return emb.rows(fragment)


def aggregate_mean(fragment: Sequence[str], emb: EmbeddingTable) -> np.ndarray:
    return _fragment_matrix(fragment, emb).mean(axis=0)


def aggregate_max(fragment: Sequence[str], emb: EmbeddingTable) -> np.ndarray:
    return _fragment_matrix(fragment, emb).max(axis=0)


def aggregate_min(fragment: Sequence[str], emb: EmbeddingTable) -> np.ndarray:
    return _fragment_matrix(fragment, emb).min(axis=0)


def aggregate_minmax_concat(fragment: Sequence[str], emb: EmbeddingTable) -> np.ndarray:
    mat = _fragment_matrix(fragment, emb)
    return np.concatenate([mat.max(axis=0), mat.min(axis=0)])


def filter_top_idf(
    fragment: Sequence[str], df: DfTable, fraction: float
) -> list[str]:
    """Keep the round(fraction * len) tokens with the highest idf, at least one.

    Idf ties break toward the earlier fragment position; survivors keep their
    original order.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError("fraction must be in (0, 1]")
    n = len(fragment)
    if n == 0:
        return []
    keep = max(1, int(math.floor(fraction * n + 0.5)))
    if keep >= n:
        return list(fragment)
    ranked = sorted(range(n), key=lambda i: (-df.idf(fragment[i]), i))
    kept = sorted(ranked[:keep])
    return [fragment[i] for i in kept]


def aggregate_idf_weighted_mean(
    fragment: Sequence[str], emb: EmbeddingTable, df: DfTable
) -> np.ndarray:
    """Mean of the word vectors, each scaled by its idf value."""
    mat = _fragment_matrix(fragment, emb)
    weights = np.array([df.idf(w) for w in fragment], dtype=np.float64)
    return (weights[:, None] * mat).mean(axis=0)


def sort_by_df(fragment: Sequence[str], df: DfTable) -> list[str]:
    """Rarest-first ordering: ascending document frequency, ties keep fragment order."""
    return sorted(fragment, key=lambda w: df.lookup(w))


def aggregate_importance_weighted(
    fragment: Sequence[str],
    emb: EmbeddingTable,
    df: DfTable,
    factors: ImportanceFactors,
) -> np.ndarray:
    """Mean of df-sorted word vectors scaled by the learned importance factors."""
    n = len(fragment)
    if factors.n_words != n:
        raise ValueError(
            f"factors length {factors.n_words} != fragment length {n}"
        )
    mat = _fragment_matrix(fragment, emb)
    order = sorted(range(n), key=lambda i: df.lookup(fragment[i]))
    # Scatter each rank's factor onto its original slot; summing in fragment
    # order keeps this bit-identical to aggregate_mean when all factors are 1.
    weights = np.empty(n, dtype=np.float64)
    weights[order] = factors.values
    return (weights[:, None] * mat).mean(axis=0)


def vectorize(
    fragment: Sequence[str],
    method: AggregationMethod,
    emb: EmbeddingTable,
    df: DfTable | None = None,
) -> np.ndarray:
    """Apply the selected aggregation scheme to one fragment."""
    kind = method.kind
    if kind == "mean":
        return aggregate_mean(fragment, emb)
    if kind == "max":
        return aggregate_max(fragment, emb)
    if kind == "min":
        return aggregate_min(fragment, emb)
    if kind == "minmax_concat":
        return aggregate_minmax_concat(fragment, emb)
    if df is None:
        raise ValueError(f"method {kind!r} needs a document-frequency table")
    if kind in _TOP_IDF_KINDS:
        reduced = filter_top_idf(fragment, df, method.top_fraction)
        if kind == "mean_top_idf":
            return aggregate_mean(reduced, emb)
        if kind == "max_top_idf":
            return aggregate_max(reduced, emb)
        return aggregate_minmax_concat(reduced, emb)
    if kind == "mean_idf_weighted":
        return aggregate_idf_weighted_mean(fragment, emb, df)
    assert kind == "mean_importance"
    assert method.factors is not None
    return aggregate_importance_weighted(fragment, emb, df, method.factors)


def vector_csv_row(vec: np.ndarray) -> str:
    """Comma-separated decimal rendering with 9 significant digits."""
    return ",".join(f"{v:.9g}" for v in np.asarray(vec))
