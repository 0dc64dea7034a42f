"""Learning the global importance factors with minibatch SGD + momentum.

The objective, over a couple set D with factor vector i:

    J(i) = (1/|D|) * sum_c sign(c) * d(o1, o2)  +  lambda * sum_j i_j**2

where sign is +1 for pairs and -1 for non-pairs, d is the squared Euclidean
distance and o1/o2 are the factor-weighted means of the df-sorted word
vectors of the two fragments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import kernels
from .corpus import Couple
from .embeddings import DfTable, EmbeddingTable
from .factors import ImportanceFactors
from .metrics import squared_euclidean
from .represent import aggregate_importance_weighted


@dataclass
class TrainConfig:
    batch_size: int = 100
    learning_rate: float = 0.1
    momentum: float = 0.9
    reg_lambda: float = 0.0015
    init_value: float = 0.5
    epochs: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if not 0.0 <= self.momentum < 1.0:
            raise ValueError("momentum must be in [0, 1)")
        if self.learning_rate <= 0.0:
            raise ValueError("learning_rate must be positive")
        if self.reg_lambda < 0.0:
            raise ValueError("reg_lambda must be nonnegative")
        if self.epochs < 0:
            raise ValueError("epochs must be nonnegative")

    def as_json_dict(self) -> dict[str, Any]:
        """Key layout used in the persisted factors JSON."""
        return {
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "momentum": self.momentum,
            "lambda": self.reg_lambda,
            "init_value": self.init_value,
            "epochs": self.epochs,
            "seed": self.seed,
        }


@dataclass
class TrainResult:
    factors: ImportanceFactors
    objective_trace: list[float]


def couple_loss(
    couple: Couple,
    factors: ImportanceFactors,
    emb: EmbeddingTable,
    df: DfTable,
) -> float:
    """Signed squared-Euclidean distance between the weighted fragment means."""
    if factors.n_words != couple.n_words:
        raise ValueError(
            f"factors length {factors.n_words} != couple length {couple.n_words}"
        )
    rep1 = aggregate_importance_weighted(couple.first, emb, df, factors)
    rep2 = aggregate_importance_weighted(couple.second, emb, df, factors)
    dist = squared_euclidean(rep1, rep2)
    return dist if couple.is_pair else -dist


def batch_objective(
    batch: Sequence[Couple],
    factors: ImportanceFactors,
    emb: EmbeddingTable,
    df: DfTable,
    reg_lambda: float,
) -> float:
    """Regularized batch objective via the per-couple loss (reference path)."""
    if not batch:
        raise ValueError("batch must be non-empty")
    data = sum(couple_loss(c, factors, emb, df) for c in batch) / len(batch)
    return data + reg_lambda * float(factors.values @ factors.values)


def _sorted_row_indices(
    couples: Sequence[Couple], emb: EmbeddingTable, df: DfTable
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """Embedding-row index arrays for both fragments, df-sorted rarest first.

    Returns (idx1, idx2, signs, n_words); idx arrays are (n_couples, n_words).
    """
    if not couples:
        raise ValueError("couple set must be non-empty")
    n_words = couples[0].n_words
    for pos, c in enumerate(couples):
        if c.n_words != n_words:
            raise ValueError(
                f"couple {pos}: length {c.n_words} differs from the first couple's {n_words}"
            )

    def rows_and_dfs(fragments):
        try:
            rows = np.array(
                [[emb.index[w] for w in frag] for frag in fragments], dtype=np.intp
            )
        except KeyError as exc:
            raise KeyError(f"word not in embedding vocabulary: {exc.args[0]!r}") from None
        dfs = np.array(
            [[df.lookup(w) for w in frag] for frag in fragments], dtype=np.int64
        )
        order = np.argsort(dfs, axis=1, kind="stable")
        return np.take_along_axis(rows, order, axis=1)

    idx1 = rows_and_dfs([c.first for c in couples])
    idx2 = rows_and_dfs([c.second for c in couples])
    signs = np.array([1.0 if c.is_pair else -1.0 for c in couples])
    return idx1, idx2, signs, n_words


def batch_gradient(
    batch: Sequence[Couple],
    factors: ImportanceFactors,
    emb: EmbeddingTable,
    df: DfTable,
    reg_lambda: float = 0.0,
) -> np.ndarray:
    """Gradient of the regularized batch objective w.r.t. the factors."""
    idx1, idx2, signs, n_words = _sorted_row_indices(batch, emb, df)
    if factors.n_words != n_words:
        raise ValueError(f"factors length {factors.n_words} != couple length {n_words}")
    _, grad = kernels.batch_objective_grad(
        emb.matrix[idx1], emb.matrix[idx2], signs, factors.values, reg_lambda
    )
    return grad


def train(
    train_set: Sequence[Couple],
    config: TrainConfig,
    emb: EmbeddingTable,
    df: DfTable,
) -> TrainResult:
    """Run minibatch SGD with classical momentum over the couple set.

    Factors start at ``config.init_value``; the couple order is reshuffled
    once per epoch from a generator seeded with ``config.seed``; a trailing
    partial batch is processed at its true size. Deterministic given the
    config.
    """
    idx1, idx2, signs, n_words = _sorted_row_indices(train_set, emb, df)
    rng = np.random.default_rng(config.seed)
    factors = np.full(n_words, config.init_value, dtype=np.float64)
    velocity = np.zeros(n_words, dtype=np.float64)
    trace: list[float] = []
    matrix = emb.matrix
    n_couples = len(train_set)
    for _ in range(config.epochs):
        perm = rng.permutation(n_couples)
        for start in range(0, n_couples, config.batch_size):
            sel = perm[start : start + config.batch_size]
            objective, grad = kernels.batch_objective_grad(
                matrix[idx1[sel]],
                matrix[idx2[sel]],
                signs[sel],
                factors,
                config.reg_lambda,
            )
            velocity = config.momentum * velocity - config.learning_rate * grad
            factors = factors + velocity
            trace.append(objective)
    return TrainResult(ImportanceFactors(factors), trace)
