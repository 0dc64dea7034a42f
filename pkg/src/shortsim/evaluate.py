"""Pair/non-pair discrimination measures.

Scores a couple set under a representation + distance, then quantifies how
separable the two score distributions are: optimal split threshold/error,
Jensen-Shannon divergence of the shared-bin histograms (natural log), and an
exact two-tailed binomial test for comparing error counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from .corpus import Couple
from .embeddings import DfTable, EmbeddingTable
from .metrics import (
    bray_curtis_distance,
    cosine_similarity,
    lp_distance,
)
from .represent import AggregationMethod, sparse_cosine_similarity, tfidf_vector, vectorize

SIMILARITY = "similarity"
DISTANCE = "distance"

# Evaluation-facing distance names; squared_euclidean stays training-internal.
EVAL_DISTANCES = ("cosine", "euclidean", "l3", "l4", "braycurtis")


@dataclass
class ScoredCouples:
    pair_scores: np.ndarray
    nonpair_scores: np.ndarray
    polarity: str  # SIMILARITY: pairs score high; DISTANCE: pairs score low

    def __post_init__(self) -> None:
        self.pair_scores = np.asarray(self.pair_scores, dtype=np.float64)
        self.nonpair_scores = np.asarray(self.nonpair_scores, dtype=np.float64)
        if self.polarity not in (SIMILARITY, DISTANCE):
            raise ValueError(f"polarity must be {SIMILARITY!r} or {DISTANCE!r}")
        if not (
            np.isfinite(self.pair_scores).all() and np.isfinite(self.nonpair_scores).all()
        ):
            raise ValueError("scores must be finite")


@dataclass
class EvalReport:
    method: str
    distance: str
    split_threshold: float
    split_error: float
    js_divergence: float
    n_pairs: int
    n_nonpairs: int

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "EvalReport":
        payload = json.loads(text)
        try:
            return cls(
                method=payload["method"],
                distance=payload["distance"],
                split_threshold=float(payload["split_threshold"]),
                split_error=float(payload["split_error"]),
                js_divergence=float(payload["js_divergence"]),
                n_pairs=int(payload["n_pairs"]),
                n_nonpairs=int(payload["n_nonpairs"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed evaluation report: {exc}") from None


def _dense_score(vec1, vec2, distance: str) -> float:
    if distance == "cosine":
        return cosine_similarity(vec1, vec2)
    if distance == "euclidean":
        return lp_distance(vec1, vec2, 2)
    if distance == "l3":
        return lp_distance(vec1, vec2, 3)
    if distance == "l4":
        return lp_distance(vec1, vec2, 4)
    if distance == "braycurtis":
        return bray_curtis_distance(vec1, vec2)
    raise ValueError(
        f"unknown distance {distance!r}; valid: {', '.join(EVAL_DISTANCES)}"
    )


def score_couples(
    couples: Sequence[Couple],
    method: AggregationMethod | str,
    distance: str,
    emb: EmbeddingTable,
    df: DfTable,
) -> ScoredCouples:
    """Score every couple and partition the scores by label.

    ``method`` is an :class:`AggregationMethod` or the string ``"tfidf"``
    (always scored with cosine similarity over sparse tf-idf vectors).
    Representation failures are re-raised with the offending couple's index.
    """
    if not couples:
        raise ValueError("couple set must be non-empty")
    use_tfidf = isinstance(method, str)
    if use_tfidf and method != "tfidf":
        raise ValueError(f"unknown method {method!r}; expected 'tfidf' or an AggregationMethod")
    if use_tfidf:
        distance = "cosine"
    elif distance not in EVAL_DISTANCES:
        raise ValueError(
            f"unknown distance {distance!r}; valid: {', '.join(EVAL_DISTANCES)}"
        )

    pair_scores: list[float] = []
    nonpair_scores: list[float] = []
    for pos, couple in enumerate(couples):
        try:
            if use_tfidf:
                score = sparse_cosine_similarity(
                    tfidf_vector(couple.first, df), tfidf_vector(couple.second, df)
                )
            else:
                vec1 = vectorize(couple.first, method, emb, df)
                vec2 = vectorize(couple.second, method, emb, df)
                score = _dense_score(vec1, vec2, distance)
        except (KeyError, ValueError) as exc:
            detail = exc.args[0] if exc.args else exc
            raise ValueError(f"couple {pos}: {detail}") from None
        (pair_scores if couple.is_pair else nonpair_scores).append(score)
    polarity = SIMILARITY if distance == "cosine" else DISTANCE
    return ScoredCouples(np.array(pair_scores), np.array(nonpair_scores), polarity)


def _candidate_thresholds(pooled: np.ndarray) -> np.ndarray:
    """Midpoints between consecutive distinct pooled values plus two sentinels."""
    values = np.unique(pooled)
    mids = (values[:-1] + values[1:]) / 2.0
    return np.concatenate(([values[0] - 1.0], mids, [values[-1] + 1.0]))


def _errors_at(scored: ScoredCouples, thresholds: np.ndarray) -> np.ndarray:
    """Misclassified-couple counts at each threshold.

    Classification rule: pair iff score > t (similarity polarity) or
    score < t (distance polarity).
    """
    pairs = np.sort(scored.pair_scores)
    nonpairs = np.sort(scored.nonpair_scores)
    if scored.polarity == SIMILARITY:
        miss_pairs = np.searchsorted(pairs, thresholds, side="right")
        miss_nonpairs = nonpairs.size - np.searchsorted(nonpairs, thresholds, side="right")
    else:
        miss_pairs = pairs.size - np.searchsorted(pairs, thresholds, side="left")
        miss_nonpairs = np.searchsorted(nonpairs, thresholds, side="left")
    return miss_pairs + miss_nonpairs


def optimal_split(scored: ScoredCouples) -> tuple[float, float]:
    """Threshold minimizing the misclassification rate, and that rate.

    Ties resolve to the smallest candidate threshold.
    """
    if scored.pair_scores.size == 0 or scored.nonpair_scores.size == 0:
        raise ValueError("both score sets must be non-empty")
    pooled = np.concatenate([scored.pair_scores, scored.nonpair_scores])
    thresholds = _candidate_thresholds(pooled)
    errors = _errors_at(scored, thresholds)
    best = int(np.argmin(errors))  # first minimum; thresholds are ascending
    return float(thresholds[best]), float(errors[best]) / pooled.size


def error_at_threshold(scored: ScoredCouples, threshold: float) -> float:
    """Misclassification rate at a fixed threshold (same rule as optimal_split)."""
    if scored.pair_scores.size == 0 or scored.nonpair_scores.size == 0:
        raise ValueError("both score sets must be non-empty")
    errors = _errors_at(scored, np.array([threshold], dtype=np.float64))
    total = scored.pair_scores.size + scored.nonpair_scores.size
    return float(errors[0]) / total


@dataclass
class Histogram:
    bin_edges: np.ndarray
    counts: np.ndarray


def build_histogram(samples: Sequence[float], edges: Sequence[float]) -> Histogram:
    """Count samples per half-open bin [e_i, e_{i+1}); the last bin is closed."""
    edges = np.asarray(edges, dtype=np.float64)
    if edges.ndim != 1 or edges.size < 2 or not (np.diff(edges) > 0).all():
        raise ValueError("edges must be a strictly increasing sequence of >= 2 values")
    samples = np.asarray(samples, dtype=np.float64)
    if samples.size:
        bad = (samples < edges[0]) | (samples > edges[-1])
        if bad.any():
            raise ValueError(f"sample out of histogram range: {samples[bad][0]}")
    counts, _ = np.histogram(samples, bins=edges)
    return Histogram(bin_edges=edges, counts=counts.astype(np.int64))


def js_divergence(
    p_samples: Sequence[float], q_samples: Sequence[float], bins: int = 100
) -> float:
    """Jensen-Shannon divergence (nats) of two sample sets.

    Both sets are binned with shared equal-width edges spanning the pooled
    range. Returns 0 when all pooled samples are equal.
    """
    if bins < 2:
        raise ValueError("bins must be >= 2")
    p_samples = np.asarray(p_samples, dtype=np.float64)
    q_samples = np.asarray(q_samples, dtype=np.float64)
    if p_samples.size == 0 or q_samples.size == 0:
        raise ValueError("both sample sets must be non-empty")
    lo = min(p_samples.min(), q_samples.min())
    hi = max(p_samples.max(), q_samples.max())
    if lo == hi:
        return 0.0
    edges = np.linspace(lo, hi, bins + 1)
    p = build_histogram(p_samples, edges).counts / p_samples.size
    q = build_histogram(q_samples, edges).counts / q_samples.size
    m = (p + q) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        kl_pm = np.where(p > 0, p * np.log(p / m), 0.0).sum()
        kl_qm = np.where(q > 0, q * np.log(q / m), 0.0).sum()
    return float(kl_pm + kl_qm) / 2.0


def _log_binom_pmf(k: np.ndarray, n: int, p0: float) -> np.ndarray:
    coef = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    return coef + k * np.log(p0) + (n - k) * np.log1p(-p0)


def binomial_significance(errors_a: int, errors_b: int, n: int) -> float:
    """Exact two-tailed binomial test of ``errors_a`` against rate errors_b/n.

    Sums, in log space, the probabilities of all outcomes whose point
    probability does not exceed that of the observed count (the standard
    minlike two-tailed rule).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= errors_a <= n or not 0 <= errors_b <= n:
        raise ValueError("error counts must lie in [0, n]")
    p0 = errors_b / n
    if p0 == 0.0:
        return 1.0 if errors_a == 0 else 0.0
    if p0 == 1.0:
        return 1.0 if errors_a == n else 0.0
    k = np.arange(n + 1)
    log_pmf = _log_binom_pmf(k, n, p0)
    # Tolerance mirrors the usual float guard for "same point probability".
    observed = log_pmf[errors_a]
    included = log_pmf <= observed + 1e-7
    log_p = np.logaddexp.reduce(log_pmf[included])
    return float(min(1.0, np.exp(log_p)))


def evaluate_method(
    method: AggregationMethod | str,
    distance: str,
    select_couples: Sequence[Couple],
    report_couples: Sequence[Couple],
    emb: EmbeddingTable,
    df: DfTable,
    bins: int = 100,
    method_name: str | None = None,
) -> tuple[EvalReport, ScoredCouples]:
    """Pick the threshold on one couple set, report the error on another.

    Passing the same set twice gives in-sample evaluation. The JS divergence
    and the returned scores belong to the report set.
    """
    select_scored = score_couples(select_couples, method, distance, emb, df)
    threshold, _ = optimal_split(select_scored)
    if report_couples is select_couples:
        report_scored = select_scored
    else:
        report_scored = score_couples(report_couples, method, distance, emb, df)
    error = error_at_threshold(report_scored, threshold)
    jsd = js_divergence(report_scored.pair_scores, report_scored.nonpair_scores, bins)
    if method_name is None:
        method_name = method if isinstance(method, str) else method.kind
    report = EvalReport(
        method=method_name,
        distance="cosine" if isinstance(method, str) else distance,
        split_threshold=threshold,
        split_error=error,
        js_divergence=jsd,
        n_pairs=int(report_scored.pair_scores.size),
        n_nonpairs=int(report_scored.nonpair_scores.size),
    )
    return report, report_scored


def histogram_csv(scored: ScoredCouples, bins: int) -> str:
    """Shared-bin histogram of both score sets as CSV text."""
    pooled = np.concatenate([scored.pair_scores, scored.nonpair_scores])
    lo, hi = float(pooled.min()), float(pooled.max())
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    edges = np.linspace(lo, hi, bins + 1)
    pairs = build_histogram(scored.pair_scores, edges).counts
    nonpairs = build_histogram(scored.nonpair_scores, edges).counts
    lines = ["bin_left,bin_right,count_pairs,count_nonpairs"]
    for i in range(bins):
        lines.append(f"{edges[i]:.9g},{edges[i + 1]:.9g},{pairs[i]},{nonpairs[i]}")
    return "\n".join(lines) + "\n"
