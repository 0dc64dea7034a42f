"""Distance and similarity functions between representation vectors.

The Lp distances are normalized to [0, 1]: both inputs are scaled to unit
L2 norm first and the raw distance is halved (antipodal unit vectors have
L2 distance 2). Cosine is a similarity in [-1, 1]; use
:func:`cosine_distance` where a [0, 1] distance is needed.
"""

from __future__ import annotations

import numpy as np

DISTANCE_KINDS = ("cosine", "euclidean", "l3", "l4", "bray_curtis", "squared_euclidean")


def _check_same_length(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"vector lengths differ: {a.shape} vs {b.shape}")
    return a, b


def cosine_similarity(a, b) -> float:
    """dot(a, b) / (|a| |b|); 0 if either vector is zero."""
    a, b = _check_same_length(a, b)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def cosine_distance(a, b) -> float:
    """(1 - cosine similarity) / 2, mapping [-1, 1] similarity onto [0, 1]."""
    return (1.0 - cosine_similarity(a, b)) / 2.0


def lp_distance(a, b, p: int) -> float:
    """Normalized Minkowski distance between the unit-L2 scalings of a and b."""
    if p not in (2, 3, 4):
        raise ValueError(f"p must be 2, 3 or 4, got {p}")
    a, b = _check_same_length(a, b)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("lp_distance is undefined for zero vectors")
    diff = np.abs(a / na - b / nb)
    raw = float(np.sum(diff**p) ** (1.0 / p))
    return min(max(raw / 2.0, 0.0), 1.0)


def bray_curtis_distance(a, b) -> float:
    """sum|a-b| / sum|a+b|, clamped to [0, 1]; 0/0 is 0 for equal inputs, else 1."""
    a, b = _check_same_length(a, b)
    num = float(np.sum(np.abs(a - b)))
    den = float(np.sum(np.abs(a + b)))
    if den == 0.0:
        return 0.0 if num == 0.0 else 1.0
    return min(max(num / den, 0.0), 1.0)


def squared_euclidean(a, b) -> float:
    """Unnormalized sum of squared componentwise differences."""
    a, b = _check_same_length(a, b)
    diff = a - b
    return float(np.dot(diff, diff))
