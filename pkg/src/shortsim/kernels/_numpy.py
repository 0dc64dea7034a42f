"""Pure NumPy implementation of the training kernels."""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def batch_objective_grad(w1, w2, signs, factors, reg_lambda):
    """Contrastive objective and its gradient w.r.t. the importance factors.

    ``w1``/``w2``: (batch, n_words, dim) df-sorted word vector stacks for the
    two fragments of each couple. ``signs``: (batch,) +1 for pairs, -1 for
    non-pairs. Objective = mean over the batch of sign * squared-Euclidean
    distance between the factor-weighted means, plus
    ``reg_lambda * sum(factors**2)``.

    Returns (objective, gradient) with gradient shaped like ``factors``.
    """
    w1 = np.asarray(w1, dtype=np.float64)
    w2 = np.asarray(w2, dtype=np.float64)
    signs = np.asarray(signs, dtype=np.float64)
    factors = np.asarray(factors, dtype=np.float64)
    batch, n_words, _ = w1.shape

    diff = w1 - w2  # (B, n, d)
    rep_diff = np.einsum("j,bjd->bd", factors, diff) / n_words  # (B, d)
    dists = np.einsum("bd,bd->b", rep_diff, rep_diff)
    objective = float(signs @ dists) / batch + reg_lambda * float(factors @ factors)
    grad = (
        np.einsum("b,bd,bjd->j", signs, rep_diff, diff) * (2.0 / (n_words * batch))
        + 2.0 * reg_lambda * factors
    )
    return objective, grad


def weighted_mean_distances(w1, w2, factors):
    """Squared Euclidean distances between factor-weighted fragment means.

    Same array conventions as :func:`batch_objective_grad`; returns (batch,).
    """
    w1 = np.asarray(w1, dtype=np.float64)
    w2 = np.asarray(w2, dtype=np.float64)
    factors = np.asarray(factors, dtype=np.float64)
    n_words = w1.shape[1]
    rep_diff = np.einsum("j,bjd->bd", factors, w1 - w2) / n_words
    return np.einsum("bd,bd->b", rep_diff, rep_diff)
