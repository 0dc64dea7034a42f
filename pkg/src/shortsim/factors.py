"""Learned importance factors: one weight per df-sorted word position."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class ImportanceFactors:
    """Weight vector applied after rarest-first sorting; position j weighs
    the j-th rarest word of a fragment."""

    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or self.values.size == 0:
            raise ValueError("factors must be a non-empty 1-d vector")
        if not np.isfinite(self.values).all():
            raise ValueError("factors must be finite")

    @property
    def n_words(self) -> int:
        return self.values.size

    def to_json(self, config: dict[str, Any] | None = None) -> str:
        payload: dict[str, Any] = {
            "n_words": self.n_words,
            "factors": [float(v) for v in self.values],
        }
        if config is not None:
            payload["config"] = config
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def save_factors(path: str, factors: ImportanceFactors, config: dict[str, Any] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(factors.to_json(config))


def load_factors(path: str) -> ImportanceFactors:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    try:
        values = payload["factors"]
        n_words = payload["n_words"]
    except (KeyError, TypeError):
        raise ValueError(f"{path}: expected keys 'n_words' and 'factors'") from None
    factors = ImportanceFactors(np.asarray(values, dtype=np.float64))
    if factors.n_words != n_words:
        raise ValueError(f"{path}: n_words={n_words} but {factors.n_words} factors listed")
    return factors
