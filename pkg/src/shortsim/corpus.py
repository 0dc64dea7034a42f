"""Text normalization, couple extraction and dataset splitting.

A *couple* is two fixed-length token fragments plus a pair/non-pair label.
Pairs come from adjacent windows of one paragraph (separated by two skipped
words); non-pairs from random windows of paragraphs belonging to different
articles.
"""

from __future__ import annotations

import re
import sys
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

PAIR = "pair"
NONPAIR = "nonpair"

_DIGIT_RUN_RE = re.compile(r"[0-9]+")

_remove_table: dict[int, None] | None = None


def _punct_symbol_table() -> dict[int, None]:
    # Deletion table for Unicode punctuation (P*) and symbols (S*); built on
    # first use, scanning the whole code space takes ~0.15s.
    global _remove_table
    if _remove_table is None:
        removable = "".join(
            ch
            for ch in map(chr, range(sys.maxunicode + 1))
            if unicodedata.category(ch)[0] in ("P", "S")
        )
        _remove_table = str.maketrans("", "", removable)
    return _remove_table


def normalize_text(raw: str) -> list[str]:
    """Normalize raw text into tokens.

    Lowercases, deletes Unicode punctuation and symbol characters, collapses
    every maximal digit run to the single character "0", and splits on
    whitespace. Empty input yields an empty list. The transformation is
    idempotent on its own space-joined output.
    """
    text = raw.lower().translate(_punct_symbol_table())
    text = _DIGIT_RUN_RE.sub("0", text)
    return text.split()


@dataclass(frozen=True)
class Couple:
    """Two same-length token fragments and their relatedness label."""

    first: tuple[str, ...]
    second: tuple[str, ...]
    label: str

    def __post_init__(self) -> None:
        if len(self.first) != len(self.second):
            raise ValueError(
                f"fragment lengths differ: {len(self.first)} != {len(self.second)}"
            )
        if self.label not in (PAIR, NONPAIR):
            raise ValueError(f"label must be {PAIR!r} or {NONPAIR!r}, got {self.label!r}")

    @property
    def n_words(self) -> int:
        return len(self.first)

    @property
    def is_pair(self) -> bool:
        return self.label == PAIR


@dataclass
class DatasetSplit:
    train: list[Couple]
    test: list[Couple]
    validation: list[Couple]


def extract_pair(paragraph: Sequence[str], n_words: int) -> Couple | None:
    """Extract a related couple from the start of one paragraph.

    Takes the first ``n_words`` tokens, skips the next two, then takes the
    following ``n_words`` tokens. Returns None if the paragraph is shorter
    than ``2 * n_words + 2``.
    """
    if n_words < 1:
        raise ValueError("n_words must be >= 1")
    if len(paragraph) < 2 * n_words + 2:
        return None
    first = tuple(paragraph[:n_words])
    second = tuple(paragraph[n_words + 2 : 2 * n_words + 2])
    return Couple(first, second, PAIR)


def extract_nonpair(
    para_a: Sequence[str],
    para_b: Sequence[str],
    n_words: int,
    rng: np.random.Generator,
) -> Couple | None:
    """Extract an unrelated couple from two paragraphs of different articles.

    Each fragment is a uniformly chosen contiguous ``n_words``-token window of
    its paragraph (window from ``para_a`` drawn first). Returns None if either
    paragraph is shorter than ``n_words``.
    """
    if n_words < 1:
        raise ValueError("n_words must be >= 1")
    if len(para_a) < n_words or len(para_b) < n_words:
        return None
    start_a = int(rng.integers(0, len(para_a) - n_words + 1))
    start_b = int(rng.integers(0, len(para_b) - n_words + 1))
    first = tuple(para_a[start_a : start_a + n_words])
    second = tuple(para_b[start_b : start_b + n_words])
    return Couple(first, second, NONPAIR)


def _apportion(total: int, fractions: Sequence[float]) -> list[int]:
    """Largest-remainder apportionment; remainder ties go to earlier entries."""
    exact = [total * f for f in fractions]
    base = [int(np.floor(x)) for x in exact]
    leftover = total - sum(base)
    order = sorted(range(len(fractions)), key=lambda i: (-(exact[i] - base[i]), i))
    for i in order[:leftover]:
        base[i] += 1
    return base


def split_dataset(
    couples: Sequence[Couple],
    fractions: tuple[float, float, float],
    rng: np.random.Generator,
) -> DatasetSplit:
    """Random train/test/validation partition, stratified by label.

    Split sizes honor ``fractions`` to within one couple per label stratum,
    and total sizes match the largest-remainder apportionment of the input
    size. Deterministic given the generator state.
    """
    if not couples:
        raise ValueError("cannot split an empty couple set")
    if any(f < 0 for f in fractions):
        raise ValueError("fractions must be nonnegative")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ValueError(f"fractions must sum to 1, got {sum(fractions)}")

    targets = _apportion(len(couples), fractions)
    assigned = [0, 0, 0]
    buckets: tuple[list[Couple], list[Couple], list[Couple]] = ([], [], [])

    for label in (PAIR, NONPAIR):
        stratum = [c for c in couples if c.label == label]
        if not stratum:
            continue
        order = rng.permutation(len(stratum))
        exact = [len(stratum) * f for f in fractions]
        counts = [int(np.floor(x)) for x in exact]
        leftover = len(stratum) - sum(counts)
        # Hand out stratum remainders to splits still short of their global
        # target, preferring the largest fractional part; fall back to the
        # largest fractional part alone if no such split remains.
        candidates = sorted(
            range(3),
            key=lambda i: (
                0 if targets[i] - assigned[i] - counts[i] > 0 else 1,
                -(exact[i] - counts[i]),
                i,
            ),
        )
        for i in candidates[:leftover]:
            counts[i] += 1
        for i in range(3):
            assigned[i] += counts[i]
        pos = 0
        for i in range(3):
            for j in order[pos : pos + counts[i]]:
                buckets[i].append(stratum[j])
            pos += counts[i]

    return DatasetSplit(train=buckets[0], test=buckets[1], validation=buckets[2])


def read_paragraphs(path: str) -> list[tuple[int, list[str]]]:
    """Read a corpus file: one paragraph per line, blank line between articles.

    Returns (article_index, normalized tokens) per paragraph, in file order.
    """
    paragraphs = []
    article = 0
    saw_paragraph = False
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                if saw_paragraph:
                    article += 1
                    saw_paragraph = False
                continue
            paragraphs.append((article, normalize_text(line)))
            saw_paragraph = True
    return paragraphs


def write_couples(path: str, couples: Iterable[Couple]) -> int:
    """Write couples as TSV lines ``label<TAB>text1<TAB>text2`` (1=pair, 0=nonpair)."""
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for c in couples:
            label = "1" if c.is_pair else "0"
            fh.write(f"{label}\t{' '.join(c.first)}\t{' '.join(c.second)}\n")
            n += 1
    return n


def read_couples(path: str) -> list[Couple]:
    return [c for _, c in iter_couples_numbered(path)]


def read_couples_uniform(path: str) -> list[Couple]:
    """Read couples, rejecting files whose couples differ in length."""
    couples: list[Couple] = []
    expected: int | None = None
    for lineno, couple in iter_couples_numbered(path):
        if expected is None:
            expected = couple.n_words
        elif couple.n_words != expected:
            raise ValueError(
                f"{path}:{lineno}: couple length {couple.n_words} differs from {expected}"
            )
        couples.append(couple)
    return couples


def iter_couples_numbered(path: str) -> Iterator[tuple[int, Couple]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 tab-separated fields")
            label_field, text1, text2 = parts
            if label_field == "1":
                label = PAIR
            elif label_field == "0":
                label = NONPAIR
            else:
                raise ValueError(f"{path}:{lineno}: label must be 0 or 1, got {label_field!r}")
            try:
                yield lineno, Couple(tuple(text1.split()), tuple(text2.split()), label)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
