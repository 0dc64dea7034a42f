"""Pretrained word embedding table and document-frequency/idf table."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class EmbeddingTable:
    """Immutable token -> dense vector map backed by one contiguous matrix."""

    def __init__(self, words: Sequence[str], matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2:
            raise ValueError("matrix must be 2-dimensional")
        if len(words) != matrix.shape[0]:
            raise ValueError("word count does not match matrix rows")
        if len(words) == 0:
            raise ValueError("vocabulary must be non-empty")
        if not np.isfinite(matrix).all():
            raise ValueError("embedding matrix contains non-finite values")
        self.matrix = matrix
        self.index: dict[str, int] = {w: i for i, w in enumerate(words)}
        if len(self.index) != len(words):
            raise ValueError("duplicate words in vocabulary")
        self.words = list(words)

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return self.matrix.shape[0]

    def __contains__(self, word: str) -> bool:
        return word in self.index

    def __getitem__(self, word: str) -> np.ndarray:
        return self.matrix[self.index[word]]

    def rows(self, words: Iterable[str]) -> np.ndarray:
        """Stack the vectors of ``words`` into an (n, dim) matrix."""
        try:
            idx = [self.index[w] for w in words]
        except KeyError as exc:
            raise KeyError(f"word not in embedding vocabulary: {exc.args[0]!r}") from None
        return self.matrix[idx]


def load_embeddings(path: str) -> EmbeddingTable:
    """Load embeddings in word2vec text format.

    First line: ``<vocab> <dim>``. Then one line per word:
    ``word v1 v2 ... v_dim``. Raises ValueError naming the offending line on
    malformed header, dimension mismatch, or non-finite values.
    """
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:1: malformed header, expected '<vocab> <dim>'")
        try:
            vocab, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"{path}:1: malformed header, expected '<vocab> <dim>'") from None
        if vocab < 1 or dim < 1:
            raise ValueError(f"{path}:1: vocab and dim must be positive")
        words: list[str] = []
        matrix = np.empty((vocab, dim), dtype=np.float64)
        lineno = 1
        for lineno, line in enumerate(fh, start=2):
            row = lineno - 2
            if row >= vocab:
                raise ValueError(f"{path}:{lineno}: more rows than the declared vocab {vocab}")
            fields = line.split()
            if len(fields) != dim + 1:
                raise ValueError(
                    f"{path}:{lineno}: expected {dim} components, got {len(fields) - 1}"
                )
            words.append(fields[0])
            try:
                vec = np.array(fields[1:], dtype=np.float64)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: unparsable vector component") from None
            if not np.isfinite(vec).all():
                raise ValueError(f"{path}:{lineno}: non-finite vector component")
            matrix[row] = vec
        if len(words) != vocab:
            raise ValueError(f"{path}:{lineno}: declared vocab {vocab}, found {len(words)} rows")
    return EmbeddingTable(words, matrix)


def save_embeddings(path: str, table: EmbeddingTable) -> None:
    """Write word2vec text format with 9 significant digits per component."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(table)} {table.dim}\n")
        for word in table.words:
            vec = table[word]
            fh.write(word + " " + " ".join(f"{v:.9g}" for v in vec) + "\n")


@dataclass
class DfTable:
    """Per-word document frequency plus the corpus document count."""

    doc_count: int
    df: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.doc_count < 1:
            raise ValueError("doc_count must be >= 1")
        for word, count in self.df.items():
            if not 1 <= count <= self.doc_count:
                raise ValueError(
                    f"df({word!r})={count} outside [1, {self.doc_count}]"
                )

    def lookup(self, word: str) -> int:
        """Document frequency; unknown words count as seen in one document."""
        return self.df.get(word, 1)

    def idf(self, word: str) -> float:
        return math.log(self.doc_count / self.lookup(word))


def idf(word: str, table: DfTable) -> float:
    """ln(N / df); unknown words get df = 1, hence the maximal idf ln(N)."""
    return table.idf(word)


def compute_document_frequencies(documents: Iterable[Sequence[str]]) -> DfTable:
    """Count the number of documents each word occurs in at least once."""
    df: dict[str, int] = {}
    n_docs = 0
    for doc in documents:
        n_docs += 1
        for word in set(doc):
            df[word] = df.get(word, 0) + 1
    if n_docs == 0:
        raise ValueError("document stream is empty")
    return DfTable(doc_count=n_docs, df=df)


def save_df_table(path: str, table: DfTable) -> None:
    """Write TSV: header ``#docs<TAB>N`` then ``word<TAB>df`` rows."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"#docs\t{table.doc_count}\n")
        for word in sorted(table.df):
            fh.write(f"{word}\t{table.df[word]}\n")


def load_df_table(path: str) -> DfTable:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split("\t")
        if len(header) != 2 or header[0] != "#docs":
            raise ValueError(f"{path}:1: expected header '#docs<TAB>N'")
        try:
            doc_count = int(header[1])
        except ValueError:
            raise ValueError(f"{path}:1: document count must be an integer") from None
        df: dict[str, int] = {}
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'word<TAB>df'")
            try:
                df[parts[0]] = int(parts[1])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: df must be an integer") from None
    return DfTable(doc_count=doc_count, df=df)
