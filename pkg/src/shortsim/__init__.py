"""Semantic similarity toolkit for fixed-length short text fragments.

Builds labeled pair/non-pair couple datasets from plain-text corpora,
represents fragments via tf-idf or word-embedding aggregation, measures
pair/non-pair separability (optimal split error, Jensen-Shannon divergence),
and learns global per-position importance factors with minibatch SGD.
"""

from .corpus import Couple, DatasetSplit, extract_nonpair, extract_pair, normalize_text, split_dataset
from .embeddings import (
    DfTable,
    EmbeddingTable,
    compute_document_frequencies,
    idf,
    load_embeddings,
    save_embeddings,
)
from .evaluate import (
    EvalReport,
    ScoredCouples,
    binomial_significance,
    build_histogram,
    error_at_threshold,
    js_divergence,
    optimal_split,
    score_couples,
)
from .factors import ImportanceFactors, load_factors, save_factors
from .represent import AggregationMethod, filter_top_idf, tfidf_vector, vectorize
from .training import TrainConfig, TrainResult, batch_gradient, couple_loss, train

__version__ = "0.1.0"

__all__ = [
    "AggregationMethod",
    "Couple",
    "DatasetSplit",
    "DfTable",
    "EmbeddingTable",
    "EvalReport",
    "ImportanceFactors",
    "ScoredCouples",
    "TrainConfig",
    "TrainResult",
    "batch_gradient",
    "binomial_significance",
    "build_histogram",
    "compute_document_frequencies",
    "couple_loss",
    "error_at_threshold",
    "extract_nonpair",
    "extract_pair",
    "filter_top_idf",
    "idf",
    "js_divergence",
    "load_embeddings",
    "load_factors",
    "normalize_text",
    "optimal_split",
    "save_embeddings",
    "save_factors",
    "score_couples",
    "split_dataset",
    "tfidf_vector",
    "train",
    "vectorize",
]
