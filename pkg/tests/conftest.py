import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from synthdata import build_corpus  # noqa: E402

from shortsim.corpus import split_dataset  # noqa: E402
from shortsim.evaluate import evaluate_method  # noqa: E402
from shortsim.represent import AggregationMethod  # noqa: E402
from shortsim.training import TrainConfig, train  # noqa: E402

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


@pytest.fixture(scope="session")
def toy_corpus_path():
    return os.path.join(DATA_DIR, "toy_corpus.txt")


@pytest.fixture(scope="session")
def toy_embeddings_path():
    return os.path.join(DATA_DIR, "toy_embeddings.txt")


class SynthRun:
    """Synthetic corpus trained and evaluated once per test session."""

    def __init__(self):
        self.corpus = build_corpus()
        self.split = split_dataset(
            self.corpus.couples, (2 / 3, 1 / 6, 1 / 6), np.random.default_rng(7)
        )
        self.config = TrainConfig()
        result = train(self.split.train, self.config, self.corpus.emb, self.corpus.df)
        self.factors = result.factors
        self.trace = result.objective_trace
        self.report_mean, _ = evaluate_method(
            AggregationMethod("mean"),
            "euclidean",
            self.split.validation,
            self.split.test,
            self.corpus.emb,
            self.corpus.df,
        )
        self.report_importance, _ = evaluate_method(
            AggregationMethod("mean_importance", factors=self.factors),
            "euclidean",
            self.split.validation,
            self.split.test,
            self.corpus.emb,
            self.corpus.df,
        )


@pytest.fixture(scope="session")
def synth_run():
    return SynthRun()
