import re
import unicodedata

import numpy as np
import pytest

from shortsim.corpus import (
    NONPAIR,
    PAIR,
    Couple,
    extract_nonpair,
    extract_pair,
    normalize_text,
    read_couples,
    read_couples_uniform,
    split_dataset,
    write_couples,
)


def test_normalize_empty():
    assert normalize_text("") == []


def test_normalize_lowercase_and_punctuation():
    assert normalize_text("Hello, World!") == ["hello", "world"]


def test_normalize_digit_runs():
    assert normalize_text("In 1984 he wrote 12 books") == ["in", "0", "he", "wrote", "0", "books"]


def test_normalize_digit_run_spanning_punctuation():
    # punctuation is deleted first, so "3.14" is one maximal digit run
    assert normalize_text("pi is 3.14") == ["pi", "is", "0"]


def test_normalize_unicode_punctuation_and_symbols():
    assert normalize_text("“quoted” text — with 5€") == ["quoted", "text", "with", "0"]


TRICKY = [
    "Hello, World!",
    "a-b c_d e.f",
    "  spaced\tout text  ",
    "MiXeD CaSe 123abc456",
    "!!! ???",
    "café naïve – résumé",
    "1 22 333 a1b22c",
]


@pytest.mark.parametrize("raw", TRICKY)
def test_normalize_idempotent(raw):
    once = normalize_text(raw)
    again = normalize_text(" ".join(once))
    assert once == again


def test_normalize_idempotent_random():
    rng = np.random.default_rng(42)
    pool = list("abcXYZ019!?.,;-_é€— \t")
    for _ in range(200):
        raw = "".join(rng.choice(pool, size=rng.integers(0, 60)))
        once = normalize_text(raw)
        assert normalize_text(" ".join(once)) == once


def test_normalize_token_invariants():
    rng = np.random.default_rng(7)
    pool = list("abcXYZ019!?.,;-_é€ ")
    for _ in range(200):
        raw = "".join(rng.choice(pool, size=rng.integers(0, 80)))
        for token in normalize_text(raw):
            assert token
            assert not any(ch.isspace() for ch in token)
            assert token == token.lower()
            assert not any(unicodedata.category(ch)[0] in ("P", "S") for ch in token)
            assert not re.search(r"[0-9]{2}", token)
            assert set(re.findall(r"[0-9]", token)) <= {"0"}


def test_extract_pair_eight_tokens():
    tokens = list("abcdefgh")
    couple = extract_pair(tokens, 3)
    assert couple == Couple(("a", "b", "c"), ("f", "g", "h"), PAIR)


def test_extract_pair_too_short():
    assert extract_pair(list("abcdefg"), 3) is None


def test_extract_pair_forty_two_tokens():
    tokens = [f"t{i}" for i in range(1, 43)]
    couple = extract_pair(tokens, 20)
    assert couple is not None
    assert couple.first == tuple(f"t{i}" for i in range(1, 21))
    assert couple.second == tuple(f"t{i}" for i in range(23, 43))


def test_extract_pair_fragment_geometry():
    rng = np.random.default_rng(3)
    for _ in range(100):
        n = int(rng.integers(1, 8))
        length = int(rng.integers(0, 30))
        tokens = [f"w{i}" for i in range(length)]
        couple = extract_pair(tokens, n)
        if length < 2 * n + 2:
            assert couple is None
        else:
            assert couple.first == tuple(tokens[:n])
            assert couple.second == tuple(tokens[n + 2 : 2 * n + 2])
            assert couple.n_words == n


def test_extract_nonpair_too_short():
    rng = np.random.default_rng(0)
    assert extract_nonpair(list("abc"), list("xy"), 3, rng) is None


def test_extract_nonpair_single_window():
    rng = np.random.default_rng(0)
    couple = extract_nonpair(list("abc"), list("xyz"), 3, rng)
    assert couple == Couple(("a", "b", "c"), ("x", "y", "z"), NONPAIR)


def test_extract_nonpair_uniform_windows():
    rng = np.random.default_rng(123)
    para = [f"w{i}" for i in range(5)]
    other = [f"v{i}" for i in range(3)]
    starts = []
    for _ in range(3000):
        couple = extract_nonpair(para, other, 3, rng)
        starts.append(int(couple.first[0][1:]))
    counts = {s: starts.count(s) for s in set(starts)}
    assert set(counts) == {0, 1, 2}
    for count in counts.values():
        assert 880 <= count <= 1120  # ~4 sigma around 1000


def _make_couples(n_pairs, n_nonpairs):
    couples = []
    for i in range(n_pairs):
        couples.append(Couple((f"p{i}a",), (f"p{i}b",), PAIR))
    for i in range(n_nonpairs):
        couples.append(Couple((f"n{i}a",), (f"n{i}b",), NONPAIR))
    return couples


def test_split_sizes_example():
    couples = _make_couples(5, 5)
    split = split_dataset(couples, (0.3, 0.3, 0.4), np.random.default_rng(0))
    assert (len(split.train), len(split.test), len(split.validation)) == (3, 3, 4)


def test_split_all_train():
    couples = _make_couples(4, 4)
    split = split_dataset(couples, (1.0, 0.0, 0.0), np.random.default_rng(0))
    assert len(split.train) == 8
    assert not split.test and not split.validation


def test_split_deterministic():
    couples = _make_couples(20, 30)
    a = split_dataset(couples, (0.5, 0.25, 0.25), np.random.default_rng(99))
    b = split_dataset(couples, (0.5, 0.25, 0.25), np.random.default_rng(99))
    assert a.train == b.train and a.test == b.test and a.validation == b.validation


def test_split_rejects_empty_and_bad_fractions():
    with pytest.raises(ValueError):
        split_dataset([], (0.5, 0.25, 0.25), np.random.default_rng(0))
    couples = _make_couples(2, 2)
    with pytest.raises(ValueError):
        split_dataset(couples, (0.5, 0.25, 0.3), np.random.default_rng(0))
    with pytest.raises(ValueError):
        split_dataset(couples, (0.5, 0.75, -0.25), np.random.default_rng(0))


def test_split_partition_and_stratification():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n_pairs = int(rng.integers(1, 60))
        n_nonpairs = int(rng.integers(1, 60))
        raw = rng.dirichlet([1.0, 1.0, 1.0])
        fractions = tuple(raw / raw.sum())
        couples = _make_couples(n_pairs, n_nonpairs)
        split = split_dataset(couples, fractions, rng)
        parts = (split.train, split.test, split.validation)
        merged = [c for part in parts for c in part]
        assert sorted(merged, key=str) == sorted(couples, key=str)
        assert len(set(merged)) == len(couples)
        for label, stratum_size in ((PAIR, n_pairs), (NONPAIR, n_nonpairs)):
            for frac, part in zip(fractions, parts):
                got = sum(1 for c in part if c.label == label)
                assert abs(got - frac * stratum_size) <= 1.0
        ratio = n_pairs / (n_pairs + n_nonpairs)
        for part in parts:
            if part:
                got_pairs = sum(1 for c in part if c.label == PAIR)
                assert abs(got_pairs - ratio * len(part)) <= 1.0


def test_couples_tsv_roundtrip(tmp_path):
    couples = [
        Couple(("a", "b"), ("c", "d"), PAIR),
        Couple(("x", "y"), ("z", "w"), NONPAIR),
    ]
    path = str(tmp_path / "couples.tsv")
    write_couples(path, couples)
    assert read_couples(path) == couples
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    assert first == "1\ta b\tc d\n"


def test_read_couples_uniform_rejects_mixed_lengths(tmp_path):
    path = str(tmp_path / "couples.tsv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("1\ta b\tc d\n")
        fh.write("0\tx\ty\n")
    with pytest.raises(ValueError, match=r":2: couple length 1 differs from 2"):
        read_couples_uniform(path)


def test_read_couples_rejects_bad_label(tmp_path):
    path = str(tmp_path / "couples.tsv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("2\ta\tb\n")
    with pytest.raises(ValueError, match="label"):
        read_couples(path)
