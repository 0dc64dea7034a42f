"""Command-line pipeline: extract, df, evaluate, train, report.

Every subcommand is deterministic given ``--seed`` and identical inputs.
Failures print a single ``error: ...`` line on stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import corpus, embeddings, evaluate, represent, training
from .factors import load_factors, save_factors

METHOD_CHOICES = ("tfidf",) + represent.AGGREGATION_KINDS

# Sub-stream tags so one --seed drives independent random stages.
_NONPAIR_STREAM = 1
_SPLIT_STREAM = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - single-line contract
        raise SystemExit(self._fail(message))

    def _fail(self, message: str) -> int:
        print(f"error: {message}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shortsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract pair/non-pair couples from a corpus")
    p_extract.add_argument("--corpus", required=True, help="one paragraph per line, blank line between articles")
    p_extract.add_argument("--embeddings", required=True, help="word2vec text file; tokens outside its vocabulary are dropped")
    p_extract.add_argument("--n-words", type=int, required=True, help="fragment length in words")
    p_extract.add_argument("--max-pairs", type=int, default=None, help="cap on extracted pairs (default: all)")
    p_extract.add_argument("--split", default=None, metavar="TRAIN,TEST,VAL", help="also write stratified split files next to --out")
    p_extract.add_argument("--seed", type=int, default=0)
    p_extract.add_argument("--out", required=True, help="couples TSV output path")

    p_df = sub.add_parser("df", help="build the document-frequency table from a corpus")
    p_df.add_argument("--corpus", required=True)
    p_df.add_argument("--out", required=True, help="df TSV output path")

    p_eval = sub.add_parser("evaluate", help="score couples and report split error / JS divergence")
    p_eval.add_argument("--couples", default=None, help="couples TSV (in-sample evaluation)")
    p_eval.add_argument("--select-on", default=None, help="couples TSV used to pick the split threshold")
    p_eval.add_argument("--report-on", default=None, help="couples TSV the error is reported on")
    p_eval.add_argument("--embeddings", required=True)
    p_eval.add_argument("--df", required=True)
    p_eval.add_argument("--method", default="mean", help=f"comma-separated subset of: {', '.join(METHOD_CHOICES)}")
    p_eval.add_argument("--distance", default="euclidean", help=f"comma-separated subset of: {', '.join(evaluate.EVAL_DISTANCES)}")
    p_eval.add_argument("--bins", type=int, default=100, help="histogram bin count")
    p_eval.add_argument("--top-fraction", type=float, default=0.3)
    p_eval.add_argument("--factors", default=None, help="factors JSON (required by mean_importance)")
    p_eval.add_argument("--dump-vectors", action="store_true", help="also write the report-set fragment vectors per method")
    p_eval.add_argument("--out", required=True, help="output directory")

    p_train = sub.add_parser("train", help="learn importance factors with minibatch SGD")
    p_train.add_argument("--couples", required=True, help="training couples TSV, homogeneous length")
    p_train.add_argument("--embeddings", required=True)
    p_train.add_argument("--df", required=True)
    p_train.add_argument("--batch-size", type=int, default=100)
    p_train.add_argument("--lr", type=float, default=0.1)
    p_train.add_argument("--momentum", type=float, default=0.9)
    p_train.add_argument("--lambda", dest="reg_lambda", type=float, default=0.0015)
    p_train.add_argument("--init", type=float, default=0.5)
    p_train.add_argument("--epochs", type=int, default=1)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--out", required=True, help="factors JSON output path")
    p_train.add_argument("--trace", default=None, help="per-batch objective CSV (default: <out>.trace.csv)")

    p_report = sub.add_parser("report", help="merge evaluation reports into a comparison table")
    p_report.add_argument("inputs", nargs="+", help="evaluation report JSON files")
    p_report.add_argument("--out", default=None, help="CSV output path (default: print table only)")

    return parser


def cmd_extract(args) -> int:
    emb = embeddings.load_embeddings(args.embeddings)
    paragraphs = corpus.read_paragraphs(args.corpus)
    if not paragraphs:
        raise ValueError(f"corpus {args.corpus} contains no paragraphs")
    if args.n_words < 1:
        raise ValueError("--n-words must be >= 1")

    filtered = [
        (article, [w for w in tokens if w in emb])
        for article, tokens in paragraphs
    ]

    pairs = []
    for _, tokens in filtered:
        couple = corpus.extract_pair(tokens, args.n_words)
        if couple is not None:
            pairs.append(couple)
            if args.max_pairs is not None and len(pairs) >= args.max_pairs:
                break
    if not pairs:
        raise ValueError(
            f"zero extractable pairs: no paragraph has {2 * args.n_words + 2} usable words"
        )

    eligible = [
        (article, tokens) for article, tokens in filtered if len(tokens) >= args.n_words
    ]
    articles = {article for article, _ in eligible}
    if len(articles) < 2:
        raise ValueError("non-pair extraction needs paragraphs from at least two articles")

    rng = np.random.default_rng([args.seed, _NONPAIR_STREAM])
    nonpairs = []
    attempts = 0
    while len(nonpairs) < len(pairs):
        attempts += 1
        if attempts > 1000 * len(pairs) + 1000:
            raise ValueError("non-pair sampling failed to find cross-article paragraphs")
        a, b = rng.integers(0, len(eligible), size=2)
        if eligible[a][0] == eligible[b][0]:
            continue
        couple = corpus.extract_nonpair(eligible[a][1], eligible[b][1], args.n_words, rng)
        if couple is not None:
            nonpairs.append(couple)

    couples = pairs + nonpairs
    corpus.write_couples(args.out, couples)
    print(f"pairs={len(pairs)} nonpairs={len(nonpairs)} out={args.out}")

    if args.split is not None:
        fractions = _parse_fractions(args.split)
        split_rng = np.random.default_rng([args.seed, _SPLIT_STREAM])
        split = corpus.split_dataset(couples, fractions, split_rng)
        stem, ext = os.path.splitext(args.out)
        for name, subset in (
            ("train", split.train),
            ("test", split.test),
            ("validation", split.validation),
        ):
            path = f"{stem}.{name}{ext}"
            corpus.write_couples(path, subset)
            print(f"{name}={len(subset)} out={path}")
    return 0


def _parse_fractions(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("--split needs three comma-separated fractions")
    try:
        fractions = tuple(float(p) for p in parts)
    except ValueError:
        raise ValueError(f"unparsable split fractions: {text!r}") from None
    return fractions  # type: ignore[return-value]


def cmd_df(args) -> int:
    paragraphs = corpus.read_paragraphs(args.corpus)
    table = embeddings.compute_document_frequencies(tokens for _, tokens in paragraphs)
    embeddings.save_df_table(args.out, table)
    print(f"documents={table.doc_count} vocabulary={len(table.df)} out={args.out}")
    return 0


def _parse_methods(args) -> list[tuple[str, represent.AggregationMethod | str]]:
    methods = []
    for name in args.method.split(","):
        name = name.strip()
        if name not in METHOD_CHOICES:
            raise ValueError(
                f"unknown method {name!r}; valid: {', '.join(METHOD_CHOICES)}"
            )
        if name == "tfidf":
            methods.append((name, "tfidf"))
        elif name == "mean_importance":
            if args.factors is None:
                raise ValueError("method mean_importance needs --factors")
            factors = load_factors(args.factors)
            methods.append(
                (name, represent.AggregationMethod(name, factors=factors))
            )
        else:
            methods.append(
                (name, represent.AggregationMethod(name, top_fraction=args.top_fraction))
            )
    return methods


def cmd_evaluate(args) -> int:
    if (args.select_on is None) != (args.report_on is None):
        raise ValueError("--select-on and --report-on must be given together")
    if args.select_on is None and args.couples is None:
        raise ValueError("need --couples, or both --select-on and --report-on")

    for name in args.distance.split(","):
        if name.strip() not in evaluate.EVAL_DISTANCES:
            raise ValueError(
                f"unknown distance {name.strip()!r}; valid: {', '.join(evaluate.EVAL_DISTANCES)}"
            )
    distances = [name.strip() for name in args.distance.split(",")]
    methods = _parse_methods(args)

    emb = embeddings.load_embeddings(args.embeddings)
    df = embeddings.load_df_table(args.df)
    if args.select_on is not None:
        select_couples = corpus.read_couples(args.select_on)
        report_couples = (
            select_couples
            if os.path.abspath(args.report_on) == os.path.abspath(args.select_on)
            else corpus.read_couples(args.report_on)
        )
    else:
        select_couples = corpus.read_couples(args.couples)
        report_couples = select_couples

    os.makedirs(args.out, exist_ok=True)
    for method_name, method in methods:
        # tf-idf is always scored with cosine; one entry regardless of --distance.
        combo_distances = ["cosine"] if method_name == "tfidf" else distances
        for distance in combo_distances:
            report, scored = evaluate.evaluate_method(
                method,
                distance,
                select_couples,
                report_couples,
                emb,
                df,
                bins=args.bins,
            )
            tag = f"{method_name}_{report.distance}"
            with open(os.path.join(args.out, f"report_{tag}.json"), "w", encoding="utf-8") as fh:
                fh.write(report.to_json())
            with open(os.path.join(args.out, f"hist_{tag}.csv"), "w", encoding="utf-8") as fh:
                fh.write(evaluate.histogram_csv(scored, args.bins))
            print(
                f"method={method_name} distance={report.distance} "
                f"split_error={report.split_error:.6f} js_divergence={report.js_divergence:.6f}"
            )
        if args.dump_vectors and method_name != "tfidf":
            path = os.path.join(args.out, f"vectors_{method_name}.csv")
            with open(path, "w", encoding="utf-8") as fh:
                for couple in report_couples:
                    for fragment in (couple.first, couple.second):
                        vec = represent.vectorize(fragment, method, emb, df)
                        fh.write(represent.vector_csv_row(vec) + "\n")
    return 0


def cmd_train(args) -> int:
    couples = corpus.read_couples_uniform(args.couples)
    if not couples:
        raise ValueError(f"no couples in {args.couples}")
    emb = embeddings.load_embeddings(args.embeddings)
    df = embeddings.load_df_table(args.df)
    config = training.TrainConfig(
        batch_size=args.batch_size,
        learning_rate=args.lr,
        momentum=args.momentum,
        reg_lambda=args.reg_lambda,
        init_value=args.init,
        epochs=args.epochs,
        seed=args.seed,
    )
    result = training.train(couples, config, emb, df)
    save_factors(args.out, result.factors, config.as_json_dict())
    trace_path = args.trace if args.trace is not None else f"{args.out}.trace.csv"
    with open(trace_path, "w", encoding="utf-8") as fh:
        fh.write("batch,objective\n")
        for i, objective in enumerate(result.objective_trace):
            fh.write(f"{i},{objective:.9g}\n")
    final = result.objective_trace[-1] if result.objective_trace else float("nan")
    print(
        f"couples={len(couples)} batches={len(result.objective_trace)} "
        f"final_objective={final:.9g} out={args.out}"
    )
    return 0


def cmd_report(args) -> int:
    reports = []
    for path in args.inputs:
        try:
            with open(path, encoding="utf-8") as fh:
                reports.append(evaluate.EvalReport.from_json(fh.read()))
        except (OSError, ValueError) as exc:
            raise ValueError(f"{path}: {exc}") from None

    reports.sort(key=lambda r: r.split_error)
    best = reports[0]
    best_n = best.n_pairs + best.n_nonpairs
    best_errors = round(best.split_error * best_n)

    rows = []
    for report in reports:
        n = report.n_pairs + report.n_nonpairs
        if report is best or len(reports) == 1:
            p_value = ""
        else:
            rate_errors = round(report.split_error * best_n)
            p_value = f"{evaluate.binomial_significance(best_errors, rate_errors, best_n):.6g}"
        rows.append(
            (
                report.method,
                report.distance,
                f"{report.split_threshold:.6g}",
                f"{report.split_error:.6f}",
                f"{report.js_divergence:.6f}",
                str(n),
                p_value,
            )
        )

    headers = ("method", "distance", "threshold", "split_error", "js_divergence", "n", "p_vs_best")
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
    for row in rows:
        print("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())

    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(",".join(headers) + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")
    return 0


_COMMANDS = {
    "extract": cmd_extract,
    "df": cmd_df,
    "evaluate": cmd_evaluate,
    "train": cmd_train,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, KeyError) as exc:
        detail = exc.args[0] if exc.args else exc
        print(f"error: {detail}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
