"""Command-line interface: ``resample``, ``ensemble``, ``generate``, ``stats``.

Exit status is 0 on success, 2 on usage errors and 1 on data or sampler
errors (with a one-line diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import combine, over_sampling as over, under_sampling as under
from .core import AUTO, balancing_ratio, class_stats, ratio_value
from .cli_io import format_float, read_csv, write_csv
from .ensemble import balance_cascade, easy_ensemble
from .exceptions import ResamplingError
from .rng import MASK64
from .synthgen import make_imbalanced

METHODS = (
    "random-under", "cluster-centroids", "nearmiss1", "nearmiss2", "nearmiss3",
    "iht", "tomek", "enn", "cnn", "oss", "ncr", "random-over", "smote",
    "smote-borderline1", "smote-borderline2", "smote-svm", "smote-tomek",
    "smote-enn",
)

_DEFAULT_K = {"nearmiss1": 3, "nearmiss2": 3, "nearmiss3": 3, "iht": 5, "enn": 3,
              "ncr": 3, "smote-enn": 3}


def _seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _ratio(text):
    if text == AUTO:
        return AUTO
    try:
        return ratio_value(text)
    except ResamplingError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _weights(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid weights {text!r}") from None
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("weights take two comma-separated values")
    return parts


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rebalance", description="Resample imbalanced binary CSV datasets."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resample", help="apply one sampler to a CSV file")
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--ratio", type=_ratio, default=AUTO)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--k", type=_positive_int, help="neighbors (NearMiss, IHT, ENN, NCR, SMOTE-ENN)")
    p.add_argument("--m", type=_positive_int, default=3, help="NearMiss-3 shortlist size")
    p.add_argument("--k-neighbors", type=_positive_int, default=5, help="SMOTE neighbors")
    p.add_argument("--m-neighbors", type=_positive_int, default=10, help="danger neighborhood")
    p.add_argument("--remove", choices=(under.MAJORITY, under.BOTH), default=under.MAJORITY)
    p.add_argument("--scope", choices=(under.MAJORITY, under.ALL), default=under.MAJORITY)
    p.add_argument("--with-replacement", action="store_true")
    p.add_argument("--svm-lambda", type=float, default=1e-2)
    p.add_argument("--svm-epochs", type=_positive_int, default=20)

    p = sub.add_parser("ensemble", help="write balanced subsets to a directory")
    p.add_argument("--method", required=True, choices=("easy", "cascade"))
    p.add_argument("--n-subsets", type=_positive_int, default=10)
    p.add_argument("--max-iter", type=_positive_int, default=10)
    p.add_argument("--classifier", choices=("knn", "svm"), default="knn")
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--ratio", type=_ratio, default=AUTO)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("generate", help="write a synthetic imbalanced dataset")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--features", type=_positive_int, required=True)
    p.add_argument("--weights", type=_weights, default=[0.1, 0.9])
    p.add_argument("--class-sep", type=float, default=2.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("stats", help="print class counts and balancing ratio")
    p.add_argument("-i", "--input", required=True)
    return parser


def build_sampler(args):
    """Sampler object for a parsed ``resample`` command."""
    method, ratio, seed = args.method, args.ratio, args.seed
    k = args.k if args.k is not None else _DEFAULT_K.get(method)
    smote_kind = {
        "smote": over.REGULAR,
        "smote-borderline1": over.BORDERLINE1,
        "smote-borderline2": over.BORDERLINE2,
        "smote-svm": over.SVM,
        "smote-tomek": over.REGULAR,
        "smote-enn": over.REGULAR,
    }
    if method in smote_kind:
        sm = over.SMOTE(smote_kind[method], ratio, args.k_neighbors, args.m_neighbors,
                        seed, args.svm_lambda, args.svm_epochs)
        if method == "smote-tomek":
            return combine.SMOTETomek(sm)
        if method == "smote-enn":
            return combine.SMOTEENN(sm, k)
        return sm
    if method.startswith("nearmiss"):
        return under.NearMiss(int(method[-1]), ratio, k, args.m, seed)
    return {
        "random-under": lambda: under.RandomUnderSampler(ratio, seed, args.with_replacement),
        "cluster-centroids": lambda: under.ClusterCentroids(ratio, seed),
        "iht": lambda: under.InstanceHardnessThreshold(ratio, k, seed),
        "tomek": lambda: under.TomekLinks(args.remove),
        "enn": lambda: under.EditedNearestNeighbours(k, args.scope),
        "cnn": lambda: under.CondensedNearestNeighbour(seed),
        "oss": lambda: under.OneSidedSelection(seed),
        "ncr": lambda: under.NeighbourhoodCleaningRule(k),
        "random-over": lambda: over.RandomOverSampler(ratio, seed),
    }[method]()


def _run(args):
    if args.command == "resample":
        result = build_sampler(args).fit_sample(read_csv(args.input))
        write_csv(result.dataset, args.output)
    elif args.command == "ensemble":
        d = read_csv(args.input)
        if args.method == "easy":
            sets = easy_ensemble(d, args.n_subsets, args.ratio, args.seed)
        else:
            sets = balance_cascade(d, args.max_iter, args.classifier, args.k,
                                   args.ratio, args.seed)
        os.makedirs(args.out_dir, exist_ok=True)
        for i, subset in enumerate(sets):
            write_csv(subset.dataset, os.path.join(args.out_dir, f"subset_{i:03d}.csv"))
    elif args.command == "generate":
        d = make_imbalanced(args.n, args.features, args.weights, args.class_sep,
                            args.sigma, args.seed)
        write_csv(d, args.output)
    elif args.command == "stats":
        s = class_stats(read_csv(args.input))
        print(f"minority={s.minority_label} n_min={s.n_minority} "
              f"n_maj={s.n_majority} ratio={format_float(balancing_ratio(s))}")


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        _run(args)
    except (ResamplingError, OSError, ValueError) as err:
        message = " ".join(str(err).split())
        print(f"rebalance: error: {message}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
