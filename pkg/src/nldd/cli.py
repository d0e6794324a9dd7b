"""Command-line interface: train, predict, eval, compare, scaling, summary.

Exit codes: 2 usage errors, 3 data errors, 4 training failures.
"""

import argparse
import csv
import json
import sys

import numpy as np

from .br import br_fit, br_predict
from .data import DataError, dataset_summary, load_csv, load_sparse
from .evaluate import (cross_validate, holdout_eval, scaling_experiment,
                       wilcoxon_signed_rank, METHODS)
from .learner import TrainingError
from .model import nldd_predict, nldd_train, predict_with_confidence
from .persist import load_model, save_model

LOSS_METRICS = ("hamming", "zero_one")
SCORE_METRICS = ("jaccard", "f_measure")
ALL_METRICS = LOSS_METRICS + SCORE_METRICS


def _load_dataset(path, labels, fmt):
    if fmt == "sparse":
        return load_sparse(path, labels)
    return load_csv(path, labels)


def _load_features(path, labels, fmt):
    if labels > 0:
        return _load_dataset(path, labels, fmt).features
    if fmt == "sparse":
        raise DataError("sparse input requires --labels >= 1")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise DataError(f"{path}:{lineno}: column count mismatch")
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise DataError(f"{path}:{lineno}: non-numeric cell") from None
    if not rows:
        raise DataError(f"{path}: no data rows")
    return np.array(rows)


def _write_report(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, separators=(",", ":")) + "\n")


def _print_metrics_table(rows, header="split"):
    print(f"{header:>10}  {'hamming':>9}  {'zero_one':>9}  "
          f"{'jaccard':>9}  {'f_measure':>9}  {'n':>6}")
    for name, rep in rows:
        print(f"{name:>10}  {rep.hamming:9.4f}  {rep.zero_one:9.4f}  "
              f"{rep.jaccard:9.4f}  {rep.f_measure:9.4f}  {rep.n_instances:6d}")


def cmd_train(args):
    data = _load_dataset(args.data, args.labels, args.format)
    if args.method == "nldd":
        model = nldd_train(data, args.seed, lam=args.lam,
                           subsample_fraction=args.subsample)
        save_model(model, args.model)
        f = model.fit
        print(f"trained nldd: N={data.n} d={data.d} L={data.n_labels} "
              f"pairs={model.pair_count}")
        print(f"coefficients: beta0={f.beta0:.6f} beta1={f.beta1:.6f} "
              f"beta2={f.beta2:.6f} converged={f.converged}")
    else:
        model = br_fit(data, lam=args.lam)
        save_model(model, args.model)
        print(f"trained br: N={data.n} d={data.d} L={data.n_labels}")
    print(f"model written to {args.model}")
    return 0


def cmd_predict(args):
    method, model = load_model(args.model)
    features = _load_features(args.data, args.labels, args.format)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for row in features:
            if method == "nldd":
                if args.confidence:
                    pred, th = predict_with_confidence(model, row)
                    out.write(",".join(str(int(v)) for v in pred)
                              + f",{th!r}\n")
                    continue
                pred = nldd_predict(model, row)
            else:
                pred = br_predict(model, row)
                if args.confidence:
                    raise DataError("--confidence requires an nldd model")
            out.write(",".join(str(int(v)) for v in pred) + "\n")
    finally:
        if args.out:
            out.close()
    return 0


def cmd_eval(args):
    if (args.test is None) == (args.cv is None):
        raise ValueError("provide exactly one of --test or --cv")
    data = _load_dataset(args.data, args.labels, args.format)
    params = {"lam": args.lam, "subsample_fraction": args.subsample}
    records = []
    if args.cv is not None:
        fold_reports, mean_report = cross_validate(
            data, args.method, args.cv, args.seed, params=params)
        rows = [(f"fold {i}", rep) for i, rep in enumerate(fold_reports)]
        rows.append(("mean", mean_report))
        records = [dict(split=f"fold{i}", **rep.as_dict())
                   for i, rep in enumerate(fold_reports)]
        records.append(dict(split="mean", **mean_report.as_dict()))
    else:
        test = _load_dataset(args.test, args.labels, args.format)
        report = holdout_eval(data, test, args.method,
                              seed=args.seed, params=params)
        rows = [("test", report)]
        records = [dict(split="test", **report.as_dict())]
    _print_metrics_table(rows)
    if args.out:
        _write_report(args.out, records)
    return 0


def _rank(values, higher_is_better):
    # Rank 1 is best; ties share the average rank.
    from scipy.stats import rankdata
    vals = np.asarray(values, dtype=np.float64)
    return rankdata(-vals if higher_is_better else vals)


def cmd_compare(args):
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if len(methods) < 2:
        raise ValueError("--methods needs at least 2 method ids")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}")
    datasets = [_load_dataset(p, args.labels, args.format) for p in args.data]
    if len(datasets) < 2 and args.cv < 2:
        raise ValueError("need at least 2 datasets or --cv >= 2")
    params = {"lam": args.lam, "subsample_fraction": args.subsample}

    # metric value per (method, dataset) mean, plus per-fold values for pairing
    means = {m: {} for m in methods}
    folds = {m: {} for m in methods}
    for di, data in enumerate(datasets):
        for m in methods:
            fold_reports, mean_report = cross_validate(
                data, m, args.cv, args.seed, params=params)
            means[m][di] = mean_report
            folds[m][di] = fold_reports

    print("per-method per-dataset means:")
    for di, path in enumerate(args.data):
        _print_metrics_table([(m, means[m][di]) for m in methods],
                             header=f"ds{di}")

    records = []
    print("\naverage ranks (1 = best):")
    avg_ranks = {}
    for metric in ALL_METRICS:
        ranks = np.zeros(len(methods))
        for di in range(len(datasets)):
            vals = [getattr(means[m][di], metric) for m in methods]
            ranks += _rank(vals, metric in SCORE_METRICS)
        ranks /= len(datasets)
        avg_ranks[metric] = dict(zip(methods, ranks))
        print(f"  {metric:>10}: " + "  ".join(
            f"{m}={r:.2f}" for m, r in zip(methods, ranks)))
    records.append({"average_ranks": avg_ranks})

    # Paired observations: dataset means when comparing across datasets,
    # per-fold values when only one dataset is given.
    def observations(m, metric):
        if len(datasets) >= 2:
            return [getattr(means[m][di], metric) for di in range(len(datasets))]
        return [getattr(rep, metric) for rep in folds[m][0]]

    print("\none-sided Wilcoxon p-values (row method better than column):")
    for metric in ALL_METRICS:
        for i, m1 in enumerate(methods):
            for m2 in methods[i + 1:]:
                a = observations(m1, metric)
                b = observations(m2, metric)
                alt = "greater" if metric in SCORE_METRICS else "less"
                res = wilcoxon_signed_rank(a, b, alternative=alt)
                sig = " *" if res.p_value <= 0.05 else ""
                print(f"  {metric}: {m1} vs {m2}: p={res.p_value:.5f}{sig}")
                records.append({"metric": metric, "method_a": m1,
                                "method_b": m2, "p_value": res.p_value,
                                "statistic": res.statistic,
                                "n_effective": res.n_effective,
                                "exact": res.exact})
    if args.out:
        _write_report(args.out, records)
    return 0


def cmd_scaling(args):
    data = _load_dataset(args.data, args.labels, args.format)
    fractions = [float(f) for f in args.fractions.split(",")]
    rows = scaling_experiment(data, fractions, args.seed, lam=args.lam)
    print(f"{'fraction':>9}  {'dist_ops':>10}  {'wall_time':>10}  {'mismatched':>10}")
    for row in rows:
        print(f"{row['fraction']:9.2f}  {row['distance_ops']:10d}  "
              f"{row['wall_time']:10.3f}  {row['mean_mismatched_labels']:10.4f}")
    if args.out:
        _write_report(args.out, rows)
    return 0


def cmd_summary(args):
    data = _load_dataset(args.data, args.labels, args.format)
    summary = dataset_summary(data)
    for key, value in summary.items():
        print(f"{key}: {value}")
    return 0


def _add_common(p, labels_required=True, multi_data=False):
    if multi_data:
        p.add_argument("--data", required=True, nargs="+")
    else:
        p.add_argument("--data", required=True)
    p.add_argument("--labels", type=int, required=labels_required, default=0)
    p.add_argument("--format", choices=("csv", "sparse"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--subsample", type=float, default=1.0)
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap; does not affect results")


def build_parser():
    parser = argparse.ArgumentParser(prog="nldd",
                                     description="Multi-label classification "
                                     "by nearest labelset with double distances")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="fit a model and write it to disk")
    _add_common(p)
    p.add_argument("--method", choices=("br", "nldd"), required=True)
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="predict labelsets for new rows")
    _add_common(p, labels_required=False)
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p.add_argument("--confidence", action="store_true")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("eval", help="holdout or cross-validated metrics")
    _add_common(p)
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--test")
    p.add_argument("--cv", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="compare methods with Wilcoxon tests")
    _add_common(p, multi_data=True)
    p.add_argument("--methods", required=True,
                   help="comma-separated method ids")
    p.add_argument("--cv", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("scaling", help="training-fraction scaling experiment")
    _add_common(p)
    p.add_argument("--fractions",
                   default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0")
    p.add_argument("--out")
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("summary", help="dataset summary statistics")
    _add_common(p)
    p.set_defaults(func=cmd_summary)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TrainingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
