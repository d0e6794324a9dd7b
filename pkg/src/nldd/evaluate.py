"""Experiment harness: cross-validation, holdout evaluation, the exact
Wilcoxon signed-rank test, synthetic data generation, and the
training-subsample scaling experiment."""

import time
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm, rankdata

from .br import br_fit, br_predict, smbr_predict
from .data import DataError, Dataset
from .metrics import aggregate, instance_metrics, MetricsReport
from .model import nldd_predict, nldd_train

METHODS = ("br", "smbr", "nldd")


@dataclass
class FoldPlan:
    fold_assignments: np.ndarray  # length N, fold ids in [0, k)


@dataclass
class WilcoxonResult:
    statistic: float  # W+, sum of positive-difference ranks
    p_value: float
    n_effective: int
    exact: bool


def make_folds(n, k, seed):
    """Seeded fold assignment with sizes differing by at most 1."""
    if k < 2 or k > n:
        raise ValueError(f"k must be in [2, {n}]")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    assignments = np.empty(n, dtype=np.int64)
    assignments[perm] = np.arange(n) % k
    return FoldPlan(fold_assignments=assignments)


def train_predictor(method, train, seed=0, params=None):
    """Fit ``method`` on ``train``, returning a raw-row -> labelset callable."""
    params = params or {}
    lam = params.get("lam", 1.0)
    if method == "br":
        m = br_fit(train, lam=lam)
        return lambda x: br_predict(m, x)
    if method == "smbr":
        m = br_fit(train, lam=lam)
        return lambda x: smbr_predict(m, train, x)
    if method == "nldd":
        m = nldd_train(train, seed, lam=lam,
                       subsample_fraction=params.get("subsample_fraction", 1.0))
        return lambda x: nldd_predict(m, x)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def _evaluate_rows(predict, test):
    per_instance = [instance_metrics(test.labels[i], predict(test.features[i]))
                    for i in range(test.n)]
    return aggregate(per_instance)


def cross_validate(data, method, k, seed, params=None):
    """k-fold CV; returns (per-fold reports, mean report)."""
    plan = make_folds(data.n, k, seed)
    fold_reports = []
    for fold in range(k):
        test_idx = np.flatnonzero(plan.fold_assignments == fold)
        train_idx = np.flatnonzero(plan.fold_assignments != fold)
        try:
            predict = train_predictor(method, data.subset(train_idx),
                                      seed=seed, params=params)
            fold_reports.append(_evaluate_rows(predict, data.subset(test_idx)))
        except Exception as exc:
            raise type(exc)(f"fold {fold}: {exc}") from exc
    means = np.array([[r.hamming, r.zero_one, r.jaccard, r.f_measure]
                      for r in fold_reports]).mean(axis=0)
    mean_report = MetricsReport(hamming=float(means[0]), zero_one=float(means[1]),
                                jaccard=float(means[2]), f_measure=float(means[3]),
                                n_instances=data.n)
    return fold_reports, mean_report


def holdout_eval(train, test, method, seed=0, params=None):
    """Train on ``train`` and aggregate metrics over all ``test`` rows."""
    if train.d != test.d or train.n_labels != test.n_labels:
        raise DataError("train/test dimension mismatch")
    predict = train_predictor(method, train, seed=seed, params=params)
    return _evaluate_rows(predict, test)


def _exact_sf_distribution(ranks2):
    # Count of sign assignments achieving each doubled rank sum.
    total = int(ranks2.sum())
    counts = np.zeros(total + 1)
    counts[0] = 1.0
    for r in ranks2:
        new = counts.copy()
        new[r:] += counts[:total + 1 - r]
        counts = new
    return counts


def wilcoxon_signed_rank(a, b, alternative="two_sided"):
    """Wilcoxon signed-rank test of paired samples.

    Zero differences are dropped; tied absolute differences get average
    ranks. The p-value is exact (full sign enumeration) for up to 20
    nonzero differences, a tie-corrected normal approximation beyond.
    """
    if alternative not in ("less", "greater", "two_sided"):
        raise ValueError(f"unknown alternative {alternative!r}")
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.size < 1:
        raise ValueError("samples must be nonempty and of equal length")
    diffs = a - b
    nz = diffs[diffs != 0]
    n = nz.size
    if n == 0:
        return WilcoxonResult(statistic=0.0, p_value=1.0, n_effective=0, exact=True)
    ranks = rankdata(np.abs(nz))
    w_plus = float(ranks[nz > 0].sum())

    if n <= 20:
        ranks2 = np.rint(2 * ranks).astype(np.int64)
        counts = _exact_sf_distribution(ranks2)
        denom = 2.0 ** n
        w2 = int(round(2 * w_plus))
        p_greater = counts[w2:].sum() / denom
        p_less = counts[:w2 + 1].sum() / denom
        exact = True
    else:
        mu = n * (n + 1) / 4.0
        var = n * (n + 1) * (2 * n + 1) / 24.0
        _, tie_counts = np.unique(np.abs(nz), return_counts=True)
        var -= np.sum(tie_counts * (tie_counts ** 2 - 1)) / 48.0
        z = (w_plus - mu) / np.sqrt(var)
        p_greater = float(norm.sf(z))
        p_less = float(norm.cdf(z))
        exact = False

    if alternative == "greater":
        p = p_greater
    elif alternative == "less":
        p = p_less
    else:
        p = min(1.0, 2.0 * min(p_greater, p_less))
    return WilcoxonResult(statistic=w_plus, p_value=float(p),
                          n_effective=n, exact=exact)


def generate_synthetic(n, d, n_labels, correlation, noise, seed):
    """Gaussian features with labels thresholded from mixed linear scores.

    Each label's score mixes one shared direction with a label-specific one;
    ``correlation`` in [0, 1] is the shared weight, so 1 collapses all labels
    onto a single score (at most 2 distinct labelsets) and 0 makes labels
    independent given the features.
    """
    if n < 8 or d < 2 or n_labels < 2:
        raise ValueError("need n >= 8, d >= 2, L >= 2")
    if not 0.0 <= correlation <= 1.0:
        raise ValueError("correlation must be in [0, 1]")
    if noise < 0:
        raise ValueError("noise must be >= 0")
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, d))
    w_shared = rng.standard_normal(d)
    w_own = rng.standard_normal((d, n_labels))
    eps_shared = rng.standard_normal(n)
    eps_own = rng.standard_normal((n, n_labels))
    shared = (X @ w_shared + noise * np.sqrt(d) * eps_shared)[:, None]
    own = X @ w_own + noise * np.sqrt(d) * eps_own
    scores = correlation * shared + (1.0 - correlation) * own
    labels = (scores > 0).astype(np.int64)
    return Dataset(X, labels)


def scaling_experiment(data, fractions, seed, lam=1.0):
    """75/25 split, then train+test the core method at each training fraction.

    Returns one record per fraction with the deterministic mining distance
    counter, the measured wall time, and L * mean Hamming loss (the average
    number of mismatched labels).
    """
    for f in fractions:
        if not 0.0 < f <= 1.0:
            raise ValueError(f"fraction {f} outside (0, 1]")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(data.n)
    n_train = int(round(0.75 * data.n))
    train = data.subset(np.sort(perm[:n_train]))
    test = data.subset(np.sort(perm[n_train:]))

    rows = []
    for f in fractions:
        t0 = time.perf_counter()
        model = nldd_train(train, seed, lam=lam, subsample_fraction=f)
        hl = np.mean([instance_metrics(test.labels[i],
                                       nldd_predict(model, test.features[i]))[0]
                      for i in range(test.n)])
        rows.append({
            "fraction": f,
            "distance_ops": model.distance_ops,
            "wall_time": time.perf_counter() - t0,
            "mean_mismatched_labels": float(hl) * data.n_labels,
        })
    return rows


def observed_labelset_split(train, test):
    """Test indices whose exact labelset occurs in train, and the rest."""
    if train.n_labels != test.n_labels:
        raise DataError("label dimension mismatch")
    seen = {tuple(row) for row in train.labels}
    observed, unobserved = [], []
    for i in range(test.n):
        (observed if tuple(test.labels[i]) in seen else unobserved).append(i)
    return observed, unobserved
