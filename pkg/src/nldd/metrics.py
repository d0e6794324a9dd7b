"""Per-instance multi-label evaluation metrics and their aggregation."""

from dataclasses import dataclass, asdict

import numpy as np


@dataclass
class MetricsReport:
    hamming: float
    zero_one: float
    jaccard: float
    f_measure: float
    n_instances: int

    def as_dict(self):
        return asdict(self)


def _check(y, yhat):
    y = np.asarray(y).ravel()
    yhat = np.asarray(yhat).ravel()
    if y.shape[0] != yhat.shape[0]:
        raise ValueError(f"length mismatch: {y.shape[0]} vs {yhat.shape[0]}")
    if y.shape[0] < 1:
        raise ValueError("empty label vectors")
    return y, yhat


def hamming_loss(y, yhat):
    """Fraction of label positions predicted incorrectly."""
    y, yhat = _check(y, yhat)
    return float(np.sum(y != yhat)) / y.shape[0]


def zero_one_loss(y, yhat):
    """0 iff the labelsets match exactly, else 1."""
    y, yhat = _check(y, yhat)
    return 0.0 if np.array_equal(y, yhat) else 1.0


def jaccard(y, yhat):
    """|intersection| / |union| of the positive labels; both-empty -> 1."""
    y, yhat = _check(y, yhat)
    union = np.sum((y == 1) | (yhat == 1))
    if union == 0:
        return 1.0
    inter = np.sum((y == 1) & (yhat == 1))
    return float(inter) / float(union)


def f_measure(y, yhat):
    """2|intersection| / (|y| + |yhat|); both-empty -> 1."""
    y, yhat = _check(y, yhat)
    denom = np.sum(y == 1) + np.sum(yhat == 1)
    if denom == 0:
        return 1.0
    inter = np.sum((y == 1) & (yhat == 1))
    return 2.0 * float(inter) / float(denom)


def instance_metrics(y, yhat):
    """(hamming, zero_one, jaccard, f_measure) for one instance."""
    return (hamming_loss(y, yhat), zero_one_loss(y, yhat),
            jaccard(y, yhat), f_measure(y, yhat))


def aggregate(per_instance):
    """Arithmetic mean of per-instance metric tuples."""
    if not per_instance:
        raise ValueError("no instances to aggregate")
    arr = np.asarray(per_instance, dtype=np.float64)
    means = arr.mean(axis=0)
    return MetricsReport(hamming=float(means[0]), zero_one=float(means[1]),
                         jaccard=float(means[2]), f_measure=float(means[3]),
                         n_instances=arr.shape[0])
