"""Binary Relevance layer and the Subset-Mapping (SMBR) baseline."""

from dataclasses import dataclass

import numpy as np

from .data import standardize_apply, standardize_fit
from .learner import (ConstantProbModel, fit_fallback, fit_logistic,
                      predict_proba_matrix)


@dataclass
class BRModel:
    classifiers: list  # one LinearProbModel or ConstantProbModel per label
    stats: object  # StandardizationStats
    label_names: list


def br_fit(train, lam=1.0):
    """One probabilistic classifier per label, fit on standardized features.

    Constant label columns fall back to the Laplace-smoothed constant model.
    """
    stats = standardize_fit(train)
    z = standardize_apply(stats, train.features)
    classifiers = []
    for j in range(train.n_labels):
        col = train.labels[:, j]
        if col.min() == col.max():
            classifiers.append(fit_fallback(col))
        else:
            classifiers.append(fit_logistic(z, col, lam=lam))
    return BRModel(classifiers=classifiers, stats=stats,
                   label_names=list(train.label_names))


def br_predict_proba(model, x):
    """Length-L probability vector for one raw feature row."""
    return br_predict_proba_matrix(model, np.atleast_2d(x))[0]


def br_predict_proba_matrix(model, features):
    """(n, L) probability matrix for raw feature rows."""
    z = standardize_apply(model.stats, features)
    cols = [predict_proba_matrix(clf, z) for clf in model.classifiers]
    return np.column_stack(cols)


def br_predict(model, x):
    """Hard BR prediction: threshold each probability at 0.5 (>= maps to 1)."""
    return (br_predict_proba(model, x) >= 0.5).astype(np.int64)


def _labelset_counts(train):
    counts = {}
    for row in train.labels:
        key = tuple(int(v) for v in row)
        counts[key] = counts.get(key, 0) + 1
    return counts


def smbr_predict(model, train, x):
    """Map the hard BR output to the nearest observed training labelset.

    Ties in Hamming distance go to the more frequent training labelset,
    then the lexicographically smallest.
    """
    pred = br_predict(model, x)
    counts = _labelset_counts(train)
    best = None
    for labelset, freq in counts.items():
        dist = int(np.sum(pred != np.array(labelset)))
        key = (dist, -freq, labelset)
        if best is None or key < best[0]:
            best = (key, labelset)
    return np.array(best[1], dtype=np.int64)
