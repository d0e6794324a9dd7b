"""Core nearest-labelset method: double-distance pair mining, binomial
regression of the per-label misclassification probability, and prediction
by minimum expected loss."""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .br import br_fit, br_predict_proba, br_predict_proba_matrix
from .data import split_random, standardize_apply
from .learner import TrainingError


@dataclass
class DistancePair:
    dx: float  # Euclidean distance in standardized feature space
    dy: float  # Euclidean distance between p-hat and a labelset vertex
    loss: int  # mismatched labels against the true labelset


@dataclass
class BinomialFit:
    beta0: float
    beta1: float
    beta2: float
    converged: bool
    iterations: int
    final_gradient_norm: float


@dataclass
class NlddModel:
    br: object  # BRModel fit on the full (possibly subsampled) training data
    fit: BinomialFit
    train_features_std: np.ndarray
    train_labelsets: np.ndarray
    stats: object
    pair_count: int  # |S|
    distance_ops: int  # pairwise distance computations during mining


def mine_pairs(p_hat, true_labels, t1_features_std, t1_labels, x_std):
    """Select the two informative (dx, dy) pairs for one validation instance.

    The first pair minimizes dx (ties broken by smaller dy), the second
    minimizes dy (ties broken by smaller dx); remaining ties go to the
    lowest row index. When both selections hit the same row, a single
    pair is returned.
    """
    if t1_features_std.shape[0] == 0:
        raise ValueError("empty T1")
    p_hat = np.asarray(p_hat, dtype=np.float64)
    x_std = np.asarray(x_std, dtype=np.float64)
    dxsq = kernels.sq_dists(x_std, np.ascontiguousarray(t1_features_std))
    dysq = kernels.sq_dists(p_hat, np.ascontiguousarray(t1_labels, dtype=np.float64))

    cand_x = np.flatnonzero(dxsq == dxsq.min())
    i1 = cand_x[np.argmin(dysq[cand_x])]
    cand_y = np.flatnonzero(dysq == dysq.min())
    i2 = cand_y[np.argmin(dxsq[cand_y])]

    true_labels = np.asarray(true_labels)
    pairs = []
    for idx in ([i1] if i1 == i2 else [i1, i2]):
        loss = int(np.sum(true_labels != t1_labels[idx]))
        pairs.append(DistancePair(dx=math.sqrt(dxsq[idx]),
                                  dy=math.sqrt(dysq[idx]), loss=loss))
    return pairs


def _binomial_loglik(X, losses, n_trials, beta):
    z = X @ beta
    return float(np.sum(losses * z - n_trials * np.logaddexp(0.0, z)))


def fit_binomial_glm(pairs, n_labels, max_iter=50, tol=1e-8):
    """Newton-Raphson MLE of the logit-link binomial regression of the loss
    count (out of ``n_labels`` trials) on (dx, dy).

    Raises TrainingError when every loss is 0 or every loss is n_labels.
    Non-convergence is reported via ``converged=False``, not an exception.
    """
    if not pairs:
        raise ValueError("no distance pairs")
    losses = np.array([p.loss for p in pairs], dtype=np.float64)
    X = np.column_stack([np.ones(len(pairs)),
                         np.array([p.dx for p in pairs]),
                         np.array([p.dy for p in pairs])])
    total = losses.sum()
    if total == 0 or total == n_labels * len(pairs):
        raise TrainingError("degenerate losses: all 0 or all L, "
                            "binomial regression is unidentifiable")

    rate = total / (n_labels * len(pairs))
    beta = np.array([math.log(rate / (1.0 - rate)), 0.0, 0.0])
    converged = False
    grad_norm = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        theta_i = 1.0 / (1.0 + np.exp(-(X @ beta)))
        g = X.T @ (losses - n_labels * theta_i)
        grad_norm = float(np.max(np.abs(g)))
        if grad_norm < tol:
            converged = True
            break
        wt = np.clip(n_labels * theta_i * (1.0 - theta_i), 1e-12, None)
        H = X.T @ (wt[:, None] * X)
        try:
            delta = np.linalg.solve(H, g)
        except np.linalg.LinAlgError:
            break
        ll_old = _binomial_loglik(X, losses, n_labels, beta)
        step = 1.0
        beta_new = beta + delta
        for _ in range(20):
            if (np.isfinite(beta_new).all()
                    and _binomial_loglik(X, losses, n_labels, beta_new) >= ll_old):
                break
            step *= 0.5
            beta_new = beta + step * delta
        beta = beta_new
        if not np.isfinite(beta).all():
            break
    if not np.isfinite(beta).all():
        converged = False
        beta = np.where(np.isfinite(beta), beta, 0.0)
    else:
        theta_i = 1.0 / (1.0 + np.exp(-(X @ beta)))
        grad_norm = float(np.max(np.abs(X.T @ (losses - n_labels * theta_i))))
        if grad_norm < tol:
            converged = True
    return BinomialFit(beta0=float(beta[0]), beta1=float(beta[1]),
                       beta2=float(beta[2]), converged=converged,
                       iterations=it, final_gradient_norm=grad_norm)


def theta(fit, dx, dy):
    """Per-label misclassification probability at the given distances."""
    z = fit.beta0 + fit.beta1 * dx + fit.beta2 * dy
    t = 1.0 / (1.0 + math.exp(-z)) if z > -700 else 0.0
    return float(min(max(t, 1e-12), 1.0 - 1e-12))


def nldd_train(train, seed, lam=1.0, subsample_fraction=1.0,
               glm_max_iter=50, glm_tol=1e-8):
    """Full training pipeline: optional subsample, T1/T2 split, pair mining
    on T2 against T1, binomial regression, and a final fit on all rows."""
    if not 0.0 < subsample_fraction <= 1.0:
        raise ValueError("subsample_fraction must be in (0, 1]")
    sub = train
    if subsample_fraction < 1.0:
        rng = np.random.default_rng(seed)
        m = max(4, int(round(subsample_fraction * train.n)))
        keep = np.sort(rng.permutation(train.n)[:m])
        sub = train.subset(keep)

    split = split_random(sub, seed)
    t1 = sub.subset(split.t1_indices)
    t2 = sub.subset(split.t2_indices)

    br_star = br_fit(t1, lam=lam)
    t1_std = standardize_apply(br_star.stats, t1.features)
    t2_std = standardize_apply(br_star.stats, t2.features)
    p_hat = br_predict_proba_matrix(br_star, t2.features)

    pairs = []
    distance_ops = 0
    for i in range(t2.n):
        pairs.extend(mine_pairs(p_hat[i], t2.labels[i], t1_std,
                                t1.labels, x_std=t2_std[i]))
        distance_ops += t1.n

    try:
        fit = fit_binomial_glm(pairs, sub.n_labels,
                               max_iter=glm_max_iter, tol=glm_tol)
    except TrainingError as exc:
        raise TrainingError(f"binomial regression failed on mined pairs: {exc}") from exc
    if not fit.converged:
        # Pure label-space nearest labelset keeps the pipeline usable.
        warnings.warn("binomial regression did not converge; falling back to "
                      "label-space-only weights (beta1=0, beta2=1)",
                      RuntimeWarning, stacklevel=2)
        rate = sum(p.loss for p in pairs) / (sub.n_labels * len(pairs))
        rate = min(max(rate, 1e-12), 1.0 - 1e-12)
        fit = BinomialFit(beta0=math.log(rate / (1.0 - rate)), beta1=0.0,
                          beta2=1.0, converged=False, iterations=fit.iterations,
                          final_gradient_norm=fit.final_gradient_norm)

    br_full = br_fit(sub, lam=lam)
    return NlddModel(br=br_full, fit=fit,
                     train_features_std=standardize_apply(br_full.stats, sub.features),
                     train_labelsets=sub.labels.copy(),
                     stats=br_full.stats,
                     pair_count=len(pairs),
                     distance_ops=distance_ops)


def _candidate_distances(model, x):
    p_hat = br_predict_proba(model.br, x)
    x_std = standardize_apply(model.stats, np.atleast_2d(x))[0]
    dxsq = kernels.sq_dists(x_std, np.ascontiguousarray(model.train_features_std))
    dysq = kernels.sq_dists(p_hat, np.ascontiguousarray(model.train_labelsets,
                                                        dtype=np.float64))
    return np.sqrt(dxsq), np.sqrt(dysq)


def _best_row(model, x):
    dx, dy = _candidate_distances(model, x)
    score = model.fit.beta1 * dx + model.fit.beta2 * dy
    # argmin theta == argmin score (theta is monotone in the linear score);
    # ties break by smaller dy, then dx, then row index.
    j = int(np.lexsort((np.arange(dx.shape[0]), dx, dy, score))[0])
    return j, dx[j], dy[j]


def nldd_predict(model, x):
    """Labelset of the training row minimizing the estimated loss."""
    j, _, _ = _best_row(model, x)
    return model.train_labelsets[j].copy()


def predict_with_confidence(model, x):
    """(labelset, theta-hat) of the winning training row."""
    j, dx, dy = _best_row(model, x)
    return model.train_labelsets[j].copy(), theta(model.fit, dx, dy)
