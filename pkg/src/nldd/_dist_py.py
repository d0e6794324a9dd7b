"""Pure-numpy distance kernels (fallback backend)."""

import numpy as np

BACKEND = "python"


def sq_dists(x, mat):
    """Squared Euclidean distances from row vector ``x`` to every row of ``mat``."""
    diff = mat - x
    return np.einsum("ij,ij->i", diff, diff)


def pairwise_sq_dists(a, b):
    """|a| x |b| matrix of squared Euclidean distances between row sets."""
    out = np.empty((a.shape[0], b.shape[0]))
    for i in range(a.shape[0]):
        out[i] = sq_dists(a[i], b)
    return out
