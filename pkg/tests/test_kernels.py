import numpy as np
import pytest

from nldd import _dist_py

try:
    from nldd import _dist_cy
except ImportError:
    _dist_cy = None


def test_python_backend_matches_direct_computation():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(5)
    mat = rng.standard_normal((7, 5))
    want = [np.sum((mat[i] - x) ** 2) for i in range(7)]
    assert _dist_py.sq_dists(x, mat) == pytest.approx(want)


@pytest.mark.skipif(_dist_cy is None, reason="compiled backend not built")
def test_backends_agree():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((20, 8))
    b = rng.standard_normal((15, 8))
    x = rng.standard_normal(8)
    assert np.allclose(_dist_py.sq_dists(x, a), _dist_cy.sq_dists(x, a),
                       rtol=1e-12, atol=1e-12)
    assert np.allclose(_dist_py.pairwise_sq_dists(a, b),
                       _dist_cy.pairwise_sq_dists(a, b),
                       rtol=1e-12, atol=1e-12)


def test_selected_backend_exposed():
    from nldd import kernels
    assert kernels.BACKEND in ("python", "cython")
