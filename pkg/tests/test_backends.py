"""The compiled kernels and the pure-numpy fallback must agree."""

import numpy as np
import pytest

from kanhead import _kernels_py
from kanhead.splines import make_uniform_grid

cython_kernels = pytest.importorskip(
    "kanhead._kernels", reason="compiled extension not built"
)

GRID = make_uniform_grid(-1.0, 1.0, 5, 3)


def test_basis_matrix_agrees_bitwise():
    rng = np.random.default_rng(0)
    x = np.concatenate([rng.uniform(-2.5, 2.5, 500), [-1.0, 1.0, 0.0, 2.2, -2.2]])
    for degree in (0, 1, 2, 3):
        grid = make_uniform_grid(-1.0, 1.0, 5, degree)
        vc, dc = cython_kernels.basis_matrix(grid.knots, degree, x)
        vp, dp = _kernels_py.basis_matrix(grid.knots, degree, x)
        np.testing.assert_array_equal(vc, vp)
        np.testing.assert_array_equal(dc, dp)


def _random_tensors(seed, batch=6, in_dim=5, out_dim=4, nb=8):
    rng = np.random.default_rng(seed)
    return (
        rng.normal(size=(batch, in_dim)),
        rng.normal(size=(batch, in_dim)),
        rng.normal(size=(batch, in_dim, nb)),
        rng.normal(size=(batch, in_dim, nb)),
        rng.normal(size=(out_dim, in_dim)),
        rng.normal(size=(out_dim, in_dim, nb)),
        rng.normal(size=(batch, out_dim)),
    )


@pytest.mark.parametrize("seed", range(5))
def test_forward_agrees(seed):
    s, _, basis, _, w, c, _ = _random_tensors(seed)
    out_c = cython_kernels.kan_forward(s, basis, w, c)
    out_p = _kernels_py.kan_forward(s, basis, w, c)
    np.testing.assert_allclose(out_c, out_p, rtol=1e-13, atol=1e-13)


@pytest.mark.parametrize("seed", range(5))
def test_backward_agrees(seed):
    s, sp, basis, dbasis, w, c, g = _random_tensors(seed)
    outs_c = cython_kernels.kan_backward(g, s, sp, basis, dbasis, w, c)
    outs_p = _kernels_py.kan_backward(g, s, sp, basis, dbasis, w, c)
    for a, b in zip(outs_c, outs_p):
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-13)
