"""Pure-numpy implementations of the hot kernels.

Used when the compiled extension is unavailable (or forced via
KANHEAD_BACKEND=python). Same contracts as kanhead._kernels.
"""

import numpy as np

NAME = "python"


def basis_matrix(knots, degree, x):
    """Evaluate all B-spline basis functions and their derivatives.

    knots: [m] uniform extended knot vector, degree: spline degree k,
    x: [n] evaluation points. Returns (values, derivs), each [n, m-1-k].

    Degree-0 seeds are half-open interval indicators; the right edge of
    the modeled range (knots[m-1-k]) is treated as a left limit so the
    partition of unity holds on the closed range. 0/0 terms in the
    Cox-de Boor recursion are taken as 0.
    """
    knots = np.asarray(knots, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    m = knots.size
    nb = m - 1 - degree
    xcol = x[:, None]

    level = ((knots[:-1] <= xcol) & (xcol < knots[1:])).astype(np.float64)
    at_end = x == knots[m - 1 - degree]
    if np.any(at_end):
        level[at_end] = 0.0
        level[at_end, m - 2 - degree] = 1.0

    prev = level
    for d in range(1, degree + 1):
        t_lo = knots[: m - 1 - d]
        den_l = knots[d : m - 1] - t_lo
        den_r = knots[d + 1 : m] - knots[1 : m - d]
        safe_l = np.where(den_l != 0.0, den_l, 1.0)
        safe_r = np.where(den_r != 0.0, den_r, 1.0)
        left = np.where(den_l != 0.0, (xcol - t_lo) / safe_l, 0.0)
        right = np.where(den_r != 0.0, (knots[d + 1 : m] - xcol) / safe_r, 0.0)
        prev = level
        level = left * level[:, :-1] + right * level[:, 1:]

    values = level
    if degree == 0:
        derivs = np.zeros_like(values)
    else:
        # prev holds the degree k-1 basis values, length m-k per row
        den1 = knots[degree : degree + nb] - knots[:nb]
        den2 = knots[degree + 1 : degree + 1 + nb] - knots[1 : 1 + nb]
        c1 = np.where(den1 != 0.0, degree / np.where(den1 != 0.0, den1, 1.0), 0.0)
        c2 = np.where(den2 != 0.0, degree / np.where(den2 != 0.0, den2, 1.0), 0.0)
        derivs = c1 * prev[:, :nb] - c2 * prev[:, 1 : nb + 1]
    return values, derivs


def kan_forward(silu_x, basis, weight, coeff):
    """Aggregate edge functions: out[b,q] = sum_p w[q,p]*(silu(x)+spline).

    silu_x: [batch, in], basis: [batch, in, nb], weight: [out, in],
    coeff: [out, in, nb]. Returns [batch, out]. einsum is kept
    unoptimized so the per-sample reduction order is fixed.
    """
    spline = np.einsum("qpi,bpi->bqp", coeff, basis, optimize=False)
    edge = weight[None, :, :] * (silu_x[:, None, :] + spline)
    return edge.sum(axis=2)


def kan_backward(grad_out, silu_x, dsilu_x, basis, dbasis, weight, coeff):
    """Gradients of the edge aggregation w.r.t. weights, coeffs, inputs.

    grad_out: [batch, out]. Returns (grad_w [out,in],
    grad_c [out,in,nb], grad_x [batch,in]).
    """
    spline = np.einsum("qpi,bpi->bqp", coeff, basis, optimize=False)
    inner = silu_x[:, None, :] + spline
    grad_w = np.einsum("bq,bqp->qp", grad_out, inner, optimize=False)
    grad_c = weight[:, :, None] * np.einsum(
        "bq,bpi->qpi", grad_out, basis, optimize=False
    )
    dspline = np.einsum("qpi,bpi->bqp", coeff, dbasis, optimize=False)
    dinner = weight[None, :, :] * (dsilu_x[:, None, :] + dspline)
    grad_x = np.einsum("bq,bqp->bp", grad_out, dinner, optimize=False)
    return grad_w, grad_c, grad_x
