# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Cox-de Boor basis evaluation and the KAN edge
contractions. Mirrors kanhead._kernels_py with explicit ascending loops
(p then i per sample) so reductions are bitwise reproducible."""

import numpy as np

cimport numpy as cnp

NAME = "cython"


def basis_matrix(knots_in, int degree, x_in):
    """Same contract as kanhead._kernels_py.basis_matrix."""
    knots_arr = np.ascontiguousarray(knots_in, dtype=np.float64)
    x_arr = np.ascontiguousarray(x_in, dtype=np.float64)
    cdef const double[::1] knots = knots_arr
    cdef const double[::1] x = x_arr
    cdef int m = knots.shape[0]
    cdef int nb = m - 1 - degree
    cdef Py_ssize_t n = x.shape[0]

    vals_arr = np.zeros((n, nb), dtype=np.float64)
    ders_arr = np.zeros((n, nb), dtype=np.float64)
    cdef double[:, ::1] vals = vals_arr
    cdef double[:, ::1] ders = ders_arr

    work_arr = np.zeros(m - 1, dtype=np.float64)
    prev_arr = np.zeros(m - 1, dtype=np.float64)
    cdef double[::1] work = work_arr
    cdef double[::1] prev = prev_arr

    cdef Py_ssize_t s
    cdef int j, d, i, width
    cdef double xv, g_max, den_l, den_r, left, right, d1, d2, acc

    g_max = knots[m - 1 - degree]
    for s in range(n):
        xv = x[s]
        if xv == g_max:
            for j in range(m - 1):
                work[j] = 0.0
            work[m - 2 - degree] = 1.0
        else:
            for j in range(m - 1):
                work[j] = 1.0 if knots[j] <= xv < knots[j + 1] else 0.0

        for d in range(1, degree + 1):
            if d == degree:
                for j in range(m - d):
                    prev[j] = work[j]
            width = m - 1 - d
            for i in range(width):
                den_l = knots[i + d] - knots[i]
                den_r = knots[i + d + 1] - knots[i + 1]
                left = (xv - knots[i]) / den_l * work[i] if den_l != 0.0 else 0.0
                right = (knots[i + d + 1] - xv) / den_r * work[i + 1] if den_r != 0.0 else 0.0
                work[i] = left + right

        for i in range(nb):
            vals[s, i] = work[i]
        if degree > 0:
            for i in range(nb):
                d1 = knots[i + degree] - knots[i]
                d2 = knots[i + degree + 1] - knots[i + 1]
                acc = 0.0
                if d1 != 0.0:
                    acc += degree / d1 * prev[i]
                if d2 != 0.0:
                    acc -= degree / d2 * prev[i + 1]
                ders[s, i] = acc
    return vals_arr, ders_arr


def kan_forward(silu_in, basis_in, weight_in, coeff_in):
    """Same contract as kanhead._kernels_py.kan_forward."""
    cdef double[:, ::1] S = np.ascontiguousarray(silu_in, dtype=np.float64)
    cdef double[:, :, ::1] B = np.ascontiguousarray(basis_in, dtype=np.float64)
    cdef double[:, ::1] W = np.ascontiguousarray(weight_in, dtype=np.float64)
    cdef double[:, :, ::1] C = np.ascontiguousarray(coeff_in, dtype=np.float64)
    cdef Py_ssize_t batch = S.shape[0]
    cdef int in_dim = S.shape[1]
    cdef int out_dim = W.shape[0]
    cdef int nb = B.shape[2]

    out_arr = np.zeros((batch, out_dim), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t b
    cdef int q, p, i
    cdef double edge, acc

    for b in range(batch):
        for q in range(out_dim):
            acc = 0.0
            for p in range(in_dim):
                edge = S[b, p]
                for i in range(nb):
                    edge += C[q, p, i] * B[b, p, i]
                acc += W[q, p] * edge
            out[b, q] = acc
    return out_arr


def kan_backward(grad_in, silu_in, dsilu_in, basis_in, dbasis_in, weight_in, coeff_in):
    """Same contract as kanhead._kernels_py.kan_backward."""
    cdef double[:, ::1] G = np.ascontiguousarray(grad_in, dtype=np.float64)
    cdef double[:, ::1] S = np.ascontiguousarray(silu_in, dtype=np.float64)
    cdef double[:, ::1] Sp = np.ascontiguousarray(dsilu_in, dtype=np.float64)
    cdef double[:, :, ::1] B = np.ascontiguousarray(basis_in, dtype=np.float64)
    cdef double[:, :, ::1] D = np.ascontiguousarray(dbasis_in, dtype=np.float64)
    cdef double[:, ::1] W = np.ascontiguousarray(weight_in, dtype=np.float64)
    cdef double[:, :, ::1] C = np.ascontiguousarray(coeff_in, dtype=np.float64)
    cdef Py_ssize_t batch = S.shape[0]
    cdef int in_dim = S.shape[1]
    cdef int out_dim = W.shape[0]
    cdef int nb = B.shape[2]

    gw_arr = np.zeros((out_dim, in_dim), dtype=np.float64)
    gc_arr = np.zeros((out_dim, in_dim, nb), dtype=np.float64)
    gx_arr = np.zeros((batch, in_dim), dtype=np.float64)
    cdef double[:, ::1] gw = gw_arr
    cdef double[:, :, ::1] gc = gc_arr
    cdef double[:, ::1] gx = gx_arr

    cdef Py_ssize_t b
    cdef int q, p, i
    cdef double g, inner, dinner, acc

    for b in range(batch):
        for q in range(out_dim):
            g = G[b, q]
            if g == 0.0:
                continue
            for p in range(in_dim):
                inner = S[b, p]
                for i in range(nb):
                    inner += C[q, p, i] * B[b, p, i]
                    gc[q, p, i] += g * W[q, p] * B[b, p, i]
                gw[q, p] += g * inner
                dinner = Sp[b, p]
                for i in range(nb):
                    dinner += C[q, p, i] * D[b, p, i]
                gx[b, p] += g * W[q, p] * dinner
    return gw_arr, gc_arr, gx_arr
