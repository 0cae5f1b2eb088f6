"""KAN linear layer: one learnable spline edge function per (input, output)
pair, phi(x) = w * (silu(x) + sum_i c_i B_i(x)), aggregated by summation
over inputs. Forward caches everything the analytic backward pass needs."""

from dataclasses import dataclass

import numpy as np

from ._backend import impl
from .errors import NumericError, ShapeError, StaleCacheError
from .splines import KnotGrid


def sigmoid(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def silu(x):
    return np.asarray(x, dtype=np.float64) * sigmoid(x)


def silu_grad(x):
    x = np.asarray(x, dtype=np.float64)
    s = sigmoid(x)
    return s * (1.0 + x * (1.0 - s))


@dataclass
class KanLinearLayer:
    in_dim: int
    out_dim: int
    grid: KnotGrid
    edge_weight: np.ndarray  # [out_dim, in_dim]
    spline_coeff: np.ndarray  # [out_dim, in_dim, basis_count]


@dataclass
class ForwardCache:
    input_batch: np.ndarray  # [batch, in_dim]
    basis_batch: np.ndarray  # [batch, in_dim, basis_count]
    basis_deriv_batch: np.ndarray  # same shape
    output: np.ndarray  # [batch, out_dim]


def kan_layer_init(in_dim: int, out_dim: int, grid: KnotGrid, seed: int) -> KanLinearLayer:
    """Edge weights start at 1 (each edge begins near a pure SiLU); spline
    coefficients are small i.i.d. uniform, deterministic in the seed."""
    nb = grid.basis_count()
    rng = np.random.default_rng(seed)
    scale = 0.1 / np.sqrt(nb)
    coeff = rng.uniform(-scale, scale, size=(out_dim, in_dim, nb))
    weight = np.ones((out_dim, in_dim), dtype=np.float64)
    return KanLinearLayer(in_dim, out_dim, grid, weight, coeff)


def edge_eval(layer: KanLinearLayer, q: int, p: int, x: float) -> float:
    """Single edge function value w * (silu(x) + spline(x))."""
    if not 0 <= q < layer.out_dim:
        raise IndexError(f"output index {q} out of range [0, {layer.out_dim})")
    if not 0 <= p < layer.in_dim:
        raise IndexError(f"input index {p} out of range [0, {layer.in_dim})")
    values, _ = impl.basis_matrix(
        layer.grid.knots, layer.grid.degree, np.array([x], dtype=np.float64)
    )
    spline = float(np.dot(layer.spline_coeff[q, p], values[0]))
    return float(layer.edge_weight[q, p]) * (float(silu(np.float64(x))) + spline)


def kan_forward(layer: KanLinearLayer, input_batch: np.ndarray):
    """Batched forward pass. Basis values are computed once per (sample,
    input) and shared across all output edges. Returns (output, cache)."""
    x = np.ascontiguousarray(input_batch, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != layer.in_dim:
        raise ShapeError(
            f"expected input of shape [batch, {layer.in_dim}], got {np.shape(input_batch)}"
        )
    if not np.all(np.isfinite(x)):
        raise NumericError("non-finite value in input batch")
    batch = x.shape[0]
    nb = layer.grid.basis_count()
    values, derivs = impl.basis_matrix(layer.grid.knots, layer.grid.degree, x.ravel())
    basis = values.reshape(batch, layer.in_dim, nb)
    basis_deriv = derivs.reshape(batch, layer.in_dim, nb)
    out = impl.kan_forward(silu(x), basis, layer.edge_weight, layer.spline_coeff)
    return out, ForwardCache(x, basis, basis_deriv, out)


def kan_backward(layer: KanLinearLayer, cache: ForwardCache, grad_output: np.ndarray):
    """Analytic gradients w.r.t. edge weights, spline coefficients, and
    inputs, from a cache produced by kan_forward on this layer."""
    nb = layer.grid.basis_count()
    batch = cache.input_batch.shape[0]
    if cache.input_batch.shape != (batch, layer.in_dim) or cache.basis_batch.shape != (
        batch,
        layer.in_dim,
        nb,
    ):
        raise StaleCacheError(
            f"cache shapes {cache.input_batch.shape}/{cache.basis_batch.shape} "
            f"do not match layer dims ({layer.in_dim} -> {layer.out_dim}, nb={nb})"
        )
    g = np.ascontiguousarray(grad_output, dtype=np.float64)
    if g.shape != (batch, layer.out_dim):
        raise ShapeError(
            f"expected grad_output of shape ({batch}, {layer.out_dim}), got {g.shape}"
        )
    x = cache.input_batch
    return impl.kan_backward(
        g,
        silu(x),
        silu_grad(x),
        cache.basis_batch,
        cache.basis_deriv_batch,
        layer.edge_weight,
        layer.spline_coeff,
    )


def parameter_count(layer: KanLinearLayer) -> int:
    return layer.out_dim * layer.in_dim * (layer.grid.basis_count() + 1)
