"""Dense baseline layer: affine map plus a fixed activation, with exact
analytic gradients. The ReLU subgradient at 0 is taken as 0."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError


class Activation(enum.Enum):
    RELU = "relu"
    IDENTITY = "identity"


@dataclass
class MlpLinearLayer:
    in_dim: int
    out_dim: int
    weight: np.ndarray  # [out_dim, in_dim]
    bias: np.ndarray  # [out_dim]
    activation: Activation


@dataclass
class MlpCache:
    input_batch: np.ndarray
    pre_activation: np.ndarray
    output: np.ndarray


def mlp_init(in_dim: int, out_dim: int, activation: Activation, seed: int) -> MlpLinearLayer:
    """Uniform weights on [-1/sqrt(in_dim), 1/sqrt(in_dim)], zero bias."""
    rng = np.random.default_rng(seed)
    scale = 1.0 / np.sqrt(in_dim)
    weight = rng.uniform(-scale, scale, size=(out_dim, in_dim))
    bias = np.zeros(out_dim, dtype=np.float64)
    return MlpLinearLayer(in_dim, out_dim, weight, bias, activation)


def mlp_forward(layer: MlpLinearLayer, input_batch: np.ndarray):
    x = np.ascontiguousarray(input_batch, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != layer.in_dim:
        raise ShapeError(
            f"expected input of shape [batch, {layer.in_dim}], got {np.shape(input_batch)}"
        )
    pre = x @ layer.weight.T + layer.bias
    if layer.activation is Activation.RELU:
        out = np.maximum(pre, 0.0)
    else:
        out = pre.copy()
    return out, MlpCache(x, pre, out)


def mlp_backward(layer: MlpLinearLayer, cache: MlpCache, grad_output: np.ndarray):
    g = np.ascontiguousarray(grad_output, dtype=np.float64)
    if g.shape != cache.output.shape:
        raise ShapeError(
            f"expected grad_output of shape {cache.output.shape}, got {g.shape}"
        )
    if layer.activation is Activation.RELU:
        grad_pre = g * (cache.pre_activation > 0.0)
    else:
        grad_pre = g
    grad_w = grad_pre.T @ cache.input_batch
    grad_b = grad_pre.sum(axis=0)
    grad_input = grad_pre @ layer.weight
    return grad_w, grad_b, grad_input


def parameter_count(layer: MlpLinearLayer) -> int:
    return layer.out_dim * layer.in_dim + layer.out_dim
