"""Two-layer classifier heads: features -> hidden -> classes.

The KAN head chains two KanLinearLayers directly (the learnable edges are
the nonlinearity); the MLP head is Linear+ReLU then Linear+Identity.
Both expose the same forward/backward/params interface so the training
loop and the optimizer are head-agnostic.
"""

import numpy as np

from . import kan, mlp
from .splines import KnotGrid, make_uniform_grid


class KanHead:
    kind = "kan"

    def __init__(self, feature_dim: int, hidden_width: int, n_classes: int,
                 grid: KnotGrid, seed: int):
        self.layer1 = kan.kan_layer_init(feature_dim, hidden_width, grid, seed)
        self.layer2 = kan.kan_layer_init(hidden_width, n_classes, grid, seed + 1)

    def forward(self, x):
        h, c1 = kan.kan_forward(self.layer1, x)
        out, c2 = kan.kan_forward(self.layer2, h)
        return out, (c1, c2)

    def backward(self, caches, grad_output):
        c1, c2 = caches
        gw2, gc2, gh = kan.kan_backward(self.layer2, c2, grad_output)
        gw1, gc1, _ = kan.kan_backward(self.layer1, c1, gh)
        return [gw1, gc1, gw2, gc2]

    def params(self):
        return [
            self.layer1.edge_weight,
            self.layer1.spline_coeff,
            self.layer2.edge_weight,
            self.layer2.spline_coeff,
        ]

    def set_params(self, params):
        self.layer1.edge_weight, self.layer1.spline_coeff = params[0], params[1]
        self.layer2.edge_weight, self.layer2.spline_coeff = params[2], params[3]

    def parameter_count(self) -> int:
        return kan.parameter_count(self.layer1) + kan.parameter_count(self.layer2)


class MlpHead:
    kind = "mlp"

    def __init__(self, feature_dim: int, hidden_width: int, n_classes: int, seed: int):
        self.layer1 = mlp.mlp_init(feature_dim, hidden_width, mlp.Activation.RELU, seed)
        self.layer2 = mlp.mlp_init(hidden_width, n_classes, mlp.Activation.IDENTITY, seed + 1)

    def forward(self, x):
        h, c1 = mlp.mlp_forward(self.layer1, x)
        out, c2 = mlp.mlp_forward(self.layer2, h)
        return out, (c1, c2)

    def backward(self, caches, grad_output):
        c1, c2 = caches
        gw2, gb2, gh = mlp.mlp_backward(self.layer2, c2, grad_output)
        gw1, gb1, _ = mlp.mlp_backward(self.layer1, c1, gh)
        return [gw1, gb1, gw2, gb2]

    def params(self):
        return [self.layer1.weight, self.layer1.bias, self.layer2.weight, self.layer2.bias]

    def set_params(self, params):
        self.layer1.weight, self.layer1.bias = params[0], params[1]
        self.layer2.weight, self.layer2.bias = params[2], params[3]

    def parameter_count(self) -> int:
        return mlp.parameter_count(self.layer1) + mlp.parameter_count(self.layer2)


def build_head(config, feature_dim: int):
    """Construct the head described by a TrainConfig for a feature width."""
    n_classes = config.n_classes
    if config.head_kind == "kan":
        grid = make_uniform_grid(
            config.grid_min, config.grid_max, config.grid_intervals, config.grid_degree
        )
        return KanHead(feature_dim, config.hidden_width, n_classes, grid, config.seed)
    if config.head_kind == "mlp":
        return MlpHead(feature_dim, config.hidden_width, n_classes, config.seed)
    raise ValueError(f"unknown head kind {config.head_kind!r}")
