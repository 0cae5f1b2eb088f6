"""KAN classifier heads with B-spline edge activations, an MLP baseline,
and a deterministic training harness for frozen-backbone features."""

from ._backend import BACKEND
from .data import (
    DatasetSplit,
    FeatureDataset,
    Normalization,
    load_features,
    normalize_apply,
    normalize_fit,
    save_features,
    stratified_split,
    synthetic_blobs,
)
from .errors import (
    DomainError,
    FormatError,
    IoError,
    KanheadError,
    LabelError,
    MismatchError,
    NumericError,
    ShapeError,
    StaleCacheError,
)
from .heads import KanHead, MlpHead, build_head
from .kan import (
    ForwardCache,
    KanLinearLayer,
    edge_eval,
    kan_backward,
    kan_forward,
    kan_layer_init,
    silu,
    silu_grad,
)
from .mlp import Activation, MlpLinearLayer, mlp_backward, mlp_forward, mlp_init
from .optim import (
    AdamState,
    adam_init,
    adam_step,
    sgd_step,
    softmax_cross_entropy,
)
from .splines import KnotGrid, basis_derivatives, basis_matrix, basis_values, make_uniform_grid
from .train import (
    EpochMetrics,
    TrainConfig,
    compare_experiment,
    config_from_file,
    evaluate,
    train,
)

__version__ = "0.1.0"
