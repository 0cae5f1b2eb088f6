"""Softmax cross-entropy loss and SGD/Adam updates over lists of
parameter tensors. Updates are pure: new arrays and state are returned."""

from dataclasses import dataclass, replace

import numpy as np

from .errors import LabelError, NumericError, ShapeError


def softmax_cross_entropy(logits: np.ndarray, labels: np.ndarray):
    """Mean negative log-likelihood with max-subtraction stabilization.

    Returns (loss, grad_logits) with grad = (softmax - onehot) / batch.
    """
    logits = np.asarray(logits, dtype=np.float64)
    labels = np.asarray(labels)
    if logits.ndim != 2 or labels.shape != (logits.shape[0],):
        raise ShapeError(
            f"logits {logits.shape} and labels {labels.shape} are inconsistent"
        )
    if not np.all(np.isfinite(logits)):
        raise NumericError("non-finite logits")
    batch, n_classes = logits.shape
    if np.any(labels < 0) or np.any(labels >= n_classes):
        raise LabelError(f"labels must lie in [0, {n_classes})")
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    total = exp.sum(axis=1, keepdims=True)
    log_probs = shifted - np.log(total)
    loss = float(-log_probs[np.arange(batch), labels].mean())
    grad = exp / total
    grad[np.arange(batch), labels] -= 1.0
    grad /= batch
    return loss, grad


def sgd_step(params, grads, lr: float):
    """p <- p - lr * g for each tensor; returns new tensors."""
    _check_shapes(params, grads)
    return [p - lr * g for p, g in zip(params, grads)]


@dataclass
class AdamState:
    first_moment: list
    second_moment: list
    step_count: int = 0
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8


def adam_init(params, lr: float = 1e-3, beta1: float = 0.9, beta2: float = 0.999,
              epsilon: float = 1e-8) -> AdamState:
    return AdamState(
        first_moment=[np.zeros_like(p) for p in params],
        second_moment=[np.zeros_like(p) for p in params],
        step_count=0,
        lr=lr,
        beta1=beta1,
        beta2=beta2,
        epsilon=epsilon,
    )


def adam_step(params, grads, state: AdamState):
    """Bias-corrected Adam update; returns (new_params, new_state)."""
    _check_shapes(params, grads)
    if len(state.first_moment) != len(params):
        raise ShapeError("optimizer state does not match parameter list")
    t = state.step_count + 1
    b1, b2 = state.beta1, state.beta2
    new_m, new_v, new_p = [], [], []
    for p, g, m, v in zip(params, grads, state.first_moment, state.second_moment):
        if m.shape != p.shape:
            raise ShapeError("optimizer moment shape does not match parameter")
        m = b1 * m + (1.0 - b1) * g
        v = b2 * v + (1.0 - b2) * g * g
        m_hat = m / (1.0 - b1**t)
        v_hat = v / (1.0 - b2**t)
        new_m.append(m)
        new_v.append(v)
        new_p.append(p - state.lr * m_hat / (np.sqrt(v_hat) + state.epsilon))
    return new_p, replace(state, first_moment=new_m, second_moment=new_v, step_count=t)


def _check_shapes(params, grads):
    if len(params) != len(grads):
        raise ShapeError(f"{len(params)} params vs {len(grads)} grads")
    for p, g in zip(params, grads):
        if np.shape(p) != np.shape(g):
            raise ShapeError(f"param shape {np.shape(p)} vs grad shape {np.shape(g)}")
