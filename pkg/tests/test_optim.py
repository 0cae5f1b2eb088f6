import math

import numpy as np
import pytest
from _oracles import fd_gradient

from kanhead import (
    LabelError,
    ShapeError,
    adam_init,
    adam_step,
    sgd_step,
    softmax_cross_entropy,
)


class TestSoftmaxCrossEntropy:
    def test_uniform_logits(self):
        loss, _ = softmax_cross_entropy(np.zeros((4, 10)), np.arange(4) % 10)
        assert loss == pytest.approx(math.log(10), abs=1e-12)

    def test_confident_large_logits_stable(self):
        logits = np.zeros((2, 3))
        logits[:, 1] = 1000.0
        loss, grad = softmax_cross_entropy(logits, np.array([1, 1]))
        assert loss == pytest.approx(0.0, abs=1e-9)
        assert np.all(np.isfinite(grad))

    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(0)
        logits = rng.normal(size=(4, 3))
        labels = rng.integers(0, 3, size=4)
        _, grad = softmax_cross_entropy(logits, labels)
        fd = fd_gradient(lambda: softmax_cross_entropy(logits, labels)[0], logits)
        assert np.max(np.abs(grad - fd)) <= 1e-6

    def test_grad_rows_sum_to_zero(self):
        rng = np.random.default_rng(1)
        _, grad = softmax_cross_entropy(rng.normal(size=(8, 5)), rng.integers(0, 5, size=8))
        np.testing.assert_allclose(grad.sum(axis=1), 0.0, atol=1e-9)

    def test_loss_non_negative(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            loss, _ = softmax_cross_entropy(
                rng.normal(size=(4, 6)), rng.integers(0, 6, size=4)
            )
            assert loss >= 0.0

    def test_out_of_range_labels(self):
        with pytest.raises(LabelError):
            softmax_cross_entropy(np.zeros((2, 3)), np.array([0, 3]))
        with pytest.raises(LabelError):
            softmax_cross_entropy(np.zeros((2, 3)), np.array([-1, 0]))


class TestSgd:
    def test_zero_grad_is_identity(self):
        params = [np.ones((2, 2))]
        out = sgd_step(params, [np.zeros((2, 2))], 0.1)
        np.testing.assert_array_equal(out[0], params[0])

    def test_scalar_arithmetic(self):
        (p,) = sgd_step([np.array(1.0)], [np.array(2.0)], 0.1)
        assert p == pytest.approx(0.8, abs=1e-15)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            sgd_step([np.zeros(3)], [np.zeros(4)], 0.1)


class TestAdam:
    def test_first_step_value(self):
        # bias-corrected first step with g=1 moves by -lr / (1 + eps)
        params = [np.array(0.0)]
        state = adam_init(params)
        (p,), state = adam_step(params, [np.array(1.0)], state)
        assert p == pytest.approx(-1e-3 / (1.0 + 1e-8), abs=1e-18)
        assert state.step_count == 1

    def test_determinism(self):
        rng = np.random.default_rng(0)
        params = [rng.normal(size=(3, 2))]
        grads = [rng.normal(size=(3, 2))]
        s1 = adam_init(params)
        s2 = adam_init(params)
        p1, s1 = adam_step(params, grads, s1)
        p2, s2 = adam_step(params, grads, s2)
        np.testing.assert_array_equal(p1[0], p2[0])
        np.testing.assert_array_equal(s1.first_moment[0], s2.first_moment[0])

    def test_step_count_increments(self):
        params = [np.zeros(2)]
        state = adam_init(params)
        for expected in (1, 2, 3):
            params, state = adam_step(params, [np.ones(2)], state)
            assert state.step_count == expected

    def test_shape_mismatch(self):
        params = [np.zeros(3)]
        state = adam_init(params)
        with pytest.raises(ShapeError):
            adam_step(params, [np.zeros(4)], state)

    def test_pure_update_leaves_inputs_untouched(self):
        params = [np.ones(2)]
        before = params[0].copy()
        state = adam_init(params)
        adam_step(params, [np.ones(2)], state)
        np.testing.assert_array_equal(params[0], before)
        assert state.step_count == 0
