import numpy as np
import pytest
from _oracles import central_difference, naive_basis_vector

from kanhead import DomainError, basis_derivatives, basis_matrix, basis_values, make_uniform_grid

CUBIC = make_uniform_grid(-1.0, 1.0, 5, 3)


class TestMakeUniformGrid:
    def test_degree_zero_grid_is_interval_partition(self):
        grid = make_uniform_grid(-1.0, 1.0, 2, 0)
        np.testing.assert_array_equal(grid.knots, [-1.0, 0.0, 1.0])
        assert grid.basis_count() == 2

    def test_cubic_grid_knots(self):
        np.testing.assert_allclose(
            CUBIC.knots, np.arange(-2.2, 2.3, 0.4), atol=1e-12
        )
        assert len(CUBIC.knots) == 12
        assert CUBIC.basis_count() == 8

    def test_range_endpoints_exact(self):
        grid = make_uniform_grid(0.1, 0.9, 7, 3)
        assert grid.knots[3] == 0.1
        assert grid.knots[10] == 0.9
        spacing = np.diff(grid.knots)
        np.testing.assert_allclose(spacing, spacing[0], rtol=1e-12)

    @pytest.mark.parametrize("args", [(0.0, 0.0, 5, 3), (1.0, -1.0, 5, 3), (-1.0, 1.0, 0, 3)])
    def test_degenerate_rejected(self, args):
        with pytest.raises(DomainError):
            make_uniform_grid(*args)


class TestBasisValues:
    def test_degree_zero_indicator(self):
        grid = make_uniform_grid(0.0, 1.0, 1, 0)
        np.testing.assert_array_equal(basis_values(grid, 0.5), [1.0])

    def test_uniform_cubic_at_knot_pattern(self):
        # interior knots carry the closed-form 1/6, 2/3, 1/6 stencil
        for knot in (-0.6, -0.2, 0.2, 0.6):
            values = basis_values(CUBIC, knot)
            nonzero = values[values > 1e-14]
            np.testing.assert_allclose(nonzero, [1 / 6, 2 / 3, 1 / 6], atol=1e-12)

    def test_matches_naive_recursion(self):
        rng = np.random.default_rng(7)
        for x in rng.uniform(-1.3, 1.3, size=50):
            np.testing.assert_allclose(
                basis_values(CUBIC, x), naive_basis_vector(CUBIC, x), atol=1e-13
            )

    def test_partition_of_unity(self):
        rng = np.random.default_rng(0)
        xs = rng.uniform(-1.0, 1.0, size=1000)
        values, _ = basis_matrix(CUBIC, xs)
        np.testing.assert_allclose(values.sum(axis=1), 1.0, atol=1e-12)

    def test_partition_of_unity_at_endpoints(self):
        for x in (-1.0, 1.0):
            assert abs(basis_values(CUBIC, x).sum() - 1.0) <= 1e-12

    def test_local_support(self):
        rng = np.random.default_rng(1)
        for x in rng.uniform(-1.0, 1.0, size=200):
            assert np.count_nonzero(basis_values(CUBIC, x)) <= CUBIC.degree + 1

    def test_non_negative_inside_range(self):
        xs = np.linspace(-1.0, 1.0, 501)
        values, _ = basis_matrix(CUBIC, xs)
        assert np.all(values >= 0.0)

    def test_decays_to_zero_outside_extended_knots(self):
        assert np.all(basis_values(CUBIC, 5.0) == 0.0)
        assert np.all(basis_values(CUBIC, -5.0) == 0.0)

    def test_continuity_at_knot_crossings(self):
        for knot in CUBIC.knots[CUBIC.degree : -CUBIC.degree - 1]:
            lo = basis_values(CUBIC, knot)
            hi = basis_values(CUBIC, knot + 1e-9)
            assert np.max(np.abs(hi - lo)) <= 1e-6


class TestBasisDerivatives:
    def test_degree_zero_is_flat(self):
        grid = make_uniform_grid(-1.0, 1.0, 4, 0)
        assert np.all(basis_derivatives(grid, 0.3) == 0.0)

    def test_matches_finite_differences(self):
        assert np.max(np.abs(
            basis_derivatives(CUBIC, 0.1)
            - central_difference(lambda x: basis_values(CUBIC, x), 0.1)
        )) <= 1e-5

    def test_matches_finite_differences_randomized(self):
        rng = np.random.default_rng(3)
        for x in rng.uniform(-0.99, 0.99, size=100):
            fd = central_difference(lambda v: basis_values(CUBIC, v), x)
            assert np.max(np.abs(basis_derivatives(CUBIC, x) - fd)) <= 1e-5

    def test_derivatives_sum_to_zero(self):
        rng = np.random.default_rng(4)
        for x in rng.uniform(-1.0, 1.0, size=100):
            assert abs(basis_derivatives(CUBIC, x).sum()) <= 1e-10

    @pytest.mark.parametrize("degree", [1, 2, 3, 4])
    def test_other_degrees(self, degree):
        grid = make_uniform_grid(-1.0, 1.0, 6, degree)
        rng = np.random.default_rng(degree)
        for x in rng.uniform(-0.95, 0.95, size=20):
            fd = central_difference(lambda v: basis_values(grid, v), x)
            assert np.max(np.abs(basis_derivatives(grid, x) - fd)) <= 1e-5
