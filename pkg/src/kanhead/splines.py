"""Uniform B-spline bases: knot grids, values, and derivatives."""

from dataclasses import dataclass

import numpy as np

from ._backend import impl
from .errors import DomainError


@dataclass(frozen=True)
class KnotGrid:
    """Uniform extended knot vector on [g_min, g_max].

    knots[j] = g_min + (j - degree) * h for j = 0..intervals + 2*degree,
    h = (g_max - g_min) / intervals. The degree-k basis spans
    intervals + degree functions.
    """

    g_min: float
    g_max: float
    intervals: int
    degree: int
    knots: np.ndarray

    def basis_count(self) -> int:
        return self.intervals + self.degree


def make_uniform_grid(g_min: float, g_max: float, intervals: int, degree: int) -> KnotGrid:
    """Build a uniform extended knot grid.

    Raises DomainError for an empty range or zero intervals.
    """
    if not g_max > g_min:
        raise DomainError(f"need g_max > g_min, got [{g_min}, {g_max}]")
    if intervals < 1:
        raise DomainError(f"need intervals >= 1, got {intervals}")
    if degree < 0:
        raise DomainError(f"need degree >= 0, got {degree}")
    h = (g_max - g_min) / intervals
    j = np.arange(intervals + 2 * degree + 1)
    knots = g_min + (j - degree) * h
    # pin the modeled range exactly despite float rounding of h
    knots[degree] = g_min
    knots[intervals + degree] = g_max
    knots.setflags(write=False)
    return KnotGrid(float(g_min), float(g_max), intervals, degree, knots)


def basis_values(grid: KnotGrid, x: float) -> np.ndarray:
    """All basis function values at a scalar x, length basis_count()."""
    values, _ = impl.basis_matrix(grid.knots, grid.degree, np.array([x], dtype=np.float64))
    return values[0]


def basis_derivatives(grid: KnotGrid, x: float) -> np.ndarray:
    """All basis function derivatives at a scalar x; zeros for degree 0."""
    _, derivs = impl.basis_matrix(grid.knots, grid.degree, np.array([x], dtype=np.float64))
    return derivs[0]


def basis_matrix(grid: KnotGrid, x: np.ndarray):
    """Vectorized (values, derivatives) for a 1-D array of points."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DomainError(f"expected 1-D points, got shape {x.shape}")
    return impl.basis_matrix(grid.knots, grid.degree, x)
