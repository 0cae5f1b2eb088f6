"""Independent reference implementations used to freeze expected values.

These deliberately avoid the code paths they check: the recursive basis
oracle is the textbook Cox-de Boor recurrence, the gradient oracle is
central finite differences, and the separability oracle is nearest
centroid.
"""

import numpy as np


def naive_basis(knots, degree, i, x, right_end=None):
    """Textbook recursive Cox-de Boor evaluation of B_i^degree(x).

    right_end: value of x treated as the limit from the left (the top of
    the modeled range), so the closing interval includes its endpoint.
    """
    if degree == 0:
        if right_end is not None and x == right_end:
            return 1.0 if knots[i + 1] == right_end else 0.0
        return 1.0 if knots[i] <= x < knots[i + 1] else 0.0
    term = 0.0
    den1 = knots[i + degree] - knots[i]
    if den1 != 0.0:
        term += (x - knots[i]) / den1 * naive_basis(knots, degree - 1, i, x, right_end)
    den2 = knots[i + degree + 1] - knots[i + 1]
    if den2 != 0.0:
        term += (knots[i + degree + 1] - x) / den2 * naive_basis(
            knots, degree - 1, i + 1, x, right_end
        )
    return term


def naive_basis_vector(grid, x):
    return np.array(
        [
            naive_basis(grid.knots, grid.degree, i, x, right_end=grid.g_max)
            for i in range(grid.basis_count())
        ]
    )


def central_difference(f, x, step=1e-6):
    """d/dx of a scalar-to-vector function."""
    return (np.asarray(f(x + step)) - np.asarray(f(x - step))) / (2.0 * step)


def fd_gradient(loss, array, step=1e-5):
    """Central-difference gradient of a scalar loss w.r.t. an ndarray,
    perturbing entries in place."""
    grad = np.zeros_like(array, dtype=np.float64)
    it = np.nditer(array, flags=["multi_index"])
    for _ in it:
        i = it.multi_index
        old = array[i]
        array[i] = old + step
        hi = loss()
        array[i] = old - step
        lo = loss()
        array[i] = old
        grad[i] = (hi - lo) / (2.0 * step)
    return grad


def assert_close_fd(analytic, numeric, rtol=1e-4, atol=1e-7):
    analytic = np.asarray(analytic)
    numeric = np.asarray(numeric)
    err = np.abs(analytic - numeric)
    bound = atol + rtol * np.abs(numeric)
    assert np.all(err <= bound), f"max excess {np.max(err - bound)}"


def nearest_centroid_accuracy(features, labels):
    """Accuracy of classifying each point by the closest class centroid."""
    features = np.asarray(features, dtype=np.float64)
    classes = np.unique(labels)
    centroids = np.stack([features[labels == c].mean(axis=0) for c in classes])
    dists = ((features[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    return float(np.mean(classes[np.argmin(dists, axis=1)] == labels))
