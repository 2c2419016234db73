import numpy as np
import pytest

from cartan import (
    DimensionMismatchError,
    DiscreteMeasure,
    NotPositiveDefiniteError,
    NotSymmetricError,
    check_ordered_positive,
    check_spd,
    check_symmetric,
    check_weights,
)


def test_check_symmetric_symmetrizes_within_tolerance():
    X = np.array([[1.0, 2.0], [2.0 + 1e-13, 1.0]])
    out = check_symmetric(X)
    assert out[0, 1] == out[1, 0]


def test_check_symmetric_rejects_large_asymmetry():
    with pytest.raises(NotSymmetricError):
        check_symmetric([[1.0, 2.0], [2.1, 1.0]])


@pytest.mark.parametrize("bad", [np.ones(3), np.ones((2, 3)), np.zeros((0, 0)), [[np.nan, 0], [0, 1]]])
def test_check_symmetric_rejects_bad_shapes_and_values(bad):
    with pytest.raises(ValueError):
        check_symmetric(bad)


def test_check_spd_boundaries():
    check_spd(np.diag([1.0, 1e-11]))
    with pytest.raises(NotPositiveDefiniteError):
        check_spd(np.diag([1.0, 1e-13]))
    with pytest.raises(NotPositiveDefiniteError):
        check_spd(np.diag([1.0, 0.0]))


def test_check_weights():
    np.testing.assert_array_equal(check_weights([0.25, 0.75], 2), [0.25, 0.75])
    for bad in ([0.5, 0.6], [1.5, -0.5], [1.0, 0.0]):
        with pytest.raises(ValueError):
            check_weights(bad, 2)
    with pytest.raises(DimensionMismatchError):
        check_weights([1.0], 2)


def test_check_ordered_positive_sorts():
    np.testing.assert_array_equal(check_ordered_positive([1, 3, 2]), [3, 2, 1])
    with pytest.raises(ValueError):
        check_ordered_positive([1, 0])


def test_measure_construction_and_immutability():
    mu = DiscreteMeasure([np.eye(2), 2 * np.eye(2)], [0.3, 0.7])
    assert mu.size == len(mu) == 2 and mu.dim == 2 and mu.is_matrix
    with pytest.raises(ValueError):
        mu.atoms[0, 0, 0] = 5.0
    v = DiscreteMeasure([[1.0, 3.0]], [1.0])
    np.testing.assert_array_equal(v.atoms[0], [3.0, 1.0])
    assert not v.is_matrix


def test_measure_rejects_bad_input():
    with pytest.raises(ValueError):
        DiscreteMeasure([np.eye(2)], [0.9])
    with pytest.raises(NotPositiveDefiniteError):
        DiscreteMeasure([-np.eye(2)], [1.0])
    with pytest.raises(DimensionMismatchError):
        DiscreteMeasure(np.zeros((0, 2, 2)), [])
    with pytest.raises(DimensionMismatchError):
        DiscreteMeasure([np.eye(2), np.eye(2)], [1.0])


def test_measure_helpers():
    mu = DiscreteMeasure.uniform([np.eye(2), 3 * np.eye(2), 5 * np.eye(2)])
    np.testing.assert_allclose(mu.weights, [1 / 3] * 3)
    pm = DiscreteMeasure.point_mass(np.eye(3))
    assert pm.size == 1 and pm.weights[0] == 1.0
    doubled = mu.map(lambda A: 2 * A)
    np.testing.assert_array_equal(doubled.atoms[1], 6 * np.eye(2))
    np.testing.assert_array_equal(doubled.weights, mu.weights)
