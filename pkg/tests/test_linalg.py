from __future__ import annotations

import numpy as np
import pytest

from su2pfaff.errors import SingularCoframe
from su2pfaff.linalg import checked_inv, det, inv, lstsq, numerical_rank, solve


def test_inverse_matches_numpy(rng):
    a = rng.normal(size=(6, 5, 5)) + 1j * rng.normal(size=(6, 5, 5))
    assert np.allclose(inv(a), np.linalg.inv(a), atol=1e-12)
    assert np.allclose(det(a), np.linalg.det(a))
    b = rng.normal(size=(6, 5))
    assert np.allclose(np.einsum("nij,nj->ni", a, solve(a, b)), b)


def test_pivoting_handles_zero_leading_entry():
    a = np.array([[[0, 1], [1, 0]]], dtype=complex)
    assert np.allclose(inv(a)[0], [[0, 1], [1, 0]])


def test_checked_inverse_raises():
    with pytest.raises(SingularCoframe):
        checked_inv(np.zeros((1, 3, 3)))


def test_lstsq_residual_and_rank():
    a = np.array([[1.0, 0], [0, 1], [1, 1]])
    x, res = lstsq(a, np.array([1.0, 2, 3]))
    assert np.allclose(x, [1, 2]) and res < 1e-12
    assert numerical_rank([[1, 0, 0], [2, 0, 0], [0, 1, 0]]) == 2
