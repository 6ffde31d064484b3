from __future__ import annotations

import numpy as np
import pytest

from su2pfaff.errors import ChartDegenerate
from su2pfaff.manifold import E, Point5, coordinate_vector, evaluate, lie_bracket, su2_coframe, su2_frame


def test_coframe_at_reference_points():
    s = su2_coframe([0, np.pi / 2, 0, 0, 0])
    assert np.allclose(s[0], [0, 0, -1, 0, 0])
    assert np.allclose(s[1], [0, 1, 0, 0, 0])
    assert np.allclose(s[2], [-1, 0, 0, 0, 0])
    s = su2_coframe(Point5(np.pi / 2, np.pi / 2, 0, 0, 0))
    assert np.allclose(s[0], [0, 1, 0, 0, 0]) and np.allclose(s[1], [0, 0, 1, 0, 0])


def test_frame_duality(pts):
    s = su2_coframe(pts)
    e = su2_frame(pts)
    assert np.abs(np.einsum("nak,nbk->nab", s, e) - np.eye(3)).max() < 1e-12


def test_chart_degenerate():
    with pytest.raises(ChartDegenerate):
        su2_frame([0.1, 0.0, 0.2, 0, 0])


def test_su2_brackets():
    p = np.array([0.3, 1.1, 0.7, 0.2, 0.5])
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        br = lie_bracket(E(a), E(b), p)
        assert np.abs(br + evaluate(E(c), p)).max() < 1e-9


def test_bracket_trivial_cases(pts):
    assert np.abs(lie_bracket(E(1), E(1), pts)).max() == 0
    assert np.abs(lie_bracket(coordinate_vector(3), coordinate_vector(4), pts)).max() == 0
    ab = lie_bracket(E(1), E(3), pts)
    ba = lie_bracket(E(3), E(1), pts)
    assert np.abs(ab + ba).max() < 1e-14
