from __future__ import annotations

import numpy as np
import pytest

from su2pfaff.curvature import available_backends
from su2pfaff.manifold import sample_points


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def pts(rng):
    return sample_points(rng, 12)


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param
