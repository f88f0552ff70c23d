import numpy as np
import pytest

import covkit as ck


def make_spd(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Random well-conditioned SPD matrix."""
    A = rng.standard_normal((dim, dim))
    return scale * (A @ A.T + dim * np.eye(dim))


def random_joint_cov(n: int, p: int, rng: np.random.Generator, ordering=None) -> ck.JointCovariance:
    ordering = ordering or ck.Ordering.COMPONENT_MAJOR
    return ck.JointCovariance(make_spd(n * p, rng), n, p, ordering)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
