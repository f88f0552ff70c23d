"""Scalar correlation functions and convolution kernels.

Matérn correlations are restricted to the half-integer smoothness values
0.5, 1.5, 2.5 and the squared-exponential limit (smoothness = inf), which
have closed forms and avoid a general Bessel-K evaluation.  The lag
convention everywhere is h = s_i - s_j (row minus column).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec, UnsupportedSmoothness

SUPPORTED_NU = (0.5, 1.5, 2.5, math.inf)


@dataclass(frozen=True)
class MaternParams:
    """Smoothness nu and decay rate kappa of a Matérn correlation."""

    nu: float
    kappa: float

    def __post_init__(self):
        if self.nu not in SUPPORTED_NU:
            raise UnsupportedSmoothness(
                f"nu={self.nu} not in supported set {SUPPORTED_NU}"
            )
        if not (self.kappa > 0):
            raise InvalidSpec(f"kappa must be positive, got {self.kappa}")


@dataclass(frozen=True)
class GaussKernelParams:
    """Gaussian smoothing kernel: bandwidth and amplitude."""

    bandwidth: float
    amplitude: float = 1.0

    def __post_init__(self):
        if not (self.bandwidth > 0):
            raise InvalidSpec(f"bandwidth must be positive, got {self.bandwidth}")
        if not (self.amplitude > 0):
            raise InvalidSpec(f"amplitude must be positive, got {self.amplitude}")


@dataclass(frozen=True)
class Shift:
    """Signed displacement applied to the directed separation lag."""

    delta: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.delta):
            raise InvalidSpec(f"shift must be finite, got {self.delta}")


def matern(h, params: MaternParams):
    """Matérn correlation M(|h|; nu, kappa); vectorized over h.

    Closed forms for nu in {0.5, 1.5, 2.5}; nu = inf is the Gaussian
    (squared-exponential) limit exp(-kappa^2 h^2 / 2).
    """
    h = np.abs(np.asarray(h, dtype=float))
    kappa = params.kappa
    if params.nu == 0.5:
        out = np.exp(-kappa * h)
    elif params.nu == 1.5:
        a = math.sqrt(3.0) * kappa * h
        out = (1.0 + a) * np.exp(-a)
    elif params.nu == 2.5:
        a = math.sqrt(5.0) * kappa * h
        out = (1.0 + a + a * a / 3.0) * np.exp(-a)
    elif params.nu == math.inf:
        out = np.exp(-0.5 * (kappa * h) ** 2)
    else:  # guarded by MaternParams
        raise UnsupportedSmoothness(f"nu={params.nu}")
    return out if out.ndim else float(out)


def gauss_kernel(h, params: GaussKernelParams):
    """Normalized Gaussian kernel density (amplitude applied by callers)."""
    h = np.asarray(h, dtype=float)
    b = params.bandwidth
    out = np.exp(-0.5 * (h / b) ** 2) / (b * math.sqrt(2.0 * math.pi))
    return out if out.ndim else float(out)


def shifted_lag(s_i: float, s_j: float, shift: Shift) -> float:
    """Directed lag with the shift applied: (s_i - s_j) - delta."""
    return s_i - s_j - shift.delta


def shift_matrix(p: int, delta: float) -> np.ndarray:
    """Broadcast one delta to all off-diagonal component pairs.

    Antisymmetric by convention: +delta above the diagonal, -delta below,
    zero diagonal.
    """
    mat = np.zeros((p, p))
    iu = np.triu_indices(p, k=1)
    mat[iu] = delta
    mat[(iu[1], iu[0])] = -delta
    return mat
