"""Core types: location grids, joint covariance matrices, block access.

A joint covariance matrix of a p-variate field over n sites is np x np and
can be laid out two ways:

* location-major: [Y_1(s_1)..Y_p(s_1), ..., Y_1(s_n)..Y_p(s_n)]
* component-major: [Y_1(s_1)..Y_1(s_n), ..., Y_p(s_1)..Y_p(s_n)]

Both layouts carry the same information; :func:`permute_ordering` converts
between them with the perfect-shuffle permutation.  Block indices at the API
surface are 1-based.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRange, InvalidSpec, NonSquare, NotPD

SYMMETRY_RTOL = 1e-10
PSD_RTOL = 1e-8


class Ordering(enum.Enum):
    """Layout of the stacked np-vector underlying a joint covariance."""

    LOCATION_MAJOR = "location-major"
    COMPONENT_MAJOR = "component-major"

    @classmethod
    def parse(cls, text: str) -> "Ordering":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown ordering {text!r}")


@dataclass(frozen=True)
class LocationGrid:
    """Ordered 1D coordinates s_1 < ... < s_n."""

    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        if coords.ndim != 1 or coords.size < 1:
            raise InvalidSpec("grid needs at least one 1D coordinate")
        if np.any(np.diff(coords) <= 0):
            raise InvalidSpec("grid coordinates must be strictly increasing")
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return self.coords.size

    @property
    def spacing(self) -> float:
        """Mean spacing; equals the step for uniform grids."""
        if self.n < 2:
            return 1.0
        return float(np.mean(np.diff(self.coords)))

    def is_uniform(self, rtol: float = 1e-9) -> bool:
        if self.n < 3:
            return True
        d = np.diff(self.coords)
        return bool(np.allclose(d, d[0], rtol=rtol, atol=0.0))

    @classmethod
    def regular(cls, start: float, stop: float, step: float) -> "LocationGrid":
        """Grid [start, stop) with the given step, numpy.arange semantics."""
        return cls(np.arange(start, stop, step))

    def lags(self) -> np.ndarray:
        """n x n matrix of directed lags h_ij = s_i - s_j."""
        return self.coords[:, None] - self.coords[None, :]


@dataclass(frozen=True)
class CovBlockId:
    """Identifies one block of the joint covariance (1-based indices)."""

    kind: str
    l: int = 0
    k: int = 0
    i: int = 0
    j: int = 0

    @classmethod
    def same_component_auto(cls, l: int) -> "CovBlockId":
        return cls("same-component-auto", l=l, k=l)

    @classmethod
    def same_location_auto(cls, i: int) -> "CovBlockId":
        return cls("same-location-auto", i=i, j=i)

    @classmethod
    def cross(cls, l: int, k: int) -> "CovBlockId":
        return cls("cross", l=l, k=k)

    @classmethod
    def site_pair(cls, i: int, j: int) -> "CovBlockId":
        return cls("site-pair", i=i, j=j)


@dataclass(frozen=True)
class JointCovariance:
    """Dense np x np covariance with its layout tag.

    Construction validates whole-matrix symmetry, positive semi-definiteness
    (relative to the largest eigenvalue) and a strictly positive diagonal.
    Instances are immutable; the entries array is set read-only.
    """

    entries: np.ndarray
    n: int
    p: int
    ordering: Ordering
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        m = self.n * self.p
        if entries.shape != (m, m):
            raise InvalidSpec(
                f"entries shape {entries.shape} does not match np={m}"
            )
        if self.validate:
            _check_joint_covariance(entries)
        entries = entries.copy()
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def size(self) -> int:
        return self.n * self.p

    def flat_index(self, l: int, i: int) -> int:
        """0-based flat index of (component l, site i), both 1-based."""
        if not (1 <= l <= self.p and 1 <= i <= self.n):
            raise IndexOutOfRange(f"(l={l}, i={i}) outside p={self.p}, n={self.n}")
        if self.ordering is Ordering.COMPONENT_MAJOR:
            return (l - 1) * self.n + (i - 1)
        return (i - 1) * self.p + (l - 1)


def _check_joint_covariance(entries: np.ndarray) -> None:
    scale = np.max(np.abs(entries)) if entries.size else 0.0
    if scale == 0.0:
        raise InvalidSpec("covariance is identically zero")
    if np.max(np.abs(entries - entries.T)) > SYMMETRY_RTOL * scale:
        raise InvalidSpec("covariance is not symmetric as a whole")
    if np.any(np.diag(entries) <= 0):
        raise InvalidSpec("covariance diagonal must be strictly positive")
    eigs = np.linalg.eigvalsh(0.5 * (entries + entries.T))
    if eigs[0] < -PSD_RTOL * eigs[-1]:
        raise NotPD(
            f"min eigenvalue {eigs[0]:.3e} below -{PSD_RTOL:g} * max "
            f"eigenvalue {eigs[-1]:.3e}"
        )


def shuffle_permutation(n: int, p: int, target: Ordering) -> np.ndarray:
    """Index map such that new[a] = old[perm[a]] converts into `target`.

    The source layout is the opposite of `target`.
    """
    if target is Ordering.LOCATION_MAJOR:
        # source component-major (l*n + i) -> target location-major (i*p + l)
        return np.array([l * n + i for i in range(n) for l in range(p)])
    return np.array([i * p + l for l in range(p) for i in range(n)])


def permute_ordering(sigma: JointCovariance, target: Ordering) -> JointCovariance:
    """Return the same covariance re-laid-out in `target` ordering."""
    if sigma.ordering is target:
        return sigma
    perm = shuffle_permutation(sigma.n, sigma.p, target)
    entries = sigma.entries[np.ix_(perm, perm)]
    return JointCovariance(entries, sigma.n, sigma.p, target, validate=False)


def get_block(sigma: JointCovariance, block: CovBlockId) -> np.ndarray:
    """Extract one block of the joint covariance, resolving the layout.

    Returns n x n matrices for component-pair blocks and p x p matrices for
    site-pair blocks.
    """
    n, p = sigma.n, sigma.p
    kind = block.kind
    if kind in ("cross", "same-component-auto"):
        l, k = block.l, block.k
        if not (1 <= l <= p and 1 <= k <= p):
            raise IndexOutOfRange(f"component pair ({l},{k}) outside p={p}")
        rows = np.array([sigma.flat_index(l, i) for i in range(1, n + 1)])
        cols = np.array([sigma.flat_index(k, j) for j in range(1, n + 1)])
    elif kind in ("site-pair", "same-location-auto"):
        i, j = block.i, block.j
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexOutOfRange(f"site pair ({i},{j}) outside n={n}")
        rows = np.array([sigma.flat_index(l, i) for l in range(1, p + 1)])
        cols = np.array([sigma.flat_index(k, j) for k in range(1, p + 1)])
    else:
        raise InvalidSpec(f"unknown block kind {kind!r}")
    return sigma.entries[np.ix_(rows, cols)]


def asymmetry_index(block: np.ndarray) -> float:
    """Normalized Frobenius norm of the antisymmetric part.

    0 iff the block is symmetric; scale-invariant otherwise.
    """
    block = np.asarray(block, dtype=float)
    if block.ndim != 2 or block.shape[0] != block.shape[1]:
        raise NonSquare(f"block shape {block.shape} is not square")
    denom = max(np.linalg.norm(block), 1e-300)
    return float(np.linalg.norm(block - block.T) / denom)


def save_covariance(sigma: JointCovariance, path: str | Path) -> list[Path]:
    """Write entries as headerless CSV plus a `.meta` sidecar (n, p, ordering)."""
    path = Path(path)
    np.savetxt(path, sigma.entries, delimiter=",", fmt="%.17g")
    meta = path.with_name(path.name + ".meta")
    meta.write_text(
        f"n={sigma.n}\np={sigma.p}\nordering={sigma.ordering.value}\n"
    )
    return [path, meta]


def load_covariance(path: str | Path) -> JointCovariance:
    """Load a covariance saved by :func:`save_covariance`."""
    path = Path(path)
    entries = np.loadtxt(path, delimiter=",", ndmin=2)
    meta = {}
    for line in Path(str(path) + ".meta").read_text().splitlines():
        if line.strip():
            key, _, value = line.partition("=")
            meta[key.strip()] = value.strip()
    return JointCovariance(
        entries, int(meta["n"]), int(meta["p"]), Ordering.parse(meta["ordering"])
    )


def chol_with_jitter(matrix: np.ndarray, max_tries: int = 3):
    """Lower Cholesky factor, adding a doubling ridge on failure.

    Ridge starts at 1e-10 * trace / dim; raises NotPD after `max_tries`
    failed retries.  Returns (L, jitter_used).
    """
    matrix = np.asarray(matrix, dtype=float)
    dim = matrix.shape[0]
    try:
        return np.linalg.cholesky(matrix), 0.0
    except np.linalg.LinAlgError:
        pass
    jitter = 1e-10 * np.trace(matrix) / dim
    for _ in range(max_tries):
        try:
            return np.linalg.cholesky(matrix + jitter * np.eye(dim)), jitter
        except np.linalg.LinAlgError:
            jitter *= 2.0
    raise NotPD(f"Cholesky failed after jitter up to {jitter:.3e}")


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.T)


def as_grid(coords: Sequence[float] | LocationGrid) -> LocationGrid:
    if isinstance(coords, LocationGrid):
        return coords
    return LocationGrid(np.asarray(coords, dtype=float))
