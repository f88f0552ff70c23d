"""Correlation normalization, structural property checks, empirical estimation.

The property suite asserts what must hold for any valid joint correlation
(auto-block symmetry, unit diagonal, the global |corr| <= 1 bound,
whole-matrix symmetry) and *reports* cross-block asymmetry indices without
asserting symmetry, since cross blocks are asymmetric in general.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import (
    CovBlockId,
    JointCovariance,
    Ordering,
    asymmetry_index,
    get_block,
)
from .errors import IndexOutOfRange, InsufficientReplicates, InvalidSpec, ZeroVariance

CORR_BOUND_TOL = 1e-10


@dataclass(frozen=True)
class CorrMatrix:
    """np x np correlation matrix with unit diagonal and |entries| <= 1."""

    entries: np.ndarray
    n: int
    p: int
    ordering: Ordering

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        m = self.n * self.p
        if entries.shape != (m, m):
            raise InvalidSpec(f"entries shape {entries.shape} does not match np={m}")
        if np.max(np.abs(entries)) > 1.0 + CORR_BOUND_TOL:
            raise InvalidSpec("correlation entries exceed 1 in magnitude")
        if not np.allclose(np.diag(entries), 1.0, atol=CORR_BOUND_TOL):
            raise InvalidSpec("correlation diagonal must be 1")
        entries = entries.copy()
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    def as_covariance(self) -> JointCovariance:
        return JointCovariance(self.entries, self.n, self.p, self.ordering, validate=False)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class PropertyReport:
    checks: tuple[CheckResult, ...]
    cross_asymmetry: dict[tuple[int, int], float] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def cov_to_corr(sigma: JointCovariance) -> CorrMatrix:
    """Entrywise normalization by the marginal standard deviations."""
    diag = np.diag(sigma.entries)
    if np.any(diag <= 0):
        bad = int(np.argmin(diag))
        raise ZeroVariance(f"non-positive variance {diag[bad]:.3e} at index {bad}")
    sd = np.sqrt(diag)
    entries = sigma.entries / np.outer(sd, sd)
    # clip float noise at the Cauchy-Schwarz boundary
    np.clip(entries, -1.0, 1.0, out=entries)
    np.fill_diagonal(entries, 1.0)
    return CorrMatrix(entries, sigma.n, sigma.p, sigma.ordering)


def check_properties(corr: CorrMatrix) -> PropertyReport:
    """Run the structural property suite on a joint correlation matrix."""
    sigma = corr.as_covariance()
    n, p = corr.n, corr.p
    checks = []

    worst, witness = 0.0, ""
    for l in range(1, p + 1):
        block = get_block(sigma, CovBlockId.same_component_auto(l))
        dev = float(np.max(np.abs(block - block.T)))
        if dev > worst:
            worst, witness = dev, f"same-component-auto l={l} max|B-B^T|={dev:.3e}"
    for i in range(1, n + 1):
        block = get_block(sigma, CovBlockId.same_location_auto(i))
        dev = float(np.max(np.abs(block - block.T)))
        if dev > worst:
            worst, witness = dev, f"same-location-auto i={i} max|B-B^T|={dev:.3e}"
    checks.append(CheckResult("auto-blocks-symmetric", worst <= 1e-10, witness))

    off_max, witness = 0.0, ""
    for l in range(1, p + 1):
        block = get_block(sigma, CovBlockId.same_component_auto(l))
        off = np.abs(block - np.diag(np.diag(block)))
        val = float(np.max(off)) if off.size else 0.0
        if val > off_max:
            off_max, witness = val, f"same-component-auto l={l} max off-diag {val:.4f}"
    checks.append(
        CheckResult("auto-off-diagonal-bounded", off_max <= 1.0 + CORR_BOUND_TOL, witness)
    )

    global_max = float(np.max(np.abs(corr.entries)))
    checks.append(
        CheckResult(
            "global-bound",
            global_max <= 1.0 + CORR_BOUND_TOL,
            f"max |corr| = {global_max:.6f}",
        )
    )

    sym_dev = float(np.max(np.abs(corr.entries - corr.entries.T)))
    checks.append(
        CheckResult(
            "whole-matrix-symmetric",
            sym_dev <= 1e-10,
            f"max |C - C^T| = {sym_dev:.3e}",
        )
    )

    cross = {}
    for l in range(1, p + 1):
        for k in range(1, p + 1):
            if l != k:
                block = get_block(sigma, CovBlockId.cross(l, k))
                cross[(l, k)] = asymmetry_index(block)

    return PropertyReport(tuple(checks), cross)


def empirical_correlation(samples, n: int | None = None, p: int | None = None) -> CorrMatrix:
    """Unbiased sample covariance across replicates, normalized to correlation.

    Samples are FieldSample replicates of identical shape; the result is
    component-major.
    """
    samples = list(samples)
    if len(samples) < 2:
        raise InsufficientReplicates(f"need >= 2 replicates, got {len(samples)}")
    shape = samples[0].values.shape
    if any(s.values.shape != shape for s in samples):
        raise InvalidSpec("replicates must all share the same shape")
    p = shape[0] if p is None else p
    n = shape[1] if n is None else n
    if (p, n) != shape:
        raise InvalidSpec(f"declared (n={n}, p={p}) does not match shape {shape}")
    data = np.stack([s.values.reshape(-1) for s in samples])  # m x (p*n)
    cov = np.cov(data, rowvar=False, ddof=1)
    diag = np.diag(cov)
    if np.any(diag <= 0):
        bad = int(np.argmin(diag))
        raise ZeroVariance(f"degenerate replicate variance at flat index {bad}")
    sd = np.sqrt(diag)
    entries = cov / np.outer(sd, sd)
    np.clip(entries, -1.0, 1.0, out=entries)
    np.fill_diagonal(entries, 1.0)
    return CorrMatrix(entries, n, p, Ordering.COMPONENT_MAJOR)


def export_corr_strips(
    corr: CorrMatrix, strips: list[tuple[int, int]], pair: tuple[int, int]
) -> list[np.ndarray]:
    """Sub-blocks of one component-pair block restricted to site ranges.

    Strips are 1-based inclusive (start, stop) site ranges; they must lie in
    [1, n] and not overlap.  pair (l, l) selects the same-component auto
    block, (l, k) the cross block.
    """
    n = corr.n
    covered = set()
    for start, stop in strips:
        if not (1 <= start <= stop <= n):
            raise IndexOutOfRange(f"strip ({start},{stop}) outside [1,{n}]")
        span = set(range(start, stop + 1))
        if covered & span:
            raise InvalidSpec(f"strip ({start},{stop}) overlaps another strip")
        covered |= span
    l, k = pair
    block = get_block(corr.as_covariance(), CovBlockId.cross(l, k))
    return [block[start - 1 : stop, start - 1 : stop] for start, stop in strips]


def write_corr_strips(
    corr: CorrMatrix,
    strips: list[tuple[int, int]],
    pair: tuple[int, int],
    outdir: str | Path,
) -> list[Path]:
    """Write each strip block as `<l>-<k>_<strip-index>.csv`."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for idx, block in enumerate(export_corr_strips(corr, strips, pair), start=1):
        path = outdir / f"{pair[0]}-{pair[1]}_{idx}.csv"
        np.savetxt(path, block, delimiter=",", fmt="%.17g")
        paths.append(path)
    return paths
