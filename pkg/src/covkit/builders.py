"""Constructors for joint covariance matrices of p-variate fields.

Five model families are implemented:

* intrinsic (separable): Sigma = H kron V, cross blocks forced symmetric
* kernel convolution: components smoothed from one latent process, with a
  per-pair lag shift breaking cross-block symmetry
* multivariate Matérn: Matérn auto and cross correlations with co-located
  cross-correlation coefficients and optional lag shifts
* Mardia conditional: block-sparse joint precision from per-site conditional
  variances and neighbor regression matrices
* Cressie conditional: sequential conditioning of field q on fields r < q
  through integral operators, off-diagonal blocks B @ Sigma11

All builders are pure functions of (grid, spec).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .core import (
    JointCovariance,
    LocationGrid,
    Ordering,
    PSD_RTOL,
    symmetrize,
)
from .errors import (
    ClosedFormUnavailable,
    InvalidSpec,
    NotPD,
    NotValidModel,
    QuadratureDiverged,
    SymmetryConditionViolated,
    UnsupportedP,
)
from .kernels import GaussKernelParams, MaternParams, Shift, gauss_kernel, matern

QUAD_ENTRY_TOL = 1e-4
QUAD_MAX_REFINEMENTS = 6
MARDIA_CONDITION_RTOL = 1e-8


def _check_spd(matrix: np.ndarray, name: str, sym_tol: float = 1e-12) -> None:
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidSpec(f"{name} must be square, got shape {matrix.shape}")
    scale = max(np.max(np.abs(matrix)), 1e-300)
    if np.max(np.abs(matrix - matrix.T)) > sym_tol * scale:
        raise InvalidSpec(f"{name} is not symmetric")
    try:
        np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        raise InvalidSpec(f"{name} is not positive definite") from None


def _check_shift_deltas(deltas: np.ndarray, p: int, antisymmetric: bool) -> np.ndarray:
    deltas = np.asarray(deltas, dtype=float)
    if deltas.shape != (p, p):
        raise InvalidSpec(f"shift matrix must be {p}x{p}, got {deltas.shape}")
    if np.any(np.diag(deltas) != 0.0):
        raise InvalidSpec("shift matrix must have zero diagonal")
    if antisymmetric and np.max(np.abs(deltas + deltas.T)) > 0.0:
        raise InvalidSpec("shift matrix must be antisymmetric (delta_lk = -delta_kl)")
    if not np.all(np.isfinite(deltas)):
        raise InvalidSpec("shift matrix entries must be finite")
    return deltas


# ---------------------------------------------------------------------------
# model specs


@dataclass(frozen=True)
class IntrinsicSpec:
    """Separable model: spatial Matérn correlation times component covariance."""

    family = "intrinsic"

    rho_params: MaternParams
    V: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.V, dtype=float)
        _check_spd(V, "V")
        object.__setattr__(self, "V", V)

    @property
    def p(self) -> int:
        return self.V.shape[0]


@dataclass(frozen=True)
class KernelConvSpec:
    """Per-component Gaussian kernels over a shared latent Matérn process."""

    family = "kernel-convolution"

    kernels: tuple[GaussKernelParams, ...]
    rho_params: MaternParams
    shifts: np.ndarray

    def __post_init__(self):
        kernels = tuple(self.kernels)
        if not kernels:
            raise InvalidSpec("at least one component kernel required")
        deltas = _check_shift_deltas(self.shifts, len(kernels), antisymmetric=True)
        deltas = deltas.copy()
        deltas.flags.writeable = False
        object.__setattr__(self, "kernels", kernels)
        object.__setattr__(self, "shifts", deltas)

    @property
    def p(self) -> int:
        return len(self.kernels)


@dataclass(frozen=True)
class MultiMaternSpec:
    """Matérn auto/cross correlations; parsimonious cross smoothness.

    Cross smoothness is the average (nu_l + nu_k)/2 with one shared kappa.
    Validity is enforced numerically at build time, not analytically.
    """

    family = "multivariate-matern"

    nus: tuple[float, ...]
    kappa: float
    betas: np.ndarray
    marginal_sds: tuple[float, ...]
    shifts: np.ndarray

    def __post_init__(self):
        nus = tuple(float(v) for v in self.nus)
        p = len(nus)
        for nu in nus:
            MaternParams(nu, self.kappa)  # validates nu and kappa
        # cross smoothness (nu_l + nu_k)/2 must itself have a closed form
        for l in range(1, p + 1):
            for k in range(l + 1, p + 1):
                cross = nus[l - 1] if math.inf in (nus[l - 1], nus[k - 1]) else 0.5 * (
                    nus[l - 1] + nus[k - 1]
                )
                MaternParams(math.inf if math.isinf(cross) else cross, self.kappa)
        betas = np.asarray(self.betas, dtype=float)
        if betas.shape != (p, p):
            raise InvalidSpec(f"betas must be {p}x{p}, got {betas.shape}")
        if np.max(np.abs(betas - betas.T)) > 0.0:
            raise InvalidSpec("betas must be symmetric")
        if not np.allclose(np.diag(betas), 1.0):
            raise InvalidSpec("betas must have unit diagonal")
        if np.any(np.abs(betas) > 1.0):
            raise InvalidSpec("cross-correlation coefficients must satisfy |beta| <= 1")
        sds = tuple(float(v) for v in self.marginal_sds)
        if len(sds) != p or any(s <= 0 for s in sds):
            raise InvalidSpec("marginal_sds must be p positive values")
        deltas = _check_shift_deltas(self.shifts, p, antisymmetric=False)
        betas = betas.copy()
        betas.flags.writeable = False
        deltas = deltas.copy()
        deltas.flags.writeable = False
        object.__setattr__(self, "nus", nus)
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "marginal_sds", sds)
        object.__setattr__(self, "shifts", deltas)

    @property
    def p(self) -> int:
        return len(self.nus)

    def cross_nu(self, l: int, k: int) -> float:
        nu_l, nu_k = self.nus[l - 1], self.nus[k - 1]
        if math.inf in (nu_l, nu_k):
            return math.inf
        return 0.5 * (nu_l + nu_k)


@dataclass(frozen=True)
class MardiaSpec:
    """Conditional precision model: Gamma_i, neighbor betas, neighborhoods.

    betas is keyed by 1-based ordered site pairs (i, j); a key implies the
    pair is mutually neighboring.  Means default to zero and do not affect
    the covariance.
    """

    family = "mardia"

    Gammas: tuple[np.ndarray, ...]
    betas: Mapping[tuple[int, int], np.ndarray]
    neighborhoods: Mapping[int, frozenset[int]]
    mus: tuple[np.ndarray, ...] | None = None

    def __post_init__(self):
        Gammas = tuple(np.asarray(g, dtype=float) for g in self.Gammas)
        if not Gammas:
            raise InvalidSpec("at least one site required")
        p = Gammas[0].shape[0]
        for idx, g in enumerate(Gammas, start=1):
            _check_spd(g, f"Gamma_{idx}")
            if g.shape != (p, p):
                raise InvalidSpec("all Gamma_i must share the same dimension p")
        n = len(Gammas)
        hoods = {i: frozenset(js) for i, js in self.neighborhoods.items()}
        for i, js in hoods.items():
            if not (1 <= i <= n) or any(not (1 <= j <= n) or j == i for j in js):
                raise InvalidSpec(f"neighborhood of site {i} out of range")
            for j in js:
                if i not in hoods.get(j, frozenset()):
                    raise InvalidSpec(f"neighborhood not mutual for pair ({i},{j})")
        betas = {}
        for (i, j), b in self.betas.items():
            if j not in hoods.get(i, frozenset()):
                raise InvalidSpec(f"beta ({i},{j}) given for non-neighbor pair")
            b = np.asarray(b, dtype=float)
            if b.shape != (p, p):
                raise InvalidSpec(f"beta ({i},{j}) must be {p}x{p}")
            betas[(i, j)] = b
        mus = self.mus
        if mus is not None:
            mus = tuple(np.asarray(m, dtype=float) for m in mus)
            if len(mus) != n or any(m.shape != (p,) for m in mus):
                raise InvalidSpec("mus must be n vectors of length p")
        object.__setattr__(self, "Gammas", Gammas)
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "neighborhoods", hoods)
        object.__setattr__(self, "mus", mus)

    @property
    def n(self) -> int:
        return len(self.Gammas)

    @property
    def p(self) -> int:
        return self.Gammas[0].shape[0]


@dataclass(frozen=True)
class MaternCov:
    """Matérn correlation scaled to a covariance."""

    params: MaternParams
    variance: float

    def __post_init__(self):
        if not (self.variance > 0):
            raise InvalidSpec(f"variance must be positive, got {self.variance}")

    def matrix(self, grid: LocationGrid) -> np.ndarray:
        return self.variance * matern(grid.lags(), self.params)


@dataclass(frozen=True)
class BFunc:
    """Shifted squared-exponential conditioning weight b(s, v)."""

    gain: float
    range_: float
    shift: Shift = field(default_factory=Shift)

    def __post_init__(self):
        if not (self.range_ > 0):
            raise InvalidSpec(f"b-function range must be positive, got {self.range_}")

    def matrix(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        lag = rows[:, None] - cols[None, :] - self.shift.delta
        return self.gain * np.exp(-((lag / self.range_) ** 2))


@dataclass(frozen=True)
class CressieSpec:
    """Sequential conditional model for p = 2 or 3 fields."""

    family = "cressie"

    c11: MaternCov
    cond: Mapping[int, MaternCov]
    b_funcs: Mapping[tuple[int, int], BFunc]
    p: int = 2

    def __post_init__(self):
        if self.p not in (2, 3):
            raise UnsupportedP(f"cressie builder supports p in {{2,3}}, got {self.p}")
        cond = dict(self.cond)
        for q in range(2, self.p + 1):
            if q not in cond:
                raise InvalidSpec(f"missing conditional covariance for field {q}")
        b_funcs = dict(self.b_funcs)
        for (q, r) in b_funcs:
            if not (1 <= r < q <= self.p):
                raise InvalidSpec(f"b-function ({q},{r}) must have r < q <= p")
        object.__setattr__(self, "cond", cond)
        object.__setattr__(self, "b_funcs", b_funcs)

    def without_shifts(self) -> "CressieSpec":
        """Same spec with every b-function shift zeroed."""
        stripped = {
            key: replace(b, shift=Shift(0.0)) for key, b in self.b_funcs.items()
        }
        return replace(self, b_funcs=stripped)


ModelSpec = IntrinsicSpec | KernelConvSpec | MultiMaternSpec | MardiaSpec | CressieSpec


# ---------------------------------------------------------------------------
# intrinsic / separable


def build_intrinsic(
    grid: LocationGrid,
    spec: IntrinsicSpec,
    ordering: Ordering = Ordering.COMPONENT_MAJOR,
) -> JointCovariance:
    """Sigma = H kron V with H_ij the spatial Matérn correlation."""
    H = matern(grid.lags(), spec.rho_params)
    if ordering is Ordering.LOCATION_MAJOR:
        entries = np.kron(H, spec.V)
    else:
        entries = np.kron(spec.V, H)
    return JointCovariance(entries, grid.n, spec.p, ordering, validate=False)


def kron_logdet_inverse(H: np.ndarray, V: np.ndarray) -> tuple[float, np.ndarray]:
    """Log-determinant and inverse of H kron V without forming it densely.

    Uses |H kron V| = |H|^p |V|^n and (H kron V)^-1 = H^-1 kron V^-1.
    """
    H = np.asarray(H, dtype=float)
    V = np.asarray(V, dtype=float)
    n, p = H.shape[0], V.shape[0]
    try:
        cH = cho_factor(H, lower=True)
        cV = cho_factor(V, lower=True)
    except np.linalg.LinAlgError:
        raise NotPD("H and V must both be positive definite") from None
    logdet_H = 2.0 * float(np.sum(np.log(np.diag(cH[0]))))
    logdet_V = 2.0 * float(np.sum(np.log(np.diag(cV[0]))))
    logdet = p * logdet_H + n * logdet_V
    H_inv = cho_solve(cH, np.eye(n))
    V_inv = cho_solve(cV, np.eye(p))
    return logdet, np.kron(H_inv, V_inv)


# ---------------------------------------------------------------------------
# kernel convolution


def _kernel_conv_closed_block(
    grid: LocationGrid, spec: KernelConvSpec, l: int, r: int
) -> np.ndarray:
    """Exact cross block when the latent correlation is squared-exponential.

    The triple Gaussian convolution collapses to
    sigma_l sigma_r / (kappa S) * exp(-(h - delta)^2 / (2 S^2)) with
    S^2 = b_l^2 + b_r^2 + 1/kappa^2.
    """
    kl, kr = spec.kernels[l - 1], spec.kernels[r - 1]
    kappa = spec.rho_params.kappa
    s2 = kl.bandwidth**2 + kr.bandwidth**2 + 1.0 / kappa**2
    lag = grid.lags() - spec.shifts[l - 1, r - 1]
    amp = kl.amplitude * kr.amplitude / (kappa * math.sqrt(s2))
    return amp * np.exp(-0.5 * lag**2 / s2)


def _kernel_conv_quad_block(
    grid: LocationGrid,
    spec: KernelConvSpec,
    l: int,
    r: int,
    t: np.ndarray,
    w: np.ndarray,
    rho: np.ndarray,
) -> np.ndarray:
    kl, kr = spec.kernels[l - 1], spec.kernels[r - 1]
    rows = grid.coords - spec.shifts[l - 1, r - 1]
    Kl = gauss_kernel(rows[:, None] - t[None, :], kl) * w[None, :]
    Kr = gauss_kernel(grid.coords[:, None] - t[None, :], kr) * w[None, :]
    return kl.amplitude * kr.amplitude * (Kl @ rho @ Kr.T)


def _kernel_conv_quadrature(
    grid: LocationGrid, spec: KernelConvSpec, dt: float
) -> np.ndarray:
    pad = 4.0 * max(k.bandwidth for k in spec.kernels)
    t = np.arange(grid.coords[0] - pad, grid.coords[-1] + pad + 0.5 * dt, dt)
    w = np.full(t.size, dt)
    w[0] = w[-1] = 0.5 * dt
    rho = matern(t[:, None] - t[None, :], spec.rho_params)
    n, p = grid.n, spec.p
    entries = np.zeros((n * p, n * p))
    for l in range(1, p + 1):
        for r in range(l, p + 1):
            block = _kernel_conv_quad_block(grid, spec, l, r, t, w, rho)
            if l == r:
                block = symmetrize(block)
            entries[(l - 1) * n : l * n, (r - 1) * n : r * n] = block
            if r != l:
                entries[(r - 1) * n : r * n, (l - 1) * n : l * n] = block.T
    return entries


def build_kernel_conv(
    grid: LocationGrid, spec: KernelConvSpec, method: str = "closed-form"
) -> JointCovariance:
    """Joint covariance under the kernel-convolution model (component-major).

    method "closed-form" requires the latent correlation to be the
    squared-exponential limit (nu = inf).  method "quadrature" uses a
    trapezoid rule over the grid extended by four bandwidths, halving the
    step until the largest entry change drops below 1e-4.
    """
    n, p = grid.n, spec.p
    if method == "closed-form":
        if spec.rho_params.nu != math.inf:
            raise ClosedFormUnavailable(
                "closed form needs the squared-exponential latent correlation "
                f"(nu=inf), got nu={spec.rho_params.nu}"
            )
        entries = np.zeros((n * p, n * p))
        for l in range(1, p + 1):
            for r in range(l, p + 1):
                block = _kernel_conv_closed_block(grid, spec, l, r)
                entries[(l - 1) * n : l * n, (r - 1) * n : r * n] = block
                if r != l:
                    entries[(r - 1) * n : r * n, (l - 1) * n : l * n] = block.T
                else:
                    entries[(l - 1) * n : l * n, (l - 1) * n : l * n] = symmetrize(
                        block
                    )
    elif method == "quadrature":
        dt = grid.spacing
        entries = _kernel_conv_quadrature(grid, spec, dt)
        for _ in range(QUAD_MAX_REFINEMENTS):
            dt *= 0.5
            refined = _kernel_conv_quadrature(grid, spec, dt)
            change = np.max(np.abs(refined - entries))
            entries = refined
            if change < QUAD_ENTRY_TOL:
                break
    else:
        raise InvalidSpec(f"unknown method {method!r}")
    eigs = np.linalg.eigvalsh(entries)
    if eigs[0] < -PSD_RTOL * eigs[-1]:
        # a deficit within the quadrature entry tolerance is discretization
        # noise; lift it with a diagonal ridge, anything larger is divergence
        if eigs[0] < -QUAD_ENTRY_TOL * eigs[-1]:
            raise QuadratureDiverged(
                f"negative eigenvalue {eigs[0]:.3e} beyond tolerance"
            )
        entries = entries + (1.01 * -eigs[0] + 1e-12 * eigs[-1]) * np.eye(n * p)
    return JointCovariance(entries, n, p, Ordering.COMPONENT_MAJOR, validate=False)


# ---------------------------------------------------------------------------
# multivariate Matérn


def build_multi_matern(grid: LocationGrid, spec: MultiMaternSpec) -> JointCovariance:
    """Joint covariance with Matérn auto and cross blocks (component-major).

    Rejects parameterizations whose assembled matrix is not positive
    semi-definite up to tolerance.
    """
    n, p = grid.n, spec.p
    lags = grid.lags()
    entries = np.zeros((n * p, n * p))
    for l in range(1, p + 1):
        for k in range(l, p + 1):
            if l == k:
                params = MaternParams(spec.nus[l - 1], spec.kappa)
                block = spec.marginal_sds[l - 1] ** 2 * matern(lags, params)
            else:
                params = MaternParams(spec.cross_nu(l, k), spec.kappa)
                shifted = lags - spec.shifts[l - 1, k - 1]
                block = (
                    spec.marginal_sds[l - 1]
                    * spec.marginal_sds[k - 1]
                    * spec.betas[l - 1, k - 1]
                    * matern(shifted, params)
                )
            entries[(l - 1) * n : l * n, (k - 1) * n : k * n] = block
            if k != l:
                entries[(k - 1) * n : k * n, (l - 1) * n : l * n] = block.T
    eigs = np.linalg.eigvalsh(entries)
    if eigs[0] < -PSD_RTOL * eigs[-1]:
        raise NotValidModel(
            f"assembled covariance has eigenvalue {eigs[0]:.3e}; "
            "cross-correlation magnitudes too large for this parameterization"
        )
    return JointCovariance(entries, n, p, Ordering.COMPONENT_MAJOR, validate=False)


# ---------------------------------------------------------------------------
# Mardia conditional


def build_mardia_precision(
    grid: LocationGrid, spec: MardiaSpec
) -> tuple[np.ndarray, JointCovariance]:
    """Joint precision Q and its dense inverse as a covariance.

    Q = blockdiag(Gamma_i^-1) @ block(I, -beta_ij) in location-major layout.
    Requires the pairwise compatibility Gamma_i^-1 beta_ij =
    beta_ji^T Gamma_j^-1 (checked to 1e-8 relative) so that Q is symmetric.
    """
    n, p = spec.n, spec.p
    if grid.n != n:
        raise InvalidSpec(f"grid has {grid.n} sites but spec defines {n}")
    gamma_invs = [np.linalg.inv(g) for g in spec.Gammas]

    worst_pair, worst_resid = None, 0.0
    seen = set()
    for (i, j) in spec.betas:
        if (j, i) in seen:
            continue
        seen.add((i, j))
        b_ij = spec.betas[(i, j)]
        b_ji = spec.betas.get((j, i), np.zeros((p, p)))
        lhs = gamma_invs[i - 1] @ b_ij
        rhs = b_ji.T @ gamma_invs[j - 1]
        scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs), 1e-300)
        resid = np.linalg.norm(lhs - rhs) / scale
        if resid > worst_resid:
            worst_pair, worst_resid = (i, j), resid
    if worst_resid > MARDIA_CONDITION_RTOL:
        raise SymmetryConditionViolated(
            f"pair=({worst_pair[0]},{worst_pair[1]}) relative residual "
            f"{worst_resid:.3e} exceeds {MARDIA_CONDITION_RTOL:g}",
            pair=worst_pair,
            residual=worst_resid,
        )

    Q = np.zeros((n * p, n * p))
    for i in range(1, n + 1):
        Q[(i - 1) * p : i * p, (i - 1) * p : i * p] = gamma_invs[i - 1]
        for j in spec.neighborhoods.get(i, frozenset()):
            b_ij = spec.betas.get((i, j))
            if b_ij is not None:
                Q[(i - 1) * p : i * p, (j - 1) * p : j * p] = -gamma_invs[i - 1] @ b_ij
    Q = symmetrize(Q)
    try:
        cQ = cho_factor(Q, lower=True)
    except np.linalg.LinAlgError:
        raise NotPD("assembled precision matrix is not positive definite") from None
    cov = cho_solve(cQ, np.eye(n * p))
    sigma = JointCovariance(
        symmetrize(cov), n, p, Ordering.LOCATION_MAJOR, validate=False
    )
    return Q, sigma


# ---------------------------------------------------------------------------
# Cressie conditional


CRESSIE_PAD_RANGES = 6.0


def build_cressie(grid: LocationGrid, spec: CressieSpec, p: int | None = None) -> JointCovariance:
    """Joint covariance by sequential conditioning (component-major).

    Bivariate: Sigma21 = B @ Sigma11, Sigma22 = C_{2|1} + B @ Sigma11 @ B^T.
    Trivariate: field 3 conditions on the stacked fields 1-2 the same way.
    The conditioning integral is discretized with weight = grid spacing,
    which requires a uniform grid.  The integral is evaluated on a grid
    extended by several b-function ranges on each side and the result
    restricted to the requested sites, so boundary truncation does not leak
    spurious asymmetry into the cross blocks (a principal submatrix of the
    extended PSD matrix is PSD).
    """
    p = spec.p if p is None else p
    if p not in (2, 3):
        raise UnsupportedP(f"cressie builder supports p in {{2,3}}, got {p}")
    if p != spec.p:
        raise InvalidSpec(f"requested p={p} but spec declares p={spec.p}")
    if not grid.is_uniform():
        raise InvalidSpec("cressie builder requires a uniform grid")
    n = grid.n
    h = grid.spacing

    ranges = [b.range_ for b in spec.b_funcs.values()]
    pad = int(np.ceil(CRESSIE_PAD_RANGES * max(ranges) / h)) if ranges else 0
    m = n + 2 * pad
    s = grid.coords[0] + h * (np.arange(m) - pad)
    ext = LocationGrid(s)
    keep = np.arange(pad, pad + n)

    sigma11 = spec.c11.matrix(ext)
    B21 = spec.b_funcs.get((2, 1), BFunc(0.0, 1.0)).matrix(s, s) * h
    sigma21 = B21 @ sigma11
    sigma22 = spec.cond[2].matrix(ext) + B21 @ sigma11 @ B21.T

    if p == 2:
        blocks = [[sigma11, sigma21.T], [sigma21, sigma22]]
    else:
        top = np.block([[sigma11, sigma21.T], [sigma21, sigma22]])
        B31 = spec.b_funcs.get((3, 1), BFunc(0.0, 1.0)).matrix(s, s) * h
        B32 = spec.b_funcs.get((3, 2), BFunc(0.0, 1.0)).matrix(s, s) * h
        B3 = np.hstack([B31, B32])
        sigma31 = B3 @ top[:, :m]
        sigma32 = B3 @ top[:, m:]
        sigma33 = spec.cond[3].matrix(ext) + B3 @ top @ B3.T
        blocks = [
            [sigma11, sigma21.T, sigma31.T],
            [sigma21, sigma22, sigma32.T],
            [sigma31, sigma32, sigma33],
        ]

    entries = np.block(
        [[blk[np.ix_(keep, keep)] for blk in row] for row in blocks]
    )
    entries = symmetrize(entries)
    jitter = 0.0
    for attempt in range(4):
        try:
            return JointCovariance(
                entries + jitter * np.eye(n * p),
                n,
                p,
                Ordering.COMPONENT_MAJOR,
            )
        except NotPD:
            if attempt == 3:
                raise
            jitter = (
                1e-10 * np.trace(entries) / (n * p) if jitter == 0.0 else 2.0 * jitter
            )
    raise NotPD("unreachable")  # pragma: no cover
