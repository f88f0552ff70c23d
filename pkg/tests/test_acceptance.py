"""End-to-end acceptance checks, one per shipped guarantee.

Each test prints a single `[criterion NN] name: PASS/FAIL` line so the whole
gate can be read off `pytest tests/test_acceptance.py -s`.
"""

import math
from pathlib import Path

import numpy as np
import pytest

import covkit as ck
from covkit.cli import main as cli_main
from covkit.config import validate_config
from covkit.errors import SymmetryConditionViolated

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
SUPPORTED_NU = (0.5, 1.5, 2.5, math.inf)


def report(num: int, name: str, passed: bool, detail: str = "") -> None:
    tag = "PASS" if passed else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[criterion {num:02d}] {name}: {tag}{suffix}")
    assert passed, f"criterion {num} failed{suffix}"


def max_cross_asymmetry(sigma: ck.JointCovariance) -> float:
    return max(
        ck.asymmetry_index(ck.get_block(sigma, ck.CovBlockId.cross(l, k)))
        for l in range(1, sigma.p + 1)
        for k in range(1, sigma.p + 1)
        if l != k
    )


def make_spd(dim: int, rng) -> np.ndarray:
    A = rng.standard_normal((dim, dim))
    return A @ A.T + dim * np.eye(dim)


# ---------------------------------------------------------------------------
# randomized spec generators (criteria 3 and 5)


def random_intrinsic(rng):
    p = int(rng.integers(2, 4))
    params = ck.MaternParams(
        float(rng.choice([0.5, 1.5, 2.5])), float(rng.uniform(0.2, 2.0))
    )
    return ck.IntrinsicSpec(params, make_spd(p, rng)), ck.build_intrinsic


def random_kernel_conv(rng):
    p = int(rng.integers(2, 4))
    kernels = tuple(
        ck.GaussKernelParams(float(rng.uniform(0.3, 1.5)), float(rng.uniform(0.5, 2.0)))
        for _ in range(p)
    )
    # shifts consistent with per-component displacements d_l, so the spec is
    # a valid model for any p (pairwise shifts must satisfy d_l - d_k)
    d = rng.uniform(-1.0, 1.0, size=p)
    shifts = d[:, None] - d[None, :]
    spec = ck.KernelConvSpec(
        kernels, ck.MaternParams(math.inf, float(rng.uniform(0.5, 2.0))), shifts
    )
    return spec, ck.build_kernel_conv


def random_multi_matern(rng):
    nus = tuple(rng.choice([(0.5, 0.5), (1.5, 1.5), (2.5, 2.5), (0.5, 2.5)]))
    beta = float(rng.uniform(-0.3, 0.3))
    spec = ck.MultiMaternSpec(
        nus,
        float(rng.uniform(0.5, 2.0)),
        np.array([[1.0, beta], [beta, 1.0]]),
        (float(rng.uniform(0.5, 2.0)), float(rng.uniform(0.5, 2.0))),
        ck.shift_matrix(2, float(rng.uniform(-1.0, 1.0))),
    )
    return spec, ck.build_multi_matern


def random_mardia(rng, sites: int = 4, p: int = 2) -> ck.MardiaSpec:
    Gammas = tuple(make_spd(p, rng) for _ in range(sites))
    betas, neighbors = {}, {}
    for i in range(1, sites):
        # beta_ij = Gamma_i S, beta_ji = Gamma_j S^T satisfies the
        # compatibility condition for any S; small scale keeps Q positive
        S = 0.01 * rng.standard_normal((p, p))
        betas[(i, i + 1)] = Gammas[i - 1] @ S
        betas[(i + 1, i)] = Gammas[i] @ S.T
        neighbors.setdefault(i, set()).add(i + 1)
        neighbors.setdefault(i + 1, set()).add(i)
    return ck.MardiaSpec(
        Gammas, betas, {i: frozenset(js) for i, js in neighbors.items()}
    )


def random_cressie(rng):
    p = int(rng.choice([2, 3]))
    cond = {
        q: ck.MaternCov(
            ck.MaternParams(float(rng.choice([0.5, 1.5, 2.5])), float(rng.uniform(0.5, 2.0))),
            float(rng.uniform(0.1, 1.0)),
        )
        for q in range(2, p + 1)
    }
    b_funcs = {
        (q, r): ck.BFunc(
            float(rng.uniform(-1.0, 1.0)),
            float(rng.uniform(0.5, 1.5)),
            ck.Shift(float(rng.uniform(-1.0, 1.0))),
        )
        for q in range(2, p + 1)
        for r in range(1, q)
    }
    spec = ck.CressieSpec(
        ck.MaternCov(
            ck.MaternParams(float(rng.choice([0.5, 1.5, 2.5])), float(rng.uniform(0.5, 2.0))),
            float(rng.uniform(0.5, 2.0)),
        ),
        cond,
        b_funcs,
        p=p,
    )
    return spec, ck.build_cressie


# ---------------------------------------------------------------------------
# criteria


def test_criterion_01_experiment_ordering():
    grid, spec, doc = validate_config(CONFIGS / "experiment_1d.toml")
    section = doc["experiment"]
    lo, hi = section["target_sites_range"]
    cfg = ck.ExperimentConfig(
        grid=grid,
        true_spec=spec,
        seeds=tuple(range(section["base_seed"], section["base_seed"] + section["n_seeds"])),
        target_sites=tuple(range(lo, hi + 1)),
    )
    result = ck.run_experiment(cfg)
    wins = result.win_rate("with-shift") * len(cfg.seeds)
    ratio = result.mean_mae("with-shift") / result.mean_mae("without-shift")
    report(
        1,
        "shift model beats no-shift model",
        wins >= 18 and ratio <= 0.8,
        f"wins={wins:.0f}/20, MAE ratio={ratio:.3f}",
    )


def test_criterion_02_symmetry_dichotomy():
    grid = ck.LocationGrid.regular(0.0, 12.0, 0.5)  # n=24
    sym_cases = {}
    asym_cases = {}

    intr = ck.IntrinsicSpec(
        ck.MaternParams(1.5, 1.0), np.array([[1.0, 0.4], [0.4, 1.5]])
    )
    sym_cases["intrinsic"] = ck.build_intrinsic(grid, intr)

    kernels = (ck.GaussKernelParams(0.8), ck.GaussKernelParams(1.2))
    rho = ck.MaternParams(math.inf, 1.0)
    for delta, dest in ((0.0, sym_cases), (1.0, asym_cases)):
        spec = ck.KernelConvSpec(kernels, rho, ck.shift_matrix(2, delta))
        dest["kernel_conv"] = ck.build_kernel_conv(grid, spec)

    for delta, dest in ((0.0, sym_cases), (1.0, asym_cases)):
        spec = ck.MultiMaternSpec(
            (0.5, 2.5),
            1.0,
            np.array([[1.0, 0.4], [0.4, 1.0]]),
            (1.0, 1.5),
            ck.shift_matrix(2, delta),
        )
        dest["multi_matern"] = ck.build_multi_matern(grid, spec)

    mardia_grid, mardia_spec, _ = validate_config(CONFIGS / "mardia.toml")
    sym_cases["mardia"] = ck.build_mardia_precision(mardia_grid, mardia_spec)[1]

    for delta, dest in ((0.0, sym_cases), (1.0, asym_cases)):
        spec = ck.CressieSpec(
            ck.MaternCov(ck.MaternParams(1.5, 1.0), 1.0),
            {2: ck.MaternCov(ck.MaternParams(1.5, 2.0), 0.25)},
            {(2, 1): ck.BFunc(1.0, 1.0, ck.Shift(delta))},
            p=2,
        )
        dest["cressie"] = ck.build_cressie(grid, spec)

    sym_vals = {name: max_cross_asymmetry(s) for name, s in sym_cases.items()}
    asym_vals = {name: max_cross_asymmetry(s) for name, s in asym_cases.items()}
    passed = all(v <= 1e-6 for v in sym_vals.values()) and all(
        v > 1e-2 for v in asym_vals.values()
    )
    report(
        2,
        "zero shift symmetric, nonzero shift asymmetric",
        passed,
        f"max sym={max(sym_vals.values()):.1e}, min asym={min(asym_vals.values()):.3f}",
    )


def _randomized_builds():
    rng = np.random.default_rng(20240817)
    grid = ck.LocationGrid.regular(0.0, 6.0, 0.5)  # n=12
    for _ in range(50):
        for make in (random_intrinsic, random_kernel_conv, random_multi_matern, random_cressie):
            spec, builder = make(rng)
            yield builder(grid, spec)
        mardia_spec = random_mardia(rng)
        mardia_grid = ck.LocationGrid(np.arange(4, dtype=float))
        yield ck.build_mardia_precision(mardia_grid, mardia_spec)[1]


def test_criterion_03_randomized_validity():
    count = 0
    worst_sym, worst_eig = 0.0, 0.0
    for sigma in _randomized_builds():
        count += 1
        scale = float(np.max(np.abs(sigma.entries)))
        worst_sym = max(
            worst_sym, float(np.max(np.abs(sigma.entries - sigma.entries.T))) / scale
        )
        eigs = np.linalg.eigvalsh(sigma.entries)
        worst_eig = min(worst_eig, float(eigs[0] / eigs[-1]))
    passed = count == 250 and worst_sym <= 1e-10 and worst_eig >= -1e-8
    report(
        3,
        "250 randomized specs build symmetric PSD matrices",
        passed,
        f"builds={count}, sym dev={worst_sym:.1e}, min rel eig={worst_eig:.1e}",
    )


def test_criterion_04_kronecker_fast_path():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 9))
        p = int(rng.integers(2, 6))
        H, V = make_spd(p, rng), make_spd(n, rng)
        logdet, inv = ck.kron_logdet_inverse(H, V)
        dense = np.kron(H, V)
        sign, dense_logdet = np.linalg.slogdet(dense)
        dense_inv = np.linalg.inv(dense)
        worst = max(
            worst,
            abs(logdet - dense_logdet) / abs(dense_logdet),
            float(np.max(np.abs(inv - dense_inv)) / np.max(np.abs(dense_inv))),
        )
    report(4, "kron logdet/inverse matches dense", worst <= 1e-8, f"max rel err={worst:.1e}")


def test_criterion_05_correlation_bounds():
    rng = np.random.default_rng(99)
    grid = ck.LocationGrid.regular(0.0, 10.0, 0.5)
    sigmas = []
    for make in (random_intrinsic, random_kernel_conv, random_multi_matern, random_cressie):
        spec, builder = make(rng)
        sigmas.append(builder(grid, spec))
    mardia_grid, mardia_spec, _ = validate_config(CONFIGS / "mardia.toml")
    sigmas.append(ck.build_mardia_precision(mardia_grid, mardia_spec)[1])
    worst_entry, worst_diag = 0.0, 0.0
    for sigma in sigmas:
        corr = ck.cov_to_corr(sigma)
        worst_entry = max(worst_entry, float(np.max(np.abs(corr.entries))))
        worst_diag = max(worst_diag, float(np.max(np.abs(np.diag(corr.entries) - 1.0))))
    passed = worst_entry <= 1.0 + 1e-10 and worst_diag <= 1e-12
    report(
        5,
        "correlations bounded with unit diagonal",
        passed,
        f"max |corr|={worst_entry:.12f}",
    )


def test_criterion_06_monte_carlo_consistency():
    grid = ck.LocationGrid.regular(0.0, 20.0, 0.5)  # n=40, p=2 -> np=80
    spec = ck.MultiMaternSpec(
        (0.5, 2.5),
        1.0,
        np.array([[1.0, 0.4], [0.4, 1.0]]),
        (1.0, 2.0),
        ck.shift_matrix(2, 1.0),
    )
    sigma = ck.build_multi_matern(grid, spec)
    true_corr = ck.cov_to_corr(sigma)
    reps = ck.sample_replicates(sigma, 10000, base_seed=5, grid=grid)
    emp = ck.empirical_correlation(reps)
    entry_err = float(np.max(np.abs(emp.entries - true_corr.entries)))
    true_asym = ck.asymmetry_index(
        ck.get_block(true_corr.as_covariance(), ck.CovBlockId.cross(1, 2))
    )
    emp_asym = ck.asymmetry_index(
        ck.get_block(emp.as_covariance(), ck.CovBlockId.cross(1, 2))
    )
    ratio = emp_asym / true_asym
    passed = entry_err <= 0.05 and 0.7 <= ratio <= 1.3
    report(
        6,
        "empirical correlation matches truth",
        passed,
        f"max entry err={entry_err:.3f}, asymmetry ratio={ratio:.3f}",
    )


def test_criterion_07_quadrature_oracle():
    grid = ck.LocationGrid.regular(-5.0, 5.0, 0.25)  # n=40
    spec = ck.KernelConvSpec(
        (ck.GaussKernelParams(0.8), ck.GaussKernelParams(1.2)),
        ck.MaternParams(math.inf, 1.0),
        ck.shift_matrix(2, 0.5),
    )
    closed = ck.build_kernel_conv(grid, spec, method="closed-form")
    quad = ck.build_kernel_conv(grid, spec, method="quadrature")
    err = float(
        np.max(np.abs(closed.entries - quad.entries)) / np.max(np.abs(closed.entries))
    )
    report(7, "closed form agrees with quadrature", err <= 1e-3, f"rel err={err:.1e}")


def test_criterion_08_mardia_condition_gate():
    rng = np.random.default_rng(13)
    grid = ck.LocationGrid(np.arange(4, dtype=float))
    good = random_mardia(rng)
    broken_betas = dict(good.betas)
    broken_betas[(1, 2)] = 1.01 * broken_betas[(1, 2)]
    broken = ck.MardiaSpec(good.Gammas, broken_betas, good.neighborhoods)
    rejected = False
    try:
        ck.build_mardia_precision(grid, broken)
    except SymmetryConditionViolated:
        rejected = True
    Q, sigma = ck.build_mardia_precision(grid, good)
    sym_ok = float(np.max(np.abs(Q - Q.T))) <= 1e-10 * float(np.max(np.abs(Q)))
    pd_ok = float(np.linalg.eigvalsh(Q)[0]) > 0.0
    report(
        8,
        "perturbed conditional spec rejected, repaired spec builds",
        rejected and sym_ok and pd_ok,
        f"rejected={rejected}, precision PD={pd_ok}",
    )


def test_criterion_09_kriging_sanity():
    rng = np.random.default_rng(21)
    grid = ck.LocationGrid.regular(0.0, 6.0, 0.5)
    spec = ck.MultiMaternSpec(
        (1.5, 1.5),
        1.0,
        np.array([[1.0, 0.3], [0.3, 1.0]]),
        (1.0, 1.0),
        ck.shift_matrix(2, 0.5),
    )
    sigma = ck.build_multi_matern(grid, spec)
    obs_idx = tuple((1, i) for i in range(1, sigma.n + 1, 2)) + tuple(
        (2, i) for i in range(1, sigma.n + 1)
    )
    y = rng.standard_normal(len(obs_idx))
    obs = ck.ObservationSet(obs_idx, y, ck.NoiseSpec(0.0))
    targets = tuple((l, i) for l in (1, 2) for i in range(1, sigma.n + 1))
    result = ck.predict(sigma, obs, targets)
    by_target = dict(zip(targets, range(len(targets))))
    exact_mean = max(
        abs(result.mean[by_target[t]] - y[j]) for j, t in enumerate(obs_idx)
    )
    exact_var = max(result.variance[by_target[t]] for t in obs_idx)
    prior = np.array(
        [sigma.entries[sigma.flat_index(l, i), sigma.flat_index(l, i)] for l, i in targets]
    )
    shrinks = bool(np.all(result.variance <= prior + 1e-8))
    passed = exact_mean <= 1e-8 and exact_var <= 1e-8 and shrinks
    report(
        9,
        "noiseless sites interpolated, variance shrinks",
        passed,
        f"mean err={exact_mean:.1e}, var at obs={exact_var:.1e}",
    )


def test_criterion_10_determinism(tmp_path):
    digests = []
    for tag in ("first", "second"):
        out = tmp_path / tag
        code = cli_main(
            [
                "experiment",
                "--config",
                str(CONFIGS / "experiment_1d.toml"),
                "--out",
                str(out),
                "--set",
                "experiment.n_seeds=2",
            ]
        )
        assert code == 0
        digests.append({p.name: p.read_bytes() for p in out.iterdir()})
    passed = digests[0] == digests[1]
    report(10, "identical config and seed give identical bytes", passed,
           f"files={len(digests[0])}")
