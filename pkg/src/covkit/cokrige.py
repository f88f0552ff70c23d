"""Gaussian conditional prediction (co-kriging) and the 1D experiment runner.

The experiment simulates a tri-variate field from a conditional-model
covariance with nonzero lag shifts, holds out the first sites of field 1,
and compares prediction accuracy under the shift-aware covariance versus the
same covariance with every shift forced to zero.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .builders import CressieSpec, ModelSpec, build_cressie
from .core import JointCovariance, LocationGrid
from .errors import (
    EmptyObservations,
    IndexOutOfRange,
    InvalidSpec,
    LengthMismatch,
    SingularSystem,
)
from .simulate import FieldSample, NoiseSpec, sample

# keeps the nugget noise stream disjoint from the field-simulation stream
NOISE_SEED_OFFSET = 2**32


@dataclass(frozen=True)
class ObservationSet:
    """Observed (component, site) pairs (1-based), their values, and noise."""

    indices: tuple[tuple[int, int], ...]
    values: np.ndarray
    noise: NoiseSpec

    def __post_init__(self):
        indices = tuple((int(l), int(i)) for l, i in self.indices)
        if len(set(indices)) != len(indices):
            raise InvalidSpec("observation indices must be unique")
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(indices),):
            raise LengthMismatch(
                f"{len(indices)} indices but {values.shape} values"
            )
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class PredictionResult:
    targets: tuple[tuple[int, int], ...]
    mean: np.ndarray
    variance: np.ndarray
    mae: float | None = None
    rmse: float | None = None

    @property
    def sd(self) -> np.ndarray:
        return np.sqrt(self.variance)


def metrics(pred, truth) -> tuple[float, float]:
    """Mean absolute error and root mean squared error."""
    pred = np.asarray(pred, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if pred.shape != truth.shape or pred.size < 1:
        raise LengthMismatch(f"shapes {pred.shape} vs {truth.shape}")
    err = pred - truth
    return float(np.mean(np.abs(err))), float(np.sqrt(np.mean(err**2)))


class Predictor:
    """Gaussian conditioning with the observation system factored once."""

    def __init__(
        self,
        sigma: JointCovariance,
        obs_indices,
        tau2: float,
        targets,
    ):
        if not obs_indices:
            raise EmptyObservations("no observations supplied")
        self.obs_flat = np.array(
            [sigma.flat_index(l, i) for l, i in obs_indices]
        )
        self.target_flat = np.array(
            [sigma.flat_index(l, i) for l, i in targets]
        )
        entries = sigma.entries
        K = entries[np.ix_(self.obs_flat, self.obs_flat)] + tau2 * np.eye(
            self.obs_flat.size
        )
        sigma_to = entries[np.ix_(self.target_flat, self.obs_flat)]
        try:
            cK = cho_factor(K, lower=True)
        except np.linalg.LinAlgError:
            jitter = 1e-10 * np.trace(K) / K.shape[0]
            try:
                cK = cho_factor(K + jitter * np.eye(K.shape[0]), lower=True)
            except np.linalg.LinAlgError:
                raise SingularSystem(
                    "observation covariance system is singular"
                ) from None
        self.cK = cK
        self.gain = cho_solve(cK, sigma_to.T).T  # Sigma_to @ K^-1
        prior_var = np.diag(entries)[self.target_flat]
        var = prior_var - np.sum(self.gain * sigma_to, axis=1)
        if np.any(var < -1e-10):
            raise SingularSystem(
                f"posterior variance {np.min(var):.3e} below tolerance"
            )
        self.variance = np.clip(var, 0.0, None)
        self.prior_variance = prior_var

    def posterior_mean(
        self, y: np.ndarray, prior_mean: np.ndarray | None = None
    ) -> np.ndarray:
        if prior_mean is None:
            return self.gain @ y
        mu_o = prior_mean[self.obs_flat]
        mu_t = prior_mean[self.target_flat]
        return mu_t + self.gain @ (y - mu_o)


def predict(
    sigma: JointCovariance,
    obs: ObservationSet,
    targets,
    prior_mean: np.ndarray | None = None,
    truth=None,
) -> PredictionResult:
    """Posterior mean and variance at the target (component, site) pairs.

    mean = Sigma_to (Sigma_oo + tau2 I)^-1 y under a zero (or given) prior
    mean; variances are clamped at zero.  When truth is supplied, MAE and
    RMSE against it are attached.
    """
    targets = tuple((int(l), int(i)) for l, i in targets)
    for l, i in targets:
        if not (1 <= l <= sigma.p and 1 <= i <= sigma.n):
            raise IndexOutOfRange(f"target ({l},{i}) outside (p={sigma.p}, n={sigma.n})")
    predictor = Predictor(sigma, obs.indices, obs.noise.tau2, targets)
    mean = predictor.posterior_mean(obs.values, prior_mean)
    mae = rmse = None
    if truth is not None:
        mae, rmse = metrics(mean, truth)
    return PredictionResult(targets, mean, predictor.variance, mae, rmse)


# ---------------------------------------------------------------------------
# experiment runner


@dataclass(frozen=True)
class ExperimentConfig:
    """Replica of the 1D tri-variate prediction comparison.

    Field `target_field` at sites `target_sites` is held out; every other
    (component, site) entry is observed with nugget noise.  The with-shift
    model reuses the true spec; the without-shift model zeroes every shift.
    """

    grid: LocationGrid
    true_spec: CressieSpec
    seeds: tuple[int, ...]
    target_field: int = 1
    target_sites: tuple[int, ...] = tuple(range(1, 51))
    noise: NoiseSpec | None = None
    fitted_with: ModelSpec | None = None
    fitted_without: ModelSpec | None = None

    def __post_init__(self):
        if not self.seeds:
            raise InvalidSpec("at least one seed required")
        if not self.target_sites:
            raise InvalidSpec("target set must be non-empty")
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        object.__setattr__(self, "target_sites", tuple(int(i) for i in self.target_sites))

    @classmethod
    def replica_1d(cls, true_spec: CressieSpec, seeds, **kwargs) -> "ExperimentConfig":
        """Domain [-10, 10) at step 0.1: 200 sites, p = 3."""
        grid = LocationGrid.regular(-10.0, 10.0, 0.1)
        return cls(grid=grid, true_spec=true_spec, seeds=tuple(seeds), **kwargs)


@dataclass(frozen=True)
class SeedTrace:
    seed: int
    sites: np.ndarray
    truth: np.ndarray
    mean_with: np.ndarray
    mean_without: np.ndarray
    sd_with: np.ndarray
    sd_without: np.ndarray


@dataclass(frozen=True)
class ExperimentResult:
    rows: tuple[tuple[int, str, float, float], ...]  # (seed, model, mae, rmse)
    summary: tuple[tuple[str, float, float, float], ...]  # (model, mean_mae, mean_rmse, win_rate)
    traces: tuple[SeedTrace, ...] = field(default=(), repr=False)

    def mean_mae(self, model: str) -> float:
        for name, mae, _, _ in self.summary:
            if name == model:
                return mae
        raise KeyError(model)

    def win_rate(self, model: str) -> float:
        for name, _, _, rate in self.summary:
            if name == model:
                return rate
        raise KeyError(model)


MODEL_WITH = "with-shift"
MODEL_WITHOUT = "without-shift"


def _build_fitted(grid: LocationGrid, spec: ModelSpec) -> JointCovariance:
    if isinstance(spec, CressieSpec):
        return build_cressie(grid, spec)
    raise InvalidSpec(f"experiment runner supports Cressie specs, got {type(spec).__name__}")


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Simulate truth per seed and compare shift-aware vs shift-free kriging."""
    grid = cfg.grid
    sigma_true = _build_fitted(grid, cfg.true_spec)
    spec_with = cfg.fitted_with if cfg.fitted_with is not None else cfg.true_spec
    spec_without = (
        cfg.fitted_without
        if cfg.fitted_without is not None
        else cfg.true_spec.without_shifts()
    )
    sigma_with = _build_fitted(grid, spec_with)
    sigma_without = _build_fitted(grid, spec_without)

    noise = cfg.noise if cfg.noise is not None else NoiseSpec.default_for(sigma_true)

    p, n = sigma_true.p, sigma_true.n
    targets = tuple((cfg.target_field, i) for i in cfg.target_sites)
    target_set = set(targets)
    observed = tuple(
        (l, i)
        for l in range(1, p + 1)
        for i in range(1, n + 1)
        if (l, i) not in target_set
    )

    pred_with = Predictor(sigma_with, observed, noise.tau2, targets)
    pred_without = Predictor(sigma_without, observed, noise.tau2, targets)

    rows, traces = [], []
    sites = np.array(cfg.target_sites)
    for seed in cfg.seeds:
        truth = sample(sigma_true, seed=seed, grid=grid)
        noisy = _noisy_observations(truth, observed, noise, seed)
        truth_targets = np.array(
            [truth.values[l - 1, i - 1] for l, i in targets]
        )
        mean_w = pred_with.posterior_mean(noisy)
        mean_wo = pred_without.posterior_mean(noisy)
        mae_w, rmse_w = metrics(mean_w, truth_targets)
        mae_wo, rmse_wo = metrics(mean_wo, truth_targets)
        rows.append((seed, MODEL_WITH, mae_w, rmse_w))
        rows.append((seed, MODEL_WITHOUT, mae_wo, rmse_wo))
        traces.append(
            SeedTrace(
                seed,
                sites,
                truth_targets,
                mean_w,
                mean_wo,
                np.sqrt(pred_with.variance),
                np.sqrt(pred_without.variance),
            )
        )

    summary = []
    for model in (MODEL_WITH, MODEL_WITHOUT):
        other = MODEL_WITHOUT if model == MODEL_WITH else MODEL_WITH
        own = {seed: (mae, rmse) for seed, name, mae, rmse in rows if name == model}
        theirs = {seed: mae for seed, name, mae, _ in rows if name == other}
        maes = np.array([own[s][0] for s in cfg.seeds])
        rmses = np.array([own[s][1] for s in cfg.seeds])
        wins = np.mean([own[s][0] < theirs[s] for s in cfg.seeds])
        summary.append((model, float(np.mean(maes)), float(np.mean(rmses)), float(wins)))

    return ExperimentResult(tuple(rows), tuple(summary), tuple(traces))


def _noisy_observations(
    truth: FieldSample, observed, noise: NoiseSpec, seed: int
) -> np.ndarray:
    values = np.array([truth.values[l - 1, i - 1] for l, i in observed])
    if noise.tau2 > 0:
        rng = np.random.Generator(np.random.Philox(seed + NOISE_SEED_OFFSET))
        values = values + rng.normal(0.0, np.sqrt(noise.tau2), size=values.size)
    return values


# ---------------------------------------------------------------------------
# CSV artifacts


def write_experiment_csvs(result: ExperimentResult, outdir: str | Path) -> list[Path]:
    """experiment.csv, summary.csv, and one trace CSV per seed."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []

    path = outdir / "experiment.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["seed", "model", "mae", "rmse"])
        for seed, model, mae, rmse in result.rows:
            writer.writerow([seed, model, repr(mae), repr(rmse)])
    paths.append(path)

    path = outdir / "summary.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["model", "mean_mae", "mean_rmse", "win_rate"])
        for model, mae, rmse, rate in result.summary:
            writer.writerow([model, repr(mae), repr(rmse), repr(rate)])
    paths.append(path)

    for trace in result.traces:
        path = outdir / f"trace_seed{trace.seed}.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ["site", "truth", "mean_with_shift", "mean_without_shift", "sd_with_shift", "sd_without_shift"]
            )
            for idx in range(trace.sites.size):
                writer.writerow(
                    [
                        int(trace.sites[idx]),
                        repr(float(trace.truth[idx])),
                        repr(float(trace.mean_with[idx])),
                        repr(float(trace.mean_without[idx])),
                        repr(float(trace.sd_with[idx])),
                        repr(float(trace.sd_without[idx])),
                    ]
                )
        paths.append(path)
    return paths
