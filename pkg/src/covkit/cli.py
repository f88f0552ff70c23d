"""covkit command-line front end.

Usage: covkit <command> --config <path> --out <dir> [--seed <u64>]
       [--set key=value ...]

Commands: build-cov, simulate, empirical-corr, diagnose, predict, experiment.
Exit codes: 0 success, 1 usage error, 2 validation error (one machine-parsable
reason line on stderr).  Every file written lands in the output directory and
is listed in manifest.txt there.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .builders import (
    CressieSpec,
    IntrinsicSpec,
    KernelConvSpec,
    MardiaSpec,
    MultiMaternSpec,
    build_cressie,
    build_intrinsic,
    build_kernel_conv,
    build_mardia_precision,
    build_multi_matern,
)
from .cokrige import (
    ExperimentConfig,
    ObservationSet,
    predict as cokrige_predict,
    run_experiment,
    write_experiment_csvs,
    _noisy_observations,
)
from .config import ConfigErrors, validate_config
from .core import JointCovariance, LocationGrid, save_covariance
from .diagnostics import (
    check_properties,
    cov_to_corr,
    empirical_correlation,
    write_corr_strips,
)
from .errors import CovkitError, ParseError, SymmetryConditionViolated
from .simulate import NoiseSpec, add_noise, sample, sample_replicates, write_field_sample

COMMANDS = (
    "build-cov",
    "simulate",
    "empirical-corr",
    "diagnose",
    "predict",
    "experiment",
)


def build_model(grid: LocationGrid, spec, section: dict) -> JointCovariance:
    """Dispatch a parsed spec to its builder (precision dropped for Mardia)."""
    if isinstance(spec, IntrinsicSpec):
        return build_intrinsic(grid, spec)
    if isinstance(spec, KernelConvSpec):
        method = section.get("method")
        if method is None:
            method = "closed-form" if spec.rho_params.nu == math.inf else "quadrature"
        return build_kernel_conv(grid, spec, method=method)
    if isinstance(spec, MultiMaternSpec):
        return build_multi_matern(grid, spec)
    if isinstance(spec, MardiaSpec):
        return build_mardia_precision(grid, spec)[1]
    if isinstance(spec, CressieSpec):
        return build_cressie(grid, spec)
    raise ConfigErrors([f"no builder for {type(spec).__name__}"])


def _noise_from(section: dict, sigma: JointCovariance) -> NoiseSpec:
    if "tau2" in section:
        return NoiseSpec(float(section["tau2"]))
    return NoiseSpec.default_for(sigma)


def _target_sites(section: dict, n: int) -> tuple[int, ...]:
    if "target_sites" in section:
        return tuple(int(i) for i in section["target_sites"])
    lo, hi = section.get("target_sites_range", [1, min(50, n)])
    return tuple(range(int(lo), int(hi) + 1))


def _write_manifest(outdir: Path, paths: list[Path]) -> None:
    manifest = outdir / "manifest.txt"
    names = sorted(p.name for p in paths) + ["manifest.txt"]
    manifest.write_text("".join(name + "\n" for name in names))


def cmd_build_cov(grid, spec, doc, outdir: Path, seed: int | None) -> list[Path]:
    section = doc.get(doc["model"]["family"], {})
    written = []
    if isinstance(spec, MardiaSpec):
        precision, sigma = build_mardia_precision(grid, spec)
        path = outdir / "precision.csv"
        np.savetxt(path, precision, delimiter=",", fmt="%.17g")
        written.append(path)
    else:
        sigma = build_model(grid, spec, section)
    written += save_covariance(sigma, outdir / "covariance.csv")
    return written


def cmd_simulate(grid, spec, doc, outdir: Path, seed: int | None) -> list[Path]:
    section = doc.get("simulate", {})
    sigma = build_model(grid, spec, doc.get(doc["model"]["family"], {}))
    base_seed = seed if seed is not None else int(section.get("seed", 0))
    count = int(section.get("replicates", 1))
    tau2 = section.get("tau2")
    written = []
    for idx, replicate in enumerate(
        sample_replicates(sigma, count, base_seed=base_seed, grid=grid), start=1
    ):
        if tau2 is not None:
            replicate = add_noise(
                replicate, NoiseSpec(float(tau2)), seed=replicate.seed + 1
            )
        written.append(
            write_field_sample(replicate, outdir / f"sample_{idx:04d}.csv")
        )
    return written


def cmd_empirical_corr(grid, spec, doc, outdir: Path, seed: int | None) -> list[Path]:
    section = doc.get("empirical", {})
    sigma = build_model(grid, spec, doc.get(doc["model"]["family"], {}))
    base_seed = seed if seed is not None else int(section.get("seed", 0))
    count = int(section.get("replicates", 1000))
    replicates = sample_replicates(sigma, count, base_seed=base_seed, grid=grid)
    corr = empirical_correlation(replicates)
    written = []
    path = outdir / "empirical_corr.csv"
    np.savetxt(path, corr.entries, delimiter=",", fmt="%.17g")
    meta = outdir / "empirical_corr.csv.meta"
    meta.write_text(f"n={corr.n}\np={corr.p}\nordering={corr.ordering.value}\n")
    written += [path, meta]
    if "strips" in section:
        strips = [tuple(int(v) for v in strip) for strip in section["strips"]]
        pair = tuple(int(v) for v in section.get("pair", [1, min(2, corr.p)]))
        written += write_corr_strips(corr, strips, pair, outdir)
    return written


def cmd_diagnose(grid, spec, doc, outdir: Path, seed: int | None) -> list[Path]:
    sigma = build_model(grid, spec, doc.get(doc["model"]["family"], {}))
    report = check_properties(cov_to_corr(sigma))
    path = outdir / "report.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["check", "passed", "witness"])
        for check in report.checks:
            writer.writerow([check.name, str(check.passed).lower(), check.witness])
    asym = outdir / "asymmetry.csv"
    with asym.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["l", "k", "asymmetry_index"])
        for (l, k), value in sorted(report.cross_asymmetry.items()):
            writer.writerow([l, k, repr(value)])
    return [path, asym]


def cmd_predict(grid, spec, doc, outdir: Path, seed: int | None) -> list[Path]:
    section = doc.get("predict", {})
    sigma = build_model(grid, spec, doc.get(doc["model"]["family"], {}))
    run_seed = seed if seed is not None else int(section.get("seed", 0))
    noise = _noise_from(section, sigma)
    target_field = int(section.get("target_field", 1))
    sites = _target_sites(section, sigma.n)
    targets = tuple((target_field, i) for i in sites)
    target_set = set(targets)
    observed = tuple(
        (l, i)
        for l in range(1, sigma.p + 1)
        for i in range(1, sigma.n + 1)
        if (l, i) not in target_set
    )
    truth = sample(sigma, seed=run_seed, grid=grid)
    y = _noisy_observations(truth, observed, noise, run_seed)
    obs = ObservationSet(observed, y, noise)
    truth_targets = np.array([truth.values[l - 1, i - 1] for l, i in targets])
    result = cokrige_predict(sigma, obs, targets, truth=truth_targets)
    path = outdir / "predictions.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["component", "site", "coordinate", "truth", "mean", "sd"])
        for idx, (l, i) in enumerate(targets):
            writer.writerow(
                [
                    l,
                    i,
                    repr(float(grid.coords[i - 1])),
                    repr(float(truth_targets[idx])),
                    repr(float(result.mean[idx])),
                    repr(float(result.sd[idx])),
                ]
            )
    summary = outdir / "metrics.csv"
    with summary.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["mae", "rmse"])
        writer.writerow([repr(result.mae), repr(result.rmse)])
    return [path, summary]


def cmd_experiment(grid, spec, doc, outdir: Path, seed: int | None) -> list[Path]:
    if not isinstance(spec, CressieSpec):
        raise ConfigErrors(["experiment requires a cressie model spec"])
    section = doc.get("experiment", {})
    if "seeds" in section:
        seeds = tuple(int(s) for s in section["seeds"])
    else:
        base = seed if seed is not None else int(section.get("base_seed", 0))
        seeds = tuple(range(base, base + int(section.get("n_seeds", 20))))
    kwargs = {}
    if "tau2" in section:
        kwargs["noise"] = NoiseSpec(float(section["tau2"]))
    cfg = ExperimentConfig(
        grid=grid,
        true_spec=spec,
        seeds=seeds,
        target_field=int(section.get("target_field", 1)),
        target_sites=_target_sites(section, grid.n),
        **kwargs,
    )
    result = run_experiment(cfg)
    return write_experiment_csvs(result, outdir)


_HANDLERS = {
    "build-cov": cmd_build_cov,
    "simulate": cmd_simulate,
    "empirical-corr": cmd_empirical_corr,
    "diagnose": cmd_diagnose,
    "predict": cmd_predict,
    "experiment": cmd_experiment,
}


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covkit",
        description="Multivariate spatial covariance toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True)
        cmd.add_argument("--out", required=True)
        cmd.add_argument("--seed", type=int, default=None)
        cmd.add_argument(
            "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE"
        )
    return parser


def _error_reason(exc: CovkitError) -> str:
    if isinstance(exc, SymmetryConditionViolated) and exc.pair is not None:
        return f"{exc.code} pair=({exc.pair[0]},{exc.pair[1]})"
    return f"{exc.code} {exc}"


def main(argv=None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; the contract reserves 2 for
        # validation failures
        return 0 if exc.code in (0, None) else 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1

    try:
        grid, spec, doc = validate_config(args.config, args.overrides)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        written = _HANDLERS[args.command](grid, spec, doc, outdir, args.seed)
        _write_manifest(outdir, written)
    except ConfigErrors as exc:
        for message in exc.messages:
            print(f"{exc.code} {message}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"{exc.code} {exc}", file=sys.stderr)
        return 2
    except CovkitError as exc:
        print(_error_reason(exc), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
