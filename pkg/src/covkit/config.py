"""TOML config parsing, validation, and lossless serialization of model specs.

A config file has a [grid] section, a [model] section naming the family, and
one section per model family.  Command-specific sections ([simulate],
[empirical], [predict], [experiment]) are consumed by the CLI.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .builders import (
    BFunc,
    CressieSpec,
    IntrinsicSpec,
    KernelConvSpec,
    MardiaSpec,
    MaternCov,
    ModelSpec,
    MultiMaternSpec,
)
from .core import LocationGrid
from .errors import CovkitError, InvalidSpec, ParseError
from .kernels import GaussKernelParams, MaternParams, Shift, shift_matrix

FAMILY_SECTIONS = ("intrinsic", "kernel_conv", "multi_matern", "mardia", "cressie")


class ConfigErrors(CovkitError):
    """Aggregate of every violation found while validating a config."""

    code = "invalid-spec"

    def __init__(self, messages):
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


def load_toml(path: str | Path) -> dict:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ParseError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        # tomllib reports "... (at line L, column C)" in its message
        raise ParseError(f"{path}: {exc}") from None


def apply_overrides(doc: dict, overrides) -> dict:
    """Apply dotted key=value overrides before validation."""
    for item in overrides:
        key, sep, raw = item.partition("=")
        if not sep:
            raise ParseError(f"override {item!r} is not of the form key=value")
        try:
            parsed = tomllib.loads(f"v = {raw}")["v"]
        except tomllib.TOMLDecodeError:
            parsed = raw
        node = doc
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ParseError(f"override path {key!r} crosses a non-table value")
        node[parts[-1]] = parsed
    return doc


def _nu_value(raw):
    if raw in ("inf", "Infinity"):
        return math.inf
    return float(raw)


def parse_grid(doc: dict, errors: list[str]) -> LocationGrid | None:
    section = doc.get("grid")
    if not isinstance(section, dict):
        errors.append("grid: section missing")
        return None
    try:
        if "coords" in section:
            return LocationGrid(np.asarray(section["coords"], dtype=float))
        return LocationGrid.regular(
            float(section["start"]), float(section["stop"]), float(section["step"])
        )
    except (KeyError, TypeError, ValueError, InvalidSpec) as exc:
        errors.append(f"grid: {exc}")
        return None


def _parse_shifts(section: dict, p: int, errors: list[str], prefix: str) -> np.ndarray:
    if "shifts" in section:
        shifts = np.asarray(section["shifts"], dtype=float)
        if shifts.shape != (p, p):
            errors.append(f"{prefix}.shifts: must be a {p}x{p} matrix")
            return np.zeros((p, p))
        if np.any(np.diag(shifts) != 0.0):
            errors.append(f"{prefix}.shifts: diagonal must be zero")
        return shifts
    return shift_matrix(p, float(section.get("shift", 0.0)))


def _parse_intrinsic(section: dict, errors: list[str]) -> IntrinsicSpec | None:
    try:
        params = MaternParams(_nu_value(section["nu"]), float(section["kappa"]))
        return IntrinsicSpec(params, np.asarray(section["V"], dtype=float))
    except KeyError as exc:
        errors.append(f"intrinsic: missing field {exc}")
    except (TypeError, ValueError, CovkitError) as exc:
        errors.append(f"intrinsic: {exc}")
    return None


def _parse_kernel_conv(section: dict, errors: list[str]) -> KernelConvSpec | None:
    ok = True
    bandwidths = section.get("bandwidths")
    if not bandwidths:
        errors.append("kernel_conv: bandwidths missing or empty")
        ok = False
    amplitudes = section.get("amplitudes", [1.0] * len(bandwidths or []))
    if bandwidths and len(amplitudes) != len(bandwidths):
        errors.append("kernel_conv: amplitudes length must match bandwidths")
        ok = False
    for name, value in (("rho_nu", section.get("rho_nu")), ("rho_kappa", section.get("rho_kappa"))):
        if value is None:
            errors.append(f"kernel_conv: {name} missing")
            ok = False
    if not ok:
        return None
    p = len(bandwidths)
    shifts = _parse_shifts(section, p, errors, "kernel_conv")
    try:
        kernels = tuple(
            GaussKernelParams(float(b), float(a))
            for b, a in zip(bandwidths, amplitudes)
        )
        rho = MaternParams(_nu_value(section["rho_nu"]), float(section["rho_kappa"]))
        return KernelConvSpec(kernels, rho, shifts)
    except (TypeError, ValueError, CovkitError) as exc:
        errors.append(f"kernel_conv: {exc}")
        return None


def _parse_multi_matern(section: dict, errors: list[str]) -> MultiMaternSpec | None:
    ok = True
    for name in ("nus", "kappa", "betas", "marginal_sds"):
        if name not in section:
            errors.append(f"multi_matern: {name} missing")
            ok = False
    if not ok:
        return None
    kappa = float(section["kappa"])
    if kappa <= 0:
        errors.append("multi_matern: kappa must be positive (invariant kappa > 0)")
    nus = [_nu_value(v) for v in section["nus"]]
    p = len(nus)
    shifts = _parse_shifts(section, p, errors, "multi_matern")
    if errors:
        # shift diagonal / kappa problems already recorded; still try to build
        pass
    try:
        return MultiMaternSpec(
            tuple(nus),
            kappa,
            np.asarray(section["betas"], dtype=float),
            tuple(float(v) for v in section["marginal_sds"]),
            shifts,
        )
    except (TypeError, ValueError, CovkitError) as exc:
        errors.append(f"multi_matern: {exc}")
        return None


def _parse_mardia(section: dict, errors: list[str]) -> MardiaSpec | None:
    try:
        gammas = tuple(np.asarray(g, dtype=float) for g in section["gammas"])
        neighbors: dict[int, set[int]] = {}
        for i, j in section.get("neighbors", []):
            neighbors.setdefault(int(i), set()).add(int(j))
            neighbors.setdefault(int(j), set()).add(int(i))
        betas = {}
        for entry in section.get("beta", []):
            betas[(int(entry["i"]), int(entry["j"]))] = np.asarray(
                entry["matrix"], dtype=float
            )
        mus = None
        if "mus" in section:
            mus = tuple(np.asarray(m, dtype=float) for m in section["mus"])
        return MardiaSpec(gammas, betas, {i: frozenset(js) for i, js in neighbors.items()}, mus)
    except KeyError as exc:
        errors.append(f"mardia: missing field {exc}")
    except (TypeError, ValueError, CovkitError) as exc:
        errors.append(f"mardia: {exc}")
    return None


def _parse_cressie(section: dict, errors: list[str]) -> CressieSpec | None:
    try:
        c11 = section["c11"]
        c11_cov = MaternCov(
            MaternParams(_nu_value(c11["nu"]), float(c11["kappa"])),
            float(c11["variance"]),
        )
        cond = {}
        for entry in section.get("cond", []):
            cond[int(entry["q"])] = MaternCov(
                MaternParams(_nu_value(entry["nu"]), float(entry["kappa"])),
                float(entry["variance"]),
            )
        b_funcs = {}
        for entry in section.get("b", []):
            b_funcs[(int(entry["q"]), int(entry["r"]))] = BFunc(
                float(entry["gain"]),
                float(entry["range"]),
                Shift(float(entry.get("shift", 0.0))),
            )
        return CressieSpec(c11_cov, cond, b_funcs, int(section.get("p", 2)))
    except KeyError as exc:
        errors.append(f"cressie: missing field {exc}")
    except (TypeError, ValueError, CovkitError) as exc:
        errors.append(f"cressie: {exc}")
    return None


_PARSERS = {
    "intrinsic": _parse_intrinsic,
    "kernel_conv": _parse_kernel_conv,
    "multi_matern": _parse_multi_matern,
    "mardia": _parse_mardia,
    "cressie": _parse_cressie,
}


def parse_model_spec(doc: dict, errors: list[str]) -> ModelSpec | None:
    model = doc.get("model", {})
    family = model.get("family")
    if family not in FAMILY_SECTIONS:
        errors.append(
            f"model.family must be one of {FAMILY_SECTIONS}, got {family!r}"
        )
        return None
    section = doc.get(family)
    if not isinstance(section, dict):
        errors.append(f"{family}: section missing")
        return None
    return _PARSERS[family](section, errors)


def validate_config(path: str | Path, overrides=()) -> tuple[LocationGrid, ModelSpec, dict]:
    """Parse and fully validate a config; raises ConfigErrors with every
    violation found, or ParseError for malformed TOML."""
    doc = apply_overrides(load_toml(path), overrides)
    errors: list[str] = []
    grid = parse_grid(doc, errors)
    spec = parse_model_spec(doc, errors)
    if errors or grid is None or spec is None:
        raise ConfigErrors(errors or ["config invalid"])
    return grid, spec, doc


# ---------------------------------------------------------------------------
# serialization


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def _fmt_array(arr) -> str:
    arr = np.asarray(arr)
    if arr.ndim == 1:
        return "[" + ", ".join(_fmt(v) for v in arr) + "]"
    return "[" + ", ".join(_fmt_array(row) for row in arr) + "]"


def serialize_model_spec(spec: ModelSpec, grid: LocationGrid | None = None) -> str:
    """Render a spec (and optionally a grid) back to config TOML.

    Round-trips losslessly: floats use shortest-repr formatting.
    """
    lines = []
    if grid is not None:
        lines += ["[grid]", f"coords = {_fmt_array(grid.coords)}", ""]
    if isinstance(spec, IntrinsicSpec):
        lines += [
            "[model]",
            'family = "intrinsic"',
            "",
            "[intrinsic]",
            f"nu = {_fmt(spec.rho_params.nu)}",
            f"kappa = {_fmt(spec.rho_params.kappa)}",
            f"V = {_fmt_array(spec.V)}",
        ]
    elif isinstance(spec, KernelConvSpec):
        lines += [
            "[model]",
            'family = "kernel_conv"',
            "",
            "[kernel_conv]",
            f"bandwidths = {_fmt_array([k.bandwidth for k in spec.kernels])}",
            f"amplitudes = {_fmt_array([k.amplitude for k in spec.kernels])}",
            f"rho_nu = {_fmt(spec.rho_params.nu)}",
            f"rho_kappa = {_fmt(spec.rho_params.kappa)}",
            f"shifts = {_fmt_array(spec.shifts)}",
        ]
    elif isinstance(spec, MultiMaternSpec):
        lines += [
            "[model]",
            'family = "multi_matern"',
            "",
            "[multi_matern]",
            f"nus = {_fmt_array(spec.nus)}",
            f"kappa = {_fmt(spec.kappa)}",
            f"betas = {_fmt_array(spec.betas)}",
            f"marginal_sds = {_fmt_array(spec.marginal_sds)}",
            f"shifts = {_fmt_array(spec.shifts)}",
        ]
    elif isinstance(spec, MardiaSpec):
        pairs = sorted(
            {tuple(sorted((i, j))) for i, js in spec.neighborhoods.items() for j in js}
        )
        lines += [
            "[model]",
            'family = "mardia"',
            "",
            "[mardia]",
            f"gammas = {_fmt_array(np.stack(spec.Gammas))}",
            f"neighbors = {_fmt_array(np.array(pairs))}" if pairs else "neighbors = []",
        ]
        if spec.mus is not None:
            lines.append(f"mus = {_fmt_array(np.stack(spec.mus))}")
        for (i, j), b in sorted(spec.betas.items()):
            lines += [
                "",
                "[[mardia.beta]]",
                f"i = {i}",
                f"j = {j}",
                f"matrix = {_fmt_array(b)}",
            ]
    elif isinstance(spec, CressieSpec):
        lines += [
            "[model]",
            'family = "cressie"',
            "",
            "[cressie]",
            f"p = {spec.p}",
            "",
            "[cressie.c11]",
            f"nu = {_fmt(spec.c11.params.nu)}",
            f"kappa = {_fmt(spec.c11.params.kappa)}",
            f"variance = {_fmt(spec.c11.variance)}",
        ]
        for q in sorted(spec.cond):
            cov = spec.cond[q]
            lines += [
                "",
                "[[cressie.cond]]",
                f"q = {q}",
                f"nu = {_fmt(cov.params.nu)}",
                f"kappa = {_fmt(cov.params.kappa)}",
                f"variance = {_fmt(cov.variance)}",
            ]
        for (q, r), b in sorted(spec.b_funcs.items()):
            lines += [
                "",
                "[[cressie.b]]",
                f"q = {q}",
                f"r = {r}",
                f"gain = {_fmt(b.gain)}",
                f"range = {_fmt(b.range_)}",
                f"shift = {_fmt(b.shift.delta)}",
            ]
    else:
        raise InvalidSpec(f"cannot serialize {type(spec).__name__}")
    return "\n".join(lines) + "\n"
