"""Reproducible sweep runs: configs, parameter grids, CSV emission.

A run is defined by a flat key = value config (one assignment per line,
'#' comments) naming the base parameters plus a sweep axis.  Every output
row carries the resolved inputs needed to reproduce it, numbers are
written with 17 significant digits and no timestamps enter the data, so
identical configs yield bit-identical files.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dynamics import DriveSpec, SteadyStateError, apply_drive, steady_state
from .model import ParameterError, SecularReport, SystemParams, validate_secular
from .observables import (
    AmplificationResult,
    HeatCurrentTriple,
    amplification_factor,
    heat_currents,
)

SWEEP_AXES = (
    "T_L", "T_M", "T_R",
    "lambda1", "lambda2", "lambda3",
    "g", "gamma_bias", "rho44_init",
)

DEFAULT_OUTPUTS = ("currents", "alpha", "populations")

CSV_HEADER = (
    "axis_value,Q_L,Q_M,Q_R,alpha_L,alpha_R,"
    + ",".join(f"rho_{k}{k}" for k in range(1, 9))
    + ",secular_flag,error"
)


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


class DarkStateError(ParameterError):
    """Operation requires the fully common coupling lambda = (1, 1, 1)."""


def fmt(value: float) -> str:
    """17-significant-digit scientific notation (round-trip exact)."""
    return f"{value:.16e}"


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional parameter sweep around a base parameter set."""

    base: SystemParams
    axis: str
    lo: float
    hi: float
    points: int
    control: str = "M"
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS
    rho44_init: float | None = None

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ConfigError(f"unknown sweep axis {self.axis!r}; expected one of {SWEEP_AXES}")
        if not self.lo < self.hi:
            raise ConfigError("sweep range must satisfy lo < hi")
        if self.points < 2:
            raise ConfigError("a sweep needs at least 2 points")
        if self.control not in ("L", "M", "R"):
            raise ConfigError("control terminal must be 'L', 'M' or 'R'")
        unknown = set(self.outputs) - set(DEFAULT_OUTPUTS)
        if unknown:
            raise ConfigError(f"unknown outputs {sorted(unknown)}")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)

    def resolve(self, value: float) -> tuple[SystemParams, float | None]:
        """Parameters and dark-state pin at one grid point."""
        base = self.base
        rho44 = self.rho44_init
        if self.axis == "gamma_bias":
            params = base.replace(gamma_L=value * base.gamma_M,
                                  gamma_R=value * base.gamma_M)
        elif self.axis == "rho44_init":
            params = base
            rho44 = value
        else:
            params = base.replace(**{self.axis: value})
        if not params.fully_common:
            rho44 = None
        return params, rho44


@dataclass(frozen=True)
class RunRecord:
    """One fully resolved sweep point with everything needed to re-run it."""

    axis_value: float
    params: SystemParams
    rho44_init: float | None
    populations: np.ndarray | None
    currents: HeatCurrentTriple | None
    amplification: AmplificationResult | None
    secular: SecularReport | None
    wall_time: float
    error: str | None = None


def _run_point(args: tuple[SweepSpec, float]) -> RunRecord:
    spec, value = args
    t0 = time.perf_counter()
    params, rho44 = spec.resolve(value)
    secular = validate_secular(params)
    populations = currents = amplification = None
    error = None
    try:
        if params.fully_common and rho44 is None:
            raise SteadyStateError(
                "fully common coupling requires rho44_init in the config"
            )
        populations = steady_state(params, rho44_init=rho44)
        if "currents" in spec.outputs:
            currents = heat_currents(params, populations)
        if "alpha" in spec.outputs:
            amplification = amplification_factor(
                params, control=spec.control, rho44_init=rho44
            )
    except Exception as exc:  # per-point failures are data, the run continues
        error = f"{type(exc).__name__}: {exc}"
    return RunRecord(
        axis_value=float(value),
        params=params,
        rho44_init=rho44,
        populations=populations,
        currents=currents,
        amplification=amplification,
        secular=secular,
        wall_time=time.perf_counter() - t0,
        error=error,
    )


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[RunRecord]:
    """Evaluate every grid point; output order always follows the grid."""
    jobs = [(spec, v) for v in spec.values()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_point, jobs))
    return [_run_point(job) for job in jobs]


def sweep_rows(records: list[RunRecord]) -> list[str]:
    rows = []
    for rec in records:
        cells = [fmt(rec.axis_value)]
        if rec.currents is not None:
            cells += [fmt(rec.currents.Q_L), fmt(rec.currents.Q_M), fmt(rec.currents.Q_R)]
        else:
            cells += ["", "", ""]
        if rec.amplification is not None:
            cells += [fmt(rec.amplification.alpha_L), fmt(rec.amplification.alpha_R)]
        else:
            cells += ["", ""]
        if rec.populations is not None:
            cells += [fmt(p) for p in rec.populations]
        else:
            cells += [""] * 8
        cells.append("PASS" if rec.secular is not None and rec.secular.passed else "WARN")
        cells.append("" if rec.error is None else rec.error.replace(",", ";"))
        rows.append(",".join(cells))
    return rows


def write_sweep_csv(records: list[RunRecord], path: str) -> None:
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in sweep_rows(records):
            fh.write(row + "\n")


@dataclass(frozen=True)
class ModulationReport:
    """Before/after picture of the dark-state heat modulation protocol."""

    rho44_before: float
    currents_before: HeatCurrentTriple
    times: np.ndarray            # one Rabi period of the driven pair
    rho44_trajectory: np.ndarray
    rho44_after: float
    currents_after: HeatCurrentTriple
    scale_factor: float          # measured Q_after / Q_before (common to all three)
    predicted_scale: float       # (1 - rho44_after) / (1 - rho44_before)


def run_modulation(
    params: SystemParams,
    drive: DriveSpec,
    rho44_initial: float,
    trajectory_points: int = 201,
) -> ModulationReport:
    """Drive the dark-state pair and report the re-relaxed heat currents.

    Requires the fully common coupling (the protocol manipulates the
    conserved dark population).  The pulse is unitary and instantaneous on
    dissipative timescales; after it the system relaxes back to the steady
    state of the new dark population, so the final currents follow from a
    steady-state solve rather than time integration.
    """
    if not params.fully_common:
        raise DarkStateError("modulation requires lambda1 = lambda2 = lambda3 = 1")
    p_before = steady_state(params, rho44_init=rho44_initial)
    q_before = heat_currents(params, p_before)

    period = math.pi / drive.Omega
    times = np.linspace(0.0, period, trajectory_points)
    a, b = drive.pair
    phases = drive.Omega * times
    rho44_traj = p_before[a] * np.cos(phases) ** 2 + p_before[b] * np.sin(phases) ** 2

    p_pulsed = apply_drive(p_before, drive)
    rho44_after = float(p_pulsed[a])
    p_after = steady_state(params, rho44_init=rho44_after)
    q_after = heat_currents(params, p_after)

    before = q_before.as_array()
    after = q_after.as_array()
    ref = int(np.argmax(np.abs(before)))
    scale = float(after[ref] / before[ref]) if before[ref] != 0 else math.nan
    predicted = (1.0 - rho44_after) / (1.0 - rho44_initial) if rho44_initial < 1 else math.nan
    return ModulationReport(
        rho44_before=float(rho44_initial),
        currents_before=q_before,
        times=times,
        rho44_trajectory=rho44_traj,
        rho44_after=rho44_after,
        currents_after=q_after,
        scale_factor=scale,
        predicted_scale=predicted,
    )


@dataclass(frozen=True)
class PopulationCurves:
    """Steady populations along a T_M sweep, plus a lambda1 comparison."""

    axis_values: np.ndarray
    populations: np.ndarray        # shape (points, 8), base lambda1
    populations_compare: np.ndarray  # same at the comparison lambda1
    compare_lambda1: float

    @property
    def difference(self) -> np.ndarray:
        return self.populations - self.populations_compare


def run_populations(
    params: SystemParams,
    lo: float,
    hi: float,
    points: int,
    compare_lambda1: float = 0.0,
    rho44_init: float | None = None,
) -> PopulationCurves:
    """Steady populations versus T_M for the base and a comparison lambda1."""
    if not lo < hi:
        raise ConfigError("population sweep range must satisfy lo < hi")
    if points < 2:
        raise ConfigError("population sweep needs at least 2 points")
    values = np.linspace(lo, hi, points)
    alt = params.replace(lambda1=compare_lambda1)
    pops = np.empty((points, 8))
    pops_cmp = np.empty((points, 8))
    for n, T_M in enumerate(values):
        pops[n] = steady_state(
            params.replace(T_M=float(T_M)),
            rho44_init=rho44_init if params.fully_common else None,
        )
        pops_cmp[n] = steady_state(
            alt.replace(T_M=float(T_M)),
            rho44_init=rho44_init if alt.fully_common else None,
        )
    return PopulationCurves(
        axis_values=values,
        populations=pops,
        populations_compare=pops_cmp,
        compare_lambda1=compare_lambda1,
    )


POPULATION_CSV_HEADER = (
    "axis_value,"
    + ",".join(f"rho_{k}{k}" for k in range(1, 9))
    + ","
    + ",".join(f"drho_{k}{k}" for k in range(1, 9))
)


def population_rows(curves: PopulationCurves) -> list[str]:
    diff = curves.difference
    rows = []
    for n, v in enumerate(curves.axis_values):
        cells = [fmt(v)]
        cells += [fmt(x) for x in curves.populations[n]]
        cells += [fmt(x) for x in diff[n]]
        rows.append(",".join(cells))
    return rows


def write_population_csv(curves: PopulationCurves, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(POPULATION_CSV_HEADER + "\n")
        for row in population_rows(curves):
            fh.write(row + "\n")


# ---------------------------------------------------------------------------
# flat key = value configs
# ---------------------------------------------------------------------------

_PARAM_KEYS = {
    "omega_L", "omega_M", "g",
    "lambda1", "lambda2", "lambda3",
    "T_L", "T_M", "T_R",
    "gamma", "gamma_L", "gamma_M", "gamma_R",
}
_RUN_KEYS = {
    "axis", "lo", "hi", "points", "control", "outputs", "rho44_init",
    "drive_Omega", "drive_duration", "compare_lambda1",
}


def parse_config(text: str) -> dict[str, str]:
    """Parse 'key = value' lines; '#' starts a comment, blanks ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"line {lineno}: empty key or value")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if key not in _PARAM_KEYS | _RUN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _get_float(cfg: dict[str, str], key: str, default: float | None = None) -> float:
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    try:
        return float(cfg[key])
    except ValueError:
        raise ConfigError(f"key {key!r} is not a number: {cfg[key]!r}") from None


def params_from_config(cfg: dict[str, str]) -> SystemParams:
    gamma_default = _get_float(cfg, "gamma") if "gamma" in cfg else None

    def gamma_of(key: str) -> float:
        if key in cfg:
            return _get_float(cfg, key)
        if gamma_default is None:
            raise ConfigError(f"missing {key!r} (or a common 'gamma')")
        return gamma_default

    try:
        return SystemParams(
            omega_L=_get_float(cfg, "omega_L"),
            omega_M=_get_float(cfg, "omega_M"),
            g=_get_float(cfg, "g"),
            T_L=_get_float(cfg, "T_L"),
            T_M=_get_float(cfg, "T_M"),
            T_R=_get_float(cfg, "T_R"),
            gamma_L=gamma_of("gamma_L"),
            gamma_M=gamma_of("gamma_M"),
            gamma_R=gamma_of("gamma_R"),
            lambda1=_get_float(cfg, "lambda1", 0.0),
            lambda2=_get_float(cfg, "lambda2", 0.0),
            lambda3=_get_float(cfg, "lambda3", 0.0),
        )
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc


def sweep_from_config(cfg: dict[str, str]) -> SweepSpec:
    base = params_from_config(cfg)
    outputs = tuple(
        s.strip() for s in cfg.get("outputs", ",".join(DEFAULT_OUTPUTS)).split(",")
        if s.strip()
    )
    rho44 = _get_float(cfg, "rho44_init") if "rho44_init" in cfg else None
    try:
        return SweepSpec(
            base=base,
            axis=cfg.get("axis", ""),
            lo=_get_float(cfg, "lo"),
            hi=_get_float(cfg, "hi"),
            points=int(_get_float(cfg, "points")),
            control=cfg.get("control", "M"),
            outputs=outputs,
            rho44_init=rho44,
        )
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc


def drive_from_config(cfg: dict[str, str]) -> DriveSpec:
    try:
        return DriveSpec(
            Omega=_get_float(cfg, "drive_Omega"),
            delta_t=_get_float(cfg, "drive_duration"),
        )
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(name_or_path: str) -> dict[str, str]:
    """Read a config file, or fall back to a shipped preset name."""
    from .presets import PRESETS

    if os.path.exists(name_or_path):
        with open(name_or_path) as fh:
            return parse_config(fh.read())
    if name_or_path in PRESETS:
        return parse_config(PRESETS[name_or_path])
    raise ConfigError(
        f"{name_or_path!r} is neither a config file nor a preset "
        f"(known presets: {', '.join(sorted(PRESETS))})"
    )
