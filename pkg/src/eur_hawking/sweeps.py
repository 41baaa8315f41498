"""Configuration-driven parameter sweeps with deterministic CSV output.

Every figure preset maps to a SweepSpec; running one produces a CSV (header
row, one data row per grid point, floats printed with 12 significant digits)
plus a JSON manifest describing axes, columns and provenance. Output bytes
are independent of worker count: rows are computed per grid point and
written in grid order.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

import numpy as np

from . import __version__
from .errors import DomainError, PostSelectionError
from .scenarios import evaluate_point
from .states import BellParams

QUANTITY_COLUMNS = {
    "U": ("U_analytic", "U_numeric"),
    "Ub": ("Ub_analytic", "Ub_numeric"),
    "QD": ("QD",),
    "mixedness": ("mixedness",),
    "Psucc": ("Psucc",),
}
DEFAULT_OUTPUTS = ("U", "Ub", "QD", "mixedness", "Psucc")

SCENARIO_FAMILIES = {
    "dp_vs_T": "dp",
    "dp_vs_p": "dp",
    "dp_heatmap_pT": "dp",
    "pd_vs_T": "pd",
    "pd_vs_gammat": "pd",
    "pd_heatmap": "pd",
    "qwm_dp": "dp",
    "qwm_pd": "pd",
    "mixedness_sync": "dp",
}

# closed parameter domains; None means unbounded above
PARAMETER_DOMAINS = {
    "p": (0.0, 1.0),
    "q": (0.0, 1.0),
    "gamma": (0.0, 1.0),
    "T_over_omega": (0.0, None),
    "Gamma_t": (0.0, None),
    "omega": (None, None),
}


class ConfigError(DomainError):
    """A sweep specification is malformed or unphysical."""


@dataclass(frozen=True)
class AxisSpec:
    """A swept parameter: either a linspace grid or an explicit value list."""

    name: str
    lo: Optional[float] = None
    hi: Optional[float] = None
    points: Optional[int] = None
    values: Optional[tuple[float, ...]] = None

    def grid(self) -> np.ndarray:
        if self.values is not None:
            return np.asarray(self.values, dtype=float)
        return np.linspace(self.lo, self.hi, self.points)

    def validate(self) -> "AxisSpec":
        if self.name not in PARAMETER_DOMAINS:
            raise ConfigError(f"unknown sweep parameter {self.name!r}")
        if self.values is not None:
            vals = self.values
            if len(vals) < 1:
                raise ConfigError(f"axis {self.name}: empty value list")
        else:
            if self.lo is None or self.hi is None or self.points is None:
                raise ConfigError(f"axis {self.name}: need lo, hi and points")
            if self.points < 2:
                raise ConfigError(f"axis {self.name}: points must be >= 2")
            vals = (self.lo, self.hi)
        lo_dom, hi_dom = PARAMETER_DOMAINS[self.name]
        for v in vals:
            if not math.isfinite(v):
                raise ConfigError(f"axis {self.name}: non-finite grid value {v}")
            if lo_dom is not None and v < lo_dom:
                raise ConfigError(f"axis {self.name}: value {v} below domain minimum {lo_dom}")
            if hi_dom is not None and v > hi_dom:
                raise ConfigError(f"axis {self.name}: value {v} above domain maximum {hi_dom}")
        return self


@dataclass(frozen=True)
class SweepSpec:
    scenario: str
    bell: BellParams
    fixed: Mapping[str, float] = field(default_factory=dict)
    sweep_axis: AxisSpec = None
    second_axis: Optional[AxisSpec] = None
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS
    # Several published figure parameter sets lie outside the positivity
    # tetrahedron; those presets run with strict_physicality=False and
    # their rows carry the nonpositive_state status flag.
    strict_physicality: bool = True

    def validate(self) -> "SweepSpec":
        if self.scenario not in SCENARIO_FAMILIES:
            raise ConfigError(
                f"unknown scenario {self.scenario!r}; expected one of "
                f"{sorted(SCENARIO_FAMILIES)}"
            )
        try:
            if self.strict_physicality:
                self.bell.validate()
            else:
                self.bell.validate_cube()
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc
        if self.sweep_axis is None:
            raise ConfigError("sweep_axis is required")
        self.sweep_axis.validate()
        if self.second_axis is not None:
            self.second_axis.validate()
            if self.second_axis.name == self.sweep_axis.name:
                raise ConfigError("sweep_axis and second_axis name the same parameter")
        for key, value in self.fixed.items():
            if key not in PARAMETER_DOMAINS:
                raise ConfigError(f"unknown fixed parameter {key!r}")
            lo_dom, hi_dom = PARAMETER_DOMAINS[key]
            if lo_dom is not None and value < lo_dom:
                raise ConfigError(f"fixed {key}={value} below domain minimum {lo_dom}")
            if hi_dom is not None and value > hi_dom:
                raise ConfigError(f"fixed {key}={value} above domain maximum {hi_dom}")
        for name in self.outputs:
            if name not in QUANTITY_COLUMNS:
                raise ConfigError(f"unknown output column {name!r}")
        strength_key = "p" if SCENARIO_FAMILIES[self.scenario] == "dp" else "q"
        supplied = set(self.fixed) | set(self._axis_names())
        if "Gamma_t" in supplied:
            supplied.add(strength_key)
        missing = {strength_key, "T_over_omega"} - supplied
        if missing:
            raise ConfigError(
                f"scenario {self.scenario}: missing parameters {sorted(missing)}"
            )
        return self

    def _axis_names(self) -> tuple[str, ...]:
        names = [self.sweep_axis.name]
        if self.second_axis is not None:
            names.append(self.second_axis.name)
        return tuple(names)


@dataclass(frozen=True)
class FigureManifest:
    figure_id: str
    scenario: str
    bell: tuple[float, float, float]
    fixed: dict
    axes: dict
    csv_path: str
    columns: tuple[str, ...]
    rows: int
    code_version: str
    duration_seconds: float

    def to_json(self) -> str:
        payload = {
            "figure_id": self.figure_id,
            "scenario": self.scenario,
            "bell": list(self.bell),
            "fixed": dict(self.fixed),
            "axes": self.axes,
            "csv_path": self.csv_path,
            "columns": list(self.columns),
            "rows": self.rows,
            "code_version": self.code_version,
            "duration_seconds": self.duration_seconds,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def format_float(value: float) -> str:
    return format(float(value), ".12g")


def _columns_for(spec: SweepSpec) -> tuple[str, ...]:
    cols = ["x"]
    if spec.second_axis is not None:
        cols.append("y")
    for name in spec.outputs:
        cols.extend(QUANTITY_COLUMNS[name])
    cols.append("status")
    return tuple(cols)


def _point_parameters(scenario: str, fixed: Mapping[str, float],
                      axis_values: Mapping[str, float]) -> dict:
    """Resolve the evaluate_point arguments for one grid point."""
    family = SCENARIO_FAMILIES[scenario]
    params = dict(fixed)
    params.update(axis_values)
    strength_key = "p" if family == "dp" else "q"
    if strength_key not in params:
        if "Gamma_t" in params:
            params[strength_key] = -math.expm1(-params["Gamma_t"])
        else:
            raise ConfigError(f"scenario {scenario}: parameter {strength_key} not supplied")
    if "T_over_omega" not in params:
        raise ConfigError(f"scenario {scenario}: parameter T_over_omega not supplied")
    return {
        "family": family,
        "strength": params[strength_key],
        "t_over_omega": params["T_over_omega"],
        "omega": params.get("omega", 1.0),
        "gamma": params.get("gamma", 0.0),
    }


def _compute_row(task) -> str:
    (scenario, bell_tuple, fixed, axis_names, axis_values, outputs, strict) = task
    kwargs = _point_parameters(scenario, fixed, dict(zip(axis_names, axis_values)))
    cells = [format_float(v) for v in axis_values]
    try:
        report = evaluate_point(
            kwargs["family"],
            BellParams(*bell_tuple),
            strength=kwargs["strength"],
            t_over_omega=kwargs["t_over_omega"],
            omega=kwargs["omega"],
            gamma=kwargs["gamma"],
            strict_physicality=strict,
        )
    except PostSelectionError:
        for name in outputs:
            cells.extend("nan" for _ in QUANTITY_COLUMNS[name])
        cells.append("degenerate_postselection")
        return ",".join(cells)
    values = {
        "U_analytic": report.lhs_analytic,
        "U_numeric": report.lhs_numeric,
        "Ub_analytic": report.bound_analytic,
        "Ub_numeric": report.bound_numeric,
        "QD": report.discord,
        "mixedness": report.mixedness,
        "Psucc": report.success_probability,
    }
    for name in outputs:
        cells.extend(format_float(values[col]) for col in QUANTITY_COLUMNS[name])
    cells.append(report.status)
    return ",".join(cells)


def _grid_tasks(spec: SweepSpec):
    axis_names = spec._axis_names()
    xs = spec.sweep_axis.grid()
    if spec.second_axis is None:
        for x in xs:
            yield (spec.scenario, spec.bell.as_tuple(), dict(spec.fixed), axis_names,
                   (float(x),), spec.outputs, spec.strict_physicality)
    else:
        ys = spec.second_axis.grid()
        for x in xs:
            for y in ys:
                yield (spec.scenario, spec.bell.as_tuple(), dict(spec.fixed), axis_names,
                       (float(x), float(y)), spec.outputs, spec.strict_physicality)


def run_sweep(spec: SweepSpec, out_dir, figure_id: str = "custom", jobs: int = 1) -> FigureManifest:
    """Evaluate the grid and write ``<figure_id>.csv`` plus its JSON manifest."""
    spec.validate()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    columns = _columns_for(spec)
    tasks = list(_grid_tasks(spec))

    start = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_compute_row, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [_compute_row(t) for t in tasks]
    duration = time.perf_counter() - start

    csv_name = f"{figure_id}.csv"
    csv_path = out_dir / csv_name
    with open(csv_path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(columns) + "\n")
        for row in rows:
            handle.write(row + "\n")

    axes = {"x": _axis_payload(spec.sweep_axis)}
    if spec.second_axis is not None:
        axes["y"] = _axis_payload(spec.second_axis)
    manifest = FigureManifest(
        figure_id=figure_id,
        scenario=spec.scenario,
        bell=spec.bell.as_tuple(),
        fixed=dict(spec.fixed),
        axes=axes,
        csv_path=csv_name,
        columns=columns,
        rows=len(rows),
        code_version=__version__,
        duration_seconds=duration,
    )
    with open(out_dir / f"{figure_id}.manifest.json", "w", encoding="utf-8") as handle:
        handle.write(manifest.to_json() + "\n")
    return manifest


def _axis_payload(axis: AxisSpec) -> dict:
    payload = {"name": axis.name}
    if axis.values is not None:
        payload["values"] = list(axis.values)
        payload["points"] = len(axis.values)
    else:
        payload.update({"min": axis.lo, "max": axis.hi, "points": axis.points})
    return payload


# ---------------------------------------------------------------------------
# Figure presets
# ---------------------------------------------------------------------------

_GAMMA_SERIES = (0.2, 0.4, 0.6, 0.8)


def _preset(scenario, bell, fixed, sweep_axis, second_axis=None) -> SweepSpec:
    bell_params = BellParams(*bell)
    return SweepSpec(
        scenario=scenario,
        bell=bell_params,
        fixed=fixed,
        sweep_axis=sweep_axis,
        second_axis=second_axis,
        strict_physicality=bell_params.is_physical,
    )


PRESETS: dict[str, SweepSpec] = {
    "fig1a": _preset("dp_vs_T", (1, -1, 1), {"p": 0.0},
                     AxisSpec("T_over_omega", 0.0, 3.0, 121)),
    "fig1b": _preset("dp_vs_T", (0.9, 0.8, -0.9), {"p": 0.2},
                     AxisSpec("T_over_omega", 0.0, 3.0, 121)),
    "fig2a": _preset("dp_vs_p", (1, -1, 1), {"T_over_omega": 1.0},
                     AxisSpec("p", 0.0, 1.0, 121)),
    "fig2b": _preset("dp_vs_p", (0.5, 0.5, 0.5), {"T_over_omega": 1.0},
                     AxisSpec("p", 0.0, 1.0, 121)),
    "fig3a": _preset("dp_heatmap_pT", (1, -1, 1), {},
                     AxisSpec("p", 0.0, 1.0, 41), AxisSpec("T_over_omega", 0.0, 3.0, 41)),
    "fig3b": _preset("dp_heatmap_pT", (0.7, 0.8, 0.9), {},
                     AxisSpec("p", 0.0, 1.0, 41), AxisSpec("T_over_omega", 0.0, 3.0, 41)),
    "fig4a": _preset("pd_vs_T", (1, -1, 1), {"q": 0.1},
                     AxisSpec("T_over_omega", 0.0, 3.0, 121)),
    "fig4b": _preset("pd_vs_T", (0.9, -0.63, 0.7), {"q": 0.1},
                     AxisSpec("T_over_omega", 0.0, 3.0, 121)),
    "fig5a": _preset("pd_vs_gammat", (1, -1, 1), {"T_over_omega": 2.0},
                     AxisSpec("Gamma_t", 0.0, 3.0, 121)),
    "fig5b": _preset("pd_vs_gammat", (0.8, 0.9, -0.7), {"T_over_omega": 2.0},
                     AxisSpec("Gamma_t", 0.0, 3.0, 121)),
    "fig7": _preset("pd_heatmap", (1, -1, 1), {},
                    AxisSpec("Gamma_t", 0.0, 3.0, 41), AxisSpec("T_over_omega", 0.0, 3.0, 41)),
    "fig8a": _preset("qwm_dp", (0.9, -0.8, 0.6), {"T_over_omega": 1.0},
                     AxisSpec("p", 0.0, 1.0, 121), AxisSpec("gamma", values=_GAMMA_SERIES)),
    "fig8b": _preset("qwm_dp", (0.9, -0.8, 0.6), {"p": 0.5},
                     AxisSpec("gamma", 0.0, 0.8, 41), AxisSpec("T_over_omega", 0.0, 3.0, 41)),
    "fig88a": _preset("qwm_dp", (0.9, -0.8, 0.6), {"T_over_omega": 1.0},
                      AxisSpec("p", 0.0, 1.0, 121), AxisSpec("gamma", values=_GAMMA_SERIES)),
    "fig88b": _preset("qwm_dp", (0.9, -0.8, 0.6), {"T_over_omega": 1.0},
                      AxisSpec("p", 0.0, 1.0, 121), AxisSpec("gamma", values=_GAMMA_SERIES)),
    "fig9a": _preset("qwm_pd", (0.7, 0.6, -0.8), {"q": 0.6},
                     AxisSpec("T_over_omega", 0.0, 3.0, 121), AxisSpec("gamma", values=_GAMMA_SERIES)),
    "fig9b": _preset("qwm_pd", (0.7, 0.6, -0.8), {"T_over_omega": 1.0},
                     AxisSpec("gamma", 0.0, 0.8, 41), AxisSpec("Gamma_t", 0.0, 3.0, 41)),
}


# ---------------------------------------------------------------------------
# Flat key-value sweep configuration
# ---------------------------------------------------------------------------

def parse_sweep_config(text: str) -> SweepSpec:
    """Parse the flat ``key = value`` sweep format.

    Keys match the SweepSpec fields::

        scenario   = dp_vs_T
        bell       = 1, -1, 1
        fixed      = p: 0.2, omega: 1
        sweep_axis = T_over_omega, 0, 3, 121
        second_axis = gamma, values: 0.2 0.4 0.6 0.8   (optional)
        outputs    = U, Ub, QD, mixedness, Psucc       (optional)
    """
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value

    unknown = set(entries) - {"scenario", "bell", "fixed", "sweep_axis", "second_axis", "outputs"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for required in ("scenario", "bell", "sweep_axis"):
        if required not in entries:
            raise ConfigError(f"missing config key {required!r}")

    bell_parts = [part.strip() for part in entries["bell"].split(",")]
    if len(bell_parts) != 3:
        raise ConfigError(f"bell must have three components, got {entries['bell']!r}")
    bell = BellParams(*(_config_float(v, "bell") for v in bell_parts))

    fixed: dict[str, float] = {}
    if entries.get("fixed"):
        for item in entries["fixed"].split(","):
            item = item.strip()
            if not item:
                continue
            if ":" not in item:
                raise ConfigError(f"fixed entries use 'name: value', got {item!r}")
            name, value = (part.strip() for part in item.split(":", 1))
            fixed[name] = _config_float(value, f"fixed.{name}")

    spec = SweepSpec(
        scenario=entries["scenario"],
        bell=bell,
        fixed=fixed,
        sweep_axis=_parse_axis(entries["sweep_axis"]),
        second_axis=_parse_axis(entries["second_axis"]) if entries.get("second_axis") else None,
        outputs=_parse_outputs(entries.get("outputs")),
    )
    return spec.validate()


def _parse_outputs(raw: Optional[str]) -> tuple[str, ...]:
    if raw is None or not raw.strip():
        return DEFAULT_OUTPUTS
    return tuple(part.strip() for part in raw.split(",") if part.strip())


def _parse_axis(raw: str) -> AxisSpec:
    parts = [part.strip() for part in raw.split(",")]
    if len(parts) == 2 and parts[1].startswith("values:"):
        values = tuple(
            _config_float(v, "axis value")
            for v in parts[1][len("values:"):].split()
        )
        return AxisSpec(name=parts[0], values=values)
    if len(parts) != 4:
        raise ConfigError(
            f"axis must be 'name, lo, hi, points' or 'name, values: v1 v2 ...', got {raw!r}"
        )
    name, lo, hi, points = parts
    try:
        n = int(points)
    except ValueError as exc:
        raise ConfigError(f"axis points must be an integer, got {points!r}") from exc
    return AxisSpec(name=name, lo=_config_float(lo, "axis lo"), hi=_config_float(hi, "axis hi"),
                    points=n)


def _config_float(raw: str, label: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{label}: expected a number, got {raw!r}") from exc
