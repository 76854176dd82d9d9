"""Measurement/prediction splits and the prediction-study sweeps.

Every runner fits both models on a measurement set and reports their RMS
error on a disjoint prediction set, one FigureTable row per sweep point.
Rows can be computed in a thread pool (``jobs > 1``); emission order is
always the sweep order.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Optional, Sequence

import numpy as np

from .estimation import DegenerateDesignError, FitResult, evaluate, fit_abg, fit_ci, sample_arrays
from .model import Sample, fspl_1m

log = logging.getLogger(__name__)

DEFAULT_BANDS = (2.0, 5.6, 10.0, 18.0, 28.0, 39.3, 73.5)
BAND_RTOL = 0.05
DYNAMIC_RANGE_DB = 100.0
DEFAULT_DELTA_GRID = tuple(float(v) for v in range(0, 701, 50))
DEFAULT_D_MAX = 200.0
DEFAULT_D_MIN = 900.0

SPLIT_KINDS = ("distance_near", "distance_far", "frequency_loo", "environment_cross")
_KIND_FIELDS = {
    "distance_near": {"d_max", "delta_d"},
    "distance_far": {"d_min", "delta_d"},
    "frequency_loo": {"held_out_band", "bands"},
    "environment_cross": {"measurement_environment", "prediction_environment"},
}


class EmptyPartitionError(ValueError):
    """A split left the measurement or the prediction set empty."""


def dynamic_range_filter(samples: Sequence[Sample]) -> list:
    """Keep samples whose excess loss over FSPL(f, 1 m) is strictly below 100 dB."""
    if len(samples) == 0:
        return []
    f, _, pl = sample_arrays(samples)
    keep = pl - np.asarray(fspl_1m(f)) < DYNAMIC_RANGE_DB
    return [s for s, k in zip(samples, keep) if k]


def format_band(value: float) -> str:
    return f"{value:g}"


def group_band(frequency_ghz: float, bands: Sequence[float] = DEFAULT_BANDS) -> str:
    """Label of the nearest configured band within 5% relative distance.

    Frequencies with no band that close form their own band.
    """
    if not (math.isfinite(frequency_ghz) and frequency_ghz > 0):
        raise ValueError(f"frequency must be > 0, got {frequency_ghz!r}")
    best = None
    for b in bands:
        rel = abs(frequency_ghz - b) / b
        if rel <= BAND_RTOL and (best is None or rel < best[0]):
            best = (rel, b)
    return format_band(best[1] if best else frequency_ghz)


def _band_sort_key(label: str):
    return float(label)


@dataclass(frozen=True)
class SplitSpec:
    """Declarative description of one measurement/prediction partition.

    Build with the ``distance_near`` / ``distance_far`` / ``frequency_loo`` /
    ``environment_cross`` constructors; only the fields relevant to the kind
    are set.
    """

    kind: str
    d_max: Optional[float] = None
    d_min: Optional[float] = None
    delta_d: Optional[float] = None
    held_out_band: Optional[str] = None
    bands: Optional[tuple] = None
    measurement_environment: Optional[str] = None
    prediction_environment: Optional[str] = None

    def __post_init__(self):
        if self.kind not in SPLIT_KINDS:
            raise ValueError(f"unknown split kind {self.kind!r}; expected one of {SPLIT_KINDS}")
        set_fields = {f.name for f in fields(self) if f.name != "kind" and getattr(self, f.name) is not None}
        if set_fields != _KIND_FIELDS[self.kind]:
            raise ValueError(
                f"{self.kind} split needs exactly {sorted(_KIND_FIELDS[self.kind])}, got {sorted(set_fields)}"
            )
        if self.delta_d is not None and not (math.isfinite(self.delta_d) and self.delta_d >= 0):
            raise ValueError(f"delta_d must be >= 0, got {self.delta_d!r}")

    @classmethod
    def distance_near(cls, delta_d: float = 0.0, d_max: float = DEFAULT_D_MAX) -> "SplitSpec":
        return cls("distance_near", d_max=float(d_max), delta_d=float(delta_d))

    @classmethod
    def distance_far(cls, delta_d: float = 0.0, d_min: float = DEFAULT_D_MIN) -> "SplitSpec":
        return cls("distance_far", d_min=float(d_min), delta_d=float(delta_d))

    @classmethod
    def frequency_loo(cls, held_out_band, bands: Sequence[float] = DEFAULT_BANDS) -> "SplitSpec":
        label = held_out_band if isinstance(held_out_band, str) else format_band(held_out_band)
        return cls("frequency_loo", held_out_band=label, bands=tuple(float(b) for b in bands))

    @classmethod
    def environment_cross(cls, measurement_environment: str, prediction_environment: str) -> "SplitSpec":
        return cls(
            "environment_cross",
            measurement_environment=measurement_environment,
            prediction_environment=prediction_environment,
        )

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for name in sorted(_KIND_FIELDS[self.kind]):
            v = getattr(self, name)
            out[name] = list(v) if isinstance(v, tuple) else v
        return out


@dataclass(frozen=True)
class SplitResult:
    measurement: list
    prediction: list
    spec: SplitSpec


def _check_nlos(samples):
    for i, s in enumerate(samples):
        if s.link_state != "NLOS":
            raise ValueError(
                f"split requires NLOS-only samples; sample {i} ({s.environment}, "
                f"{s.frequency_ghz:g} GHz, {s.distance_m:g} m) is {s.link_state}"
            )


def split(samples: Sequence[Sample], spec: SplitSpec) -> SplitResult:
    """Partition ``samples`` per ``spec``.

    Distance splits leave a gap of width ``delta_d`` whose samples belong to
    neither set. A self environment cross (same label on both sides) uses the
    whole environment as both sets.
    """
    _check_nlos(samples)
    if spec.kind == "distance_near":
        cut = spec.d_max + spec.delta_d
        prediction = [s for s in samples if s.distance_m <= spec.d_max]
        measurement = [s for s in samples if s.distance_m > cut]
    elif spec.kind == "distance_far":
        cut = spec.d_min - spec.delta_d
        prediction = [s for s in samples if s.distance_m >= spec.d_min]
        measurement = [s for s in samples if s.distance_m < cut]
    elif spec.kind == "frequency_loo":
        labels = [group_band(s.frequency_ghz, spec.bands) for s in samples]
        prediction = [s for s, b in zip(samples, labels) if b == spec.held_out_band]
        measurement = [s for s, b in zip(samples, labels) if b != spec.held_out_band]
    else:
        prediction = [s for s in samples if s.environment == spec.prediction_environment]
        measurement = [s for s in samples if s.environment == spec.measurement_environment]
    if not measurement or not prediction:
        which = "measurement" if not measurement else "prediction"
        raise EmptyPartitionError(f"{which} set is empty for split {spec.to_dict()}")
    return SplitResult(measurement, prediction, spec)


ROW_COLUMNS = (
    "sweep_key",
    "ci_sf_std",
    "abg_sf_std",
    "ci_n",
    "abg_alpha",
    "abg_beta",
    "abg_gamma",
    "measurement_count",
    "prediction_count",
    "ci_meas_sf_std",
    "abg_meas_sf_std",
)


@dataclass(frozen=True)
class FigureRow:
    """One sweep point. ABG fields are None when the ABG fit was impossible."""

    sweep_key: object
    ci_sf_std: float
    abg_sf_std: Optional[float]
    ci_n: float
    abg_alpha: Optional[float]
    abg_beta: Optional[float]
    abg_gamma: Optional[float]
    measurement_count: int
    prediction_count: int
    ci_meas_sf_std: float
    abg_meas_sf_std: Optional[float]

    @property
    def abg_available(self) -> bool:
        return self.abg_alpha is not None

    def values(self) -> tuple:
        return tuple(getattr(self, c) for c in ROW_COLUMNS)


@dataclass
class FigureTable:
    kind: str
    rows: list = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]


def _warn(table: FigureTable, message: str):
    log.warning(message)
    table.warnings.append(message)


def _fit_and_score(key, measurement, prediction) -> FigureRow:
    ci = fit_ci(measurement)
    ci_pred = evaluate(ci.model, prediction)
    abg: Optional[FitResult]
    try:
        abg = fit_abg(measurement)
    except DegenerateDesignError as exc:
        log.info("ABG unavailable at %s: %s", key, exc)
        abg = None
    else:
        abg_pred = evaluate(abg.model, prediction)
    return FigureRow(
        sweep_key=key,
        ci_sf_std=ci_pred.sf_std,
        abg_sf_std=abg_pred.sf_std if abg else None,
        ci_n=ci.model.ple,
        abg_alpha=abg.model.alpha if abg else None,
        abg_beta=abg.model.beta if abg else None,
        abg_gamma=abg.model.gamma if abg else None,
        measurement_count=len(measurement),
        prediction_count=len(prediction),
        ci_meas_sf_std=ci.stats.sf_std,
        abg_meas_sf_std=abg.stats.sf_std if abg else None,
    )


def _map_rows(tasks, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [_fit_and_score(*t) for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: _fit_and_score(*t), tasks))


def run_distance_sweep(
    samples: Sequence[Sample],
    mode: str,
    delta_grid: Sequence[float] = DEFAULT_DELTA_GRID,
    d_max: float = DEFAULT_D_MAX,
    d_min: float = DEFAULT_D_MIN,
    jobs: int = 1,
) -> FigureTable:
    """Prediction in distance with a fixed prediction set and a receding measurement set.

    ``mode="near"`` predicts ``d <= d_max`` from ``d > d_max + delta``;
    ``mode="far"`` predicts ``d >= d_min`` from ``d < d_min - delta``. The
    sweep stops, with a warning, at the first delta whose measurement set
    is empty.
    """
    if mode not in ("near", "far"):
        raise ValueError(f"mode must be 'near' or 'far', got {mode!r}")
    grid = [float(v) for v in delta_grid]
    if not grid:
        raise ValueError("delta grid must be non-empty")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError(f"delta grid must be sorted ascending, got {grid}")

    params = {"mode": mode, "delta_grid": grid}
    params.update({"d_max": float(d_max)} if mode == "near" else {"d_min": float(d_min)})
    table = FigureTable(kind=f"distance_{mode}", parameters=params)

    def make_spec(delta):
        return SplitSpec.distance_near(delta, d_max) if mode == "near" else SplitSpec.distance_far(delta, d_min)

    in_prediction = (lambda s: s.distance_m <= d_max) if mode == "near" else (lambda s: s.distance_m >= d_min)
    if not any(in_prediction(s) for s in samples):
        raise EmptyPartitionError(f"prediction set is empty for split {make_spec(grid[0]).to_dict()}")

    tasks = []
    reference = None
    for delta in grid:
        try:
            part = split(samples, make_spec(delta))
        except EmptyPartitionError as exc:
            _warn(table, f"sweep stopped at delta_d={delta:g} m: {exc}")
            break
        if reference is None:
            reference = part.prediction
        assert part.prediction == reference, "prediction set changed across the distance sweep"
        tasks.append((delta, part.measurement, part.prediction))
    table.rows = _map_rows(tasks, jobs)
    return table


def bands_present(samples: Sequence[Sample], bands: Sequence[float] = DEFAULT_BANDS) -> list:
    return sorted({group_band(s.frequency_ghz, bands) for s in samples}, key=_band_sort_key)


def run_frequency_loo(
    samples: Sequence[Sample], bands: Sequence[float] = DEFAULT_BANDS, jobs: int = 1
) -> FigureTable:
    """Leave-one-band-out prediction in frequency, one row per held-out band."""
    bands = tuple(float(b) for b in bands)
    present = bands_present(samples, bands)
    if len(present) < 2:
        raise ValueError(f"frequency leave-one-out needs >= 2 bands, found {present}")
    table = FigureTable(kind="frequency_loo", parameters={"bands": list(bands), "bands_present": present})
    tasks = []
    for label in present:
        part = split(samples, SplitSpec.frequency_loo(label, bands))
        tasks.append((label, part.measurement, part.prediction))
    table.rows = _map_rows(tasks, jobs)
    for row in table.rows:
        if not row.abg_available:
            _warn(table, f"ABG fit unavailable when holding out band {row.sweep_key}")
    return table


def run_environment_cross(
    samples: Sequence[Sample],
    measurement_environment: str,
    prediction_environment: str,
    bands: Sequence[float] = DEFAULT_BANDS,
    jobs: int = 1,
) -> FigureTable:
    """Fit on one environment, score per (band, TX height class) group of the other.

    Every row repeats the measurement-set SF std pair in the ``*_meas_sf_std``
    columns; it is also stored in ``parameters``.
    """
    envs = {s.environment for s in samples}
    for env in (measurement_environment, prediction_environment):
        if env not in envs:
            raise ValueError(f"environment {env!r} not present; found {sorted(envs)}")
    bands = tuple(float(b) for b in bands)
    part = split(samples, SplitSpec.environment_cross(measurement_environment, prediction_environment))
    ci = fit_ci(part.measurement)
    try:
        abg = fit_abg(part.measurement)
    except DegenerateDesignError as exc:
        log.info("ABG unavailable on %s: %s", measurement_environment, exc)
        abg = None

    table = FigureTable(
        kind="environment_cross",
        parameters={
            "measurement_environment": measurement_environment,
            "prediction_environment": prediction_environment,
            "bands": list(bands),
            "ci_meas_sf_std": ci.stats.sf_std,
            "abg_meas_sf_std": abg.stats.sf_std if abg else None,
        },
    )
    if abg is None:
        _warn(table, f"ABG fit unavailable on measurement environment {measurement_environment!r}")

    groups: dict = {}
    for s in part.prediction:
        groups.setdefault((group_band(s.frequency_ghz, bands), s.tx_height_class), []).append(s)
    present = sorted({b for b, _ in groups}, key=_band_sort_key)

    def score(key):
        members = groups[key]
        ci_pred = evaluate(ci.model, members)
        abg_pred = evaluate(abg.model, members) if abg else None
        band, cls = key
        return FigureRow(
            sweep_key=f"{prediction_environment}_{band}GHz_{cls}TX",
            ci_sf_std=ci_pred.sf_std,
            abg_sf_std=abg_pred.sf_std if abg_pred else None,
            ci_n=ci.model.ple,
            abg_alpha=abg.model.alpha if abg else None,
            abg_beta=abg.model.beta if abg else None,
            abg_gamma=abg.model.gamma if abg else None,
            measurement_count=len(part.measurement),
            prediction_count=len(members),
            ci_meas_sf_std=ci.stats.sf_std,
            abg_meas_sf_std=abg.stats.sf_std if abg else None,
        )

    keys = []
    for band in present:
        for cls in ("low", "high"):
            if (band, cls) in groups:
                keys.append((band, cls))
            else:
                _warn(table, f"no {prediction_environment} samples for {band} GHz {cls}TX; group skipped")
    if jobs > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            table.rows = list(pool.map(score, keys))
    else:
        table.rows = [score(k) for k in keys]
    return table
