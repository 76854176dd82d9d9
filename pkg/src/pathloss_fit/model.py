"""Domain types and forward evaluation of the CI and ABG path-loss models.

Frequencies are carried in GHz everywhere in this package; distances in
meters; path loss in dB. Both models return the deterministic mean path
loss; shadow fading is never added here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s
REFERENCE_DISTANCE_M = 1.0
REFERENCE_FREQUENCY_GHZ = 1.0

TX_HEIGHT_CLASSES = ("low", "high")
LINK_STATES = ("LOS", "NLOS")


def _check_positive(name, value):
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")
    return arr


def _unwrap(arr):
    return float(arr) if arr.ndim == 0 else arr


@dataclass(frozen=True)
class Sample:
    """One path-loss observation."""

    frequency_ghz: float
    distance_m: float
    path_loss_db: float
    environment: str
    tx_height_class: str = "low"
    link_state: str = "NLOS"

    def __post_init__(self):
        for name in ("frequency_ghz", "distance_m"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
        if not math.isfinite(self.path_loss_db):
            raise ValueError(f"path_loss_db must be finite, got {self.path_loss_db!r}")
        if not self.environment:
            raise ValueError("environment label must be non-empty")
        if self.tx_height_class not in TX_HEIGHT_CLASSES:
            raise ValueError(
                f"tx_height_class must be one of {TX_HEIGHT_CLASSES}, got {self.tx_height_class!r}"
            )
        if self.link_state not in LINK_STATES:
            raise ValueError(f"link_state must be one of {LINK_STATES}, got {self.link_state!r}")


@dataclass(frozen=True)
class CiModel:
    """Close-in free-space reference distance model, anchored at FSPL(f, 1 m)."""

    ple: float

    def __post_init__(self):
        if not math.isfinite(self.ple):
            raise ValueError(f"ple must be finite, got {self.ple!r}")

    def __call__(self, frequency_ghz, distance_m):
        return ci_path_loss(self, frequency_ghz, distance_m)


@dataclass(frozen=True)
class AbgModel:
    """Floating-intercept alpha-beta-gamma model."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite, got {getattr(self, name)!r}")

    def __call__(self, frequency_ghz, distance_m):
        return abg_path_loss(self, frequency_ghz, distance_m)


PathLossModel = Union[CiModel, AbgModel]


def fspl_1m(frequency_ghz):
    """Free-space path loss at 1 m, ``20 log10(4 pi f / c)`` in dB.

    Accepts a scalar or an array of frequencies in GHz.
    """
    f = _check_positive("frequency", frequency_ghz)
    return _unwrap(20.0 * np.log10(4.0 * np.pi * f * 1e9 / SPEED_OF_LIGHT))


# 32.4478 dB; the CI anchor expressed as an ABG intercept.
FSPL_1M_1GHZ = fspl_1m(REFERENCE_FREQUENCY_GHZ)


def ci_path_loss(model: CiModel, frequency_ghz, distance_m):
    f = _check_positive("frequency", frequency_ghz)
    d = _check_positive("distance", distance_m)
    pl = 20.0 * np.log10(4.0 * np.pi * f * 1e9 / SPEED_OF_LIGHT)
    return _unwrap(pl + 10.0 * model.ple * np.log10(d / REFERENCE_DISTANCE_M))


def abg_path_loss(model: AbgModel, frequency_ghz, distance_m):
    f = _check_positive("frequency", frequency_ghz)
    d = _check_positive("distance", distance_m)
    return _unwrap(
        10.0 * model.alpha * np.log10(d / REFERENCE_DISTANCE_M)
        + model.beta
        + 10.0 * model.gamma * np.log10(f / REFERENCE_FREQUENCY_GHZ)
    )


def path_loss(model: PathLossModel, frequency_ghz, distance_m):
    """Evaluate either model type."""
    if isinstance(model, CiModel):
        return ci_path_loss(model, frequency_ghz, distance_m)
    if isinstance(model, AbgModel):
        return abg_path_loss(model, frequency_ghz, distance_m)
    raise TypeError(f"not a path-loss model: {model!r}")


def ci_as_abg(model: CiModel) -> AbgModel:
    """The ABG family member that reproduces ``model`` exactly."""
    return AbgModel(alpha=model.ple, beta=FSPL_1M_1GHZ, gamma=2.0)


def model_to_dict(model: PathLossModel) -> dict:
    if isinstance(model, CiModel):
        return {"kind": "ci", "n": model.ple}
    if isinstance(model, AbgModel):
        return {"kind": "abg", "alpha": model.alpha, "beta": model.beta, "gamma": model.gamma}
    raise TypeError(f"not a path-loss model: {model!r}")


def model_from_dict(d: dict) -> PathLossModel:
    """Build a model from ``{"n": ...}`` or ``{"alpha": ..., "beta": ..., "gamma": ...}``.

    A ``"kind"`` key is optional; when absent the kind is inferred from the
    parameter names.
    """
    if not isinstance(d, dict):
        raise ValueError(f"model parameters must be a JSON object, got {d!r}")
    kind = d.get("kind")
    keys = set(d) - {"kind"}
    if kind is None:
        kind = "ci" if keys == {"n"} else "abg" if keys == {"alpha", "beta", "gamma"} else None
    if kind == "ci" and keys == {"n"}:
        return CiModel(float(d["n"]))
    if kind == "abg" and keys == {"alpha", "beta", "gamma"}:
        return AbgModel(float(d["alpha"]), float(d["beta"]), float(d["gamma"]))
    raise ValueError(
        f"cannot interpret model parameters {d!r}; expected {{'n'}} or {{'alpha', 'beta', 'gamma'}}"
    )
