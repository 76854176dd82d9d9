"""Seeded synthetic datasets and a brute-force grid-search fitting oracle.

Random numbers come from numpy's ``PCG64`` bit generator seeded with the
spec's 64-bit seed. For each frequency, in list order, ``count`` uniforms
are drawn for the log-uniform distances and then ``count`` standard normals
for the shadow fading.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

import numpy as np

from .estimation import sample_arrays
from .model import (
    TX_HEIGHT_CLASSES,
    AbgModel,
    CiModel,
    PathLossModel,
    Sample,
    fspl_1m,
    model_from_dict,
    model_to_dict,
    path_loss,
)

PRESETS = ("aalborg-like", "madrid-like")


class GridEdgeError(RuntimeError):
    """The grid argmin sits on the boundary of the search box."""


@dataclass(frozen=True)
class GeneratorSpec:
    truth: PathLossModel
    sf_sigma: float
    frequencies: tuple
    distance_range: tuple
    count: int
    seed: int
    environment: str = "synthetic"
    tx_height_class: str = "low"

    def __post_init__(self):
        object.__setattr__(self, "frequencies", tuple(float(f) for f in self.frequencies))
        object.__setattr__(self, "distance_range", tuple(float(d) for d in self.distance_range))
        if not isinstance(self.truth, (CiModel, AbgModel)):
            raise ValueError(f"truth must be a CiModel or AbgModel, got {self.truth!r}")
        if not (math.isfinite(self.sf_sigma) and self.sf_sigma >= 0):
            raise ValueError(f"sf_sigma must be >= 0, got {self.sf_sigma!r}")
        if not self.frequencies or any(not (math.isfinite(f) and f > 0) for f in self.frequencies):
            raise ValueError(f"frequencies must be a non-empty list of positive GHz values, got {self.frequencies!r}")
        if len(self.distance_range) != 2:
            raise ValueError(f"distance_range must be [d_lo, d_hi], got {self.distance_range!r}")
        lo, hi = self.distance_range
        if not (0 < lo < hi and math.isfinite(hi)):
            raise ValueError(f"distance_range needs 0 < d_lo < d_hi, got {self.distance_range!r}")
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"count must be an integer >= 1, got {self.count!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not self.environment:
            raise ValueError("environment label must be non-empty")
        if self.tx_height_class not in TX_HEIGHT_CLASSES:
            raise ValueError(f"tx_height_class must be one of {TX_HEIGHT_CLASSES}")

    def to_dict(self) -> dict:
        return {
            "truth": model_to_dict(self.truth),
            "sf_sigma": self.sf_sigma,
            "frequencies": list(self.frequencies),
            "distance_range": list(self.distance_range),
            "count": self.count,
            "seed": self.seed,
            "environment": self.environment,
            "tx_height_class": self.tx_height_class,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorSpec":
        expected = {"truth", "sf_sigma", "frequencies", "distance_range", "count", "seed",
                    "environment", "tx_height_class"}
        if not isinstance(d, dict):
            raise ValueError(f"generator spec must be a JSON object, got {type(d).__name__}")
        missing, extra = expected - set(d), set(d) - expected
        if missing or extra:
            raise ValueError(
                f"generator spec fields mismatch: missing {sorted(missing)}, unexpected {sorted(extra)}"
            )
        return cls(
            truth=model_from_dict(d["truth"]),
            sf_sigma=float(d["sf_sigma"]),
            frequencies=d["frequencies"],
            distance_range=d["distance_range"],
            count=d["count"],
            seed=d["seed"],
            environment=d["environment"],
            tx_height_class=d["tx_height_class"],
        )


def load_specs(text: str) -> list:
    """Parse a JSON document holding one GeneratorSpec object or an array of them."""
    doc = json.loads(text)
    docs = doc if isinstance(doc, list) else [doc]
    return [GeneratorSpec.from_dict(d) for d in docs]


def dump_specs(specs: Sequence[GeneratorSpec]) -> str:
    docs = [s.to_dict() for s in specs]
    return json.dumps(docs[0] if len(docs) == 1 else docs, indent=2) + "\n"


def preset(name: str) -> list:
    """The bundled low/high TX synthetic stand-ins for the two environments."""
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    text = resources.files("pathloss_fit").joinpath(f"presets/{name}.json").read_text("utf-8")
    return load_specs(text)


def generate(spec: GeneratorSpec) -> list:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    lo, hi = spec.distance_range
    out = []
    for f in spec.frequencies:
        u = rng.random(spec.count)
        eps = rng.standard_normal(spec.count) * spec.sf_sigma if spec.sf_sigma > 0 else np.zeros(spec.count)
        d = lo * (hi / lo) ** u
        pl = np.asarray(path_loss(spec.truth, f, d)) + eps
        out.extend(
            Sample(f, float(di), float(pli), spec.environment, spec.tx_height_class, "NLOS")
            for di, pli in zip(d, pl)
        )
    return out


def generate_many(specs: Sequence[GeneratorSpec]) -> list:
    out = []
    for spec in specs:
        out.extend(generate(spec))
    return out


@dataclass(frozen=True)
class GridSpec:
    """Per-parameter ``(lo, hi, step)`` boxes, keyed ``n`` or ``alpha``/``beta``/``gamma``."""

    boxes: dict = field(default_factory=dict)

    def __post_init__(self):
        for name, box in self.boxes.items():
            lo, hi, step = box
            if not (lo < hi and step > 0):
                raise ValueError(f"grid box for {name!r} needs lo < hi and step > 0, got {box!r}")

    def axis(self, name: str) -> np.ndarray:
        lo, hi, step = self.boxes[name]
        k = int(math.floor((hi - lo) / step + 1e-9))
        return lo + step * np.arange(k + 1)


@dataclass(frozen=True)
class GridFitResult:
    params: tuple
    sf_std: float


_GRID_PARAMS = {"ci": ("n",), "abg": ("alpha", "beta", "gamma")}


def grid_fit(samples: Sequence[Sample], model_kind: str, grid: GridSpec) -> GridFitResult:
    """Exhaustive search of the RMS residual over ``grid``.

    Ties go to the lexicographically smallest parameter tuple. An argmin on
    the edge of any axis raises GridEdgeError so the caller can widen it.
    """
    if model_kind not in _GRID_PARAMS:
        raise ValueError(f"unknown model kind {model_kind!r}")
    names = _GRID_PARAMS[model_kind]
    if set(grid.boxes) != set(names):
        raise ValueError(f"{model_kind} grid needs boxes for {names}, got {sorted(grid.boxes)}")
    if len(samples) == 0:
        raise ValueError("grid_fit needs at least one sample")
    f, d, pl = sample_arrays(samples)
    x = 10.0 * np.log10(d)
    axes = [grid.axis(name) for name in names]

    if model_kind == "ci":
        a = pl - np.asarray(fspl_1m(f))
        resid = a[None, :] - axes[0][:, None] * x[None, :]
        sse = np.sum(resid * resid, axis=1)
    else:
        z = 10.0 * np.log10(f)
        alphas, betas, gammas = axes
        sse = np.empty((alphas.size, betas.size, gammas.size))
        nn = float(pl.size)
        for i, alpha in enumerate(alphas):
            # residual before the intercept, one row per gamma
            r = (pl - alpha * x)[None, :] - gammas[:, None] * z[None, :]
            s1 = r.sum(axis=1)
            s2 = np.sum(r * r, axis=1)
            # sum((r - beta)^2) for every beta at once
            sse[i] = s2[None, :] - 2.0 * betas[:, None] * s1[None, :] + nn * betas[:, None] ** 2

    flat = int(np.argmin(sse))
    idx = np.unravel_index(flat, sse.shape)
    for name, i, ax in zip(names, idx, axes):
        if i == 0 or i == ax.size - 1:
            raise GridEdgeError(
                f"grid argmin for {name!r} is on the box edge ({ax[i]:g}); widen the {name} range"
            )
    params = tuple(float(ax[i]) for i, ax in zip(idx, axes))
    return GridFitResult(params, math.sqrt(max(float(sse[idx]), 0.0) / pl.size))
