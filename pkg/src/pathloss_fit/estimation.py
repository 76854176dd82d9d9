"""Closed-form least-squares fitting of the CI and ABG models.

Both fits minimize the shadow-fading standard deviation, taken here as the
RMS of the residuals with an N divisor (no degrees-of-freedom correction),
so that the nested-model ordering ABG <= CI holds on the fitting set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import AbgModel, CiModel, PathLossModel, Sample, fspl_1m, path_loss

ABG_COLUMNS = ("distance", "intercept", "frequency")
PIVOT_RTOL = 1e-9


class DegenerateDesignError(ValueError):
    """The samples do not determine the model parameters uniquely."""


@dataclass(frozen=True)
class ResidualStats:
    sf_std: float
    mean_error: float
    max_abs_error: float
    count: int

    def to_dict(self) -> dict:
        return {
            "sf_std": self.sf_std,
            "mean_error": self.mean_error,
            "max_abs_error": self.max_abs_error,
            "count": self.count,
        }


@dataclass(frozen=True)
class FitResult:
    model: PathLossModel
    stats: ResidualStats

    @property
    def sample_count(self) -> int:
        return self.stats.count


def sample_arrays(samples: Sequence[Sample]):
    """Return ``(frequency_ghz, distance_m, path_loss_db)`` as float arrays."""
    table = np.array([(s.frequency_ghz, s.distance_m, s.path_loss_db) for s in samples], dtype=float)
    table = table.reshape(-1, 3)
    return table[:, 0].copy(), table[:, 1].copy(), table[:, 2].copy()


def residual_stats(residuals) -> ResidualStats:
    r = np.asarray(residuals, dtype=float)
    if r.size == 0:
        raise ValueError("residual statistics need at least one sample")
    return ResidualStats(
        sf_std=math.sqrt(float(np.mean(r * r))),
        mean_error=float(np.mean(r)),
        max_abs_error=float(np.max(np.abs(r))),
        count=int(r.size),
    )


def evaluate(model: PathLossModel, samples: Sequence[Sample]) -> ResidualStats:
    """Residual statistics of ``model`` on ``samples``.

    ``sf_std`` is the RMS error without mean removal; ``mean_error`` exposes
    the bias separately.
    """
    if len(samples) == 0:
        raise ValueError("cannot evaluate a model on an empty sample set")
    f, d, pl = sample_arrays(samples)
    return residual_stats(pl - np.asarray(path_loss(model, f, d)))


def fit_ci(samples: Sequence[Sample]) -> FitResult:
    """Least-squares path-loss exponent with the 1 m free-space anchor fixed.

    With ``A = PL - FSPL(f, 1 m)`` and ``B = 10 log10(d)`` the exponent is
    ``sum(A*B) / sum(B*B)``. A single sample is enough as long as it is
    not at 1 m.
    """
    if len(samples) == 0:
        raise ValueError("fit_ci needs at least one sample")
    f, d, pl = sample_arrays(samples)
    a = pl - np.asarray(fspl_1m(f))
    b = 10.0 * np.log10(d)
    sbb = float(np.dot(b, b))
    if sbb == 0.0:
        raise DegenerateDesignError(
            "fit_ci: every sample is at the 1 m reference distance; the exponent is undetermined"
        )
    n = float(np.dot(a, b)) / sbb
    return FitResult(CiModel(n), residual_stats(a - n * b))


def _solve_3x3(g, rhs):
    """Gaussian elimination with partial pivoting.

    Raises DegenerateDesignError naming the column whose pivot vanished.
    """
    m = np.array(g, dtype=float)
    y = np.array(rhs, dtype=float)
    size = m.shape[0]
    tol = PIVOT_RTOL * float(np.max(np.abs(m)))
    for k in range(size):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if abs(m[p, k]) <= tol:
            raise DegenerateDesignError(
                f"fit_abg: design matrix is rank deficient; the {ABG_COLUMNS[k]!r} column "
                "is collinear with the others (need >= 2 distinct distances and >= 2 "
                "distinct frequencies not tied to each other)"
            )
        if p != k:
            m[[k, p]] = m[[p, k]]
            y[[k, p]] = y[[p, k]]
        for i in range(k + 1, size):
            factor = m[i, k] / m[k, k]
            m[i, k:] -= factor * m[k, k:]
            y[i] -= factor * y[k]
    theta = np.zeros(size)
    for k in range(size - 1, -1, -1):
        theta[k] = (y[k] - np.dot(m[k, k + 1:], theta[k + 1:])) / m[k, k]
    return theta


def fit_abg(samples: Sequence[Sample]) -> FitResult:
    """Ordinary least squares of ``PL ~ alpha*x + beta + gamma*z``.

    ``x = 10 log10(d / 1 m)`` and ``z = 10 log10(f / 1 GHz)``; the 3x3
    normal equations are solved directly.
    """
    if len(samples) == 0:
        raise ValueError("fit_abg needs at least 3 samples, got none")
    if len(samples) < 3:
        raise DegenerateDesignError(f"fit_abg needs at least 3 samples, got {len(samples)}")
    f, d, pl = sample_arrays(samples)
    design = np.column_stack([10.0 * np.log10(d), np.ones_like(d), 10.0 * np.log10(f)])
    alpha, beta, gamma = _solve_3x3(design.T @ design, design.T @ pl)
    model = AbgModel(float(alpha), float(beta), float(gamma))
    return FitResult(model, residual_stats(pl - design @ np.array([alpha, beta, gamma])))


def fit(samples: Sequence[Sample], kind: str) -> FitResult:
    if kind == "ci":
        return fit_ci(samples)
    if kind == "abg":
        return fit_abg(samples)
    raise ValueError(f"unknown model kind {kind!r}; expected 'ci' or 'abg'")
