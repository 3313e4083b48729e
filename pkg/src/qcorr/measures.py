"""The four correlation measures for two-qubit states.

mmc                  largest singular value t1 of the covariance matrix Q
correlation_distance (|t1+t2+t3| + |t1+t2-t3| + |t1-t2+t3| + |-t1+t2+t3|) / 4
negativity           trace norm of the partial transpose minus 1
d1                   minimal trace-norm disturbance under one-sided projective
                     measurement; closed form on X-shaped states, otherwise a
                     grid-search minimization
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFormulaError
from .linalg import singular_values_3, trace_norm_hermitian
from .oracles import SearchConfig, d1_oracle
from .states import (
    DensityMatrix,
    XStateParams,
    bloch_vectors,
    correlation_tensor,
    is_x_shaped,
    partial_transpose,
    x_state,
)

X_PATTERN_TOL = 1e-12
DEGENERACY_TOL = 1e-9
DENOMINATOR_TOL = 1e-14


@dataclass(frozen=True)
class MeasureReport:
    """All four measures for one state, plus the data they derive from."""

    mmc: float
    correlation_distance: float
    negativity: float
    d1: float
    d1_method: str
    singular_values: tuple[float, float, float]
    bloch_a: tuple[float, float, float]
    bloch_b: tuple[float, float, float]

    def __post_init__(self):
        if abs(self.mmc - self.singular_values[0]) > 1e-12:
            raise ValueError("mmc must equal the largest singular value")
        low = self.mmc - 1e-12
        high = 1.5 * self.mmc + 1e-12
        if not low <= self.correlation_distance <= high:
            raise ValueError(
                "correlation distance must lie between mmc and 1.5*mmc, got "
                f"{self.correlation_distance} for mmc {self.mmc}"
            )


def covariance_matrix(rho: DensityMatrix) -> np.ndarray:
    """Q_ij = tr(rho sigma_i (x) sigma_j) - a_i b_j with marginal Bloch vectors a, b."""
    a, b = bloch_vectors(rho)
    return correlation_tensor(rho) - np.outer(a, b)


def mmc(rho: DensityMatrix) -> float:
    """Maximal mutual correlation: the largest singular value of Q."""
    return float(singular_values_3(covariance_matrix(rho))[0])


def _distance_from_singular_values(t) -> float:
    t1, t2, t3 = (float(v) for v in t)
    return 0.25 * (
        abs(t1 + t2 + t3) + abs(t1 + t2 - t3) + abs(t1 - t2 + t3) + abs(-t1 + t2 + t3)
    )


def correlation_distance(rho: DensityMatrix) -> float:
    """Trace-norm distance between rho and the product of its marginals.

    Evaluates to t1 when t1 >= t2 + t3 and to (t1 + t2 + t3) / 2 otherwise.
    """
    return _distance_from_singular_values(singular_values_3(covariance_matrix(rho)))


def negativity(rho: DensityMatrix) -> float:
    """Normalized negativity ||rho^PT||_1 - 1, clamped at zero.

    The clamp only absorbs eigenvalue noise on separability-boundary states;
    the exact value is never below zero.
    """
    value = trace_norm_hermitian(partial_transpose(rho)) - 1.0
    return value if value > 0.0 else 0.0


def d1_x_state(
    params: XStateParams, cfg: SearchConfig | None = None
) -> tuple[float, str]:
    """Trace-norm discord of an X-shaped state, with the method that produced it.

    Uses the closed form in terms of x = 2(rho11 + rho22) - 1 and
    alpha = (2(rho23 + rho14), 2(rho23 - rho14), 1 - 2(rho22 + rho33)).
    That expression breaks down when x = 0 and |alpha1| = |alpha2| = |alpha3|;
    there the value is obtained by direct minimization instead and the method
    flag reads "oracle".
    """
    x = 2.0 * (params.rho11 + params.rho22) - 1.0
    a1 = 2.0 * (params.rho23 + params.rho14)
    a2 = 2.0 * (params.rho23 - params.rho14)
    a3 = 1.0 - 2.0 * (params.rho22 + params.rho33)
    degenerate = (
        abs(x) < DEGENERACY_TOL
        and abs(abs(a1) - abs(a2)) < DEGENERACY_TOL
        and abs(abs(a2) - abs(a3)) < DEGENERACY_TOL
    )
    if degenerate:
        return d1_oracle(x_state(params), cfg), "oracle"
    big = max(a3 * a3, a2 * a2 + x * x)
    small = min(a3 * a3, a1 * a1)
    den = big - small + a1 * a1 - a2 * a2
    if abs(den) < DENOMINATOR_TOL:
        raise DegenerateFormulaError(
            f"closed-form denominator {den:.3e} vanishes outside the handled "
            "degenerate case; refusing to guess"
        )
    num = big * a1 * a1 - small * a2 * a2
    return math.sqrt(max(num, 0.0) / den), "closed_form"


def full_report(rho: DensityMatrix, cfg: SearchConfig | None = None) -> MeasureReport:
    """Compute all four measures for one state.

    d1 takes the closed-form route whenever the matrix has the X sparsity
    pattern (off-pattern entries below 1e-12); anything borderline goes to the
    slower direct minimization.
    """
    t = singular_values_3(covariance_matrix(rho))
    a, b = bloch_vectors(rho)
    if is_x_shaped(rho.mat, X_PATTERN_TOL):
        d1, method = d1_x_state(XStateParams.from_density_matrix(rho), cfg)
    else:
        d1, method = d1_oracle(rho, cfg), "oracle"
    return MeasureReport(
        mmc=float(t[0]),
        correlation_distance=_distance_from_singular_values(t),
        negativity=negativity(rho),
        d1=float(d1),
        d1_method=method,
        singular_values=(float(t[0]), float(t[1]), float(t[2])),
        bloch_a=tuple(float(v) for v in a),
        bloch_b=tuple(float(v) for v in b),
    )
