"""Brute-force evaluators that cross-check the closed-form measures.

Everything here works directly from the definitions: the one-sided measurement
disturbance is minimized over a deterministic angle grid with pattern-search
refinement, and the covariance-matrix norm is maximized by alternating
optimization from a grid of unit-vector starts.  Results are reproducible
bit-for-bit for a fixed :class:`SearchConfig`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError
from .states import DensityMatrix, ProbTable2x2, pauli, projector_pair

_SIGMA = np.stack([pauli(i) for i in (1, 2, 3)])
_EYE2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class SearchConfig:
    """Deterministic search parameters for the brute-force evaluators."""

    coarse_grid: tuple[int, int] = (64, 128)
    refine_iters: int = 40
    refine_shrink: float = 0.5
    seed: int = 0

    def __post_init__(self):
        nt, nph = self.coarse_grid
        if nt < 32 or nph < 64:
            raise ValueError(f"coarse grid must be at least 32x64, got {nt}x{nph}")
        if self.refine_iters < 20:
            raise ValueError(f"refine_iters must be at least 20, got {self.refine_iters}")
        if not 0.0 < self.refine_shrink < 1.0:
            raise ValueError(f"refine_shrink must lie in (0, 1), got {self.refine_shrink}")


DEFAULT_SEARCH = SearchConfig()


def measurement_map(rho: DensityMatrix, theta: float, phi: float) -> DensityMatrix:
    """Dephase subsystem A in the projector basis at (theta, phi).

    Returns sum_k (P_k (x) I) rho (P_k (x) I); applying the map twice with the
    same angles changes nothing.
    """
    p1, p2 = projector_pair(theta, phi)
    k1 = linalg.kron(p1, _EYE2)
    k2 = linalg.kron(p2, _EYE2)
    return DensityMatrix(k1 @ rho.mat @ k1 + k2 @ rho.mat @ k2)


def _as_mat(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.mat
    return np.asarray(rho, dtype=complex)


def disturbance_norms(rho, thetas, phis) -> np.ndarray:
    """Trace norm of rho - P(rho) for a batch of measurement angles.

    ``thetas`` and ``phis`` are paired 1-d arrays; row k of the result equals
    ``trace_norm_hermitian(rho - measurement_map(rho, thetas[k], phis[k]))``.
    """
    mat = _as_mat(rho)
    t = np.atleast_1d(np.asarray(thetas, dtype=float))
    p = np.atleast_1d(np.asarray(phis, dtype=float))
    if t.shape != p.shape:
        raise DimensionError(f"angle arrays differ in shape: {t.shape} vs {p.shape}")
    polar = 2.0 * t
    axes = np.stack(
        [np.sin(polar) * np.cos(p), np.sin(polar) * np.sin(p), np.cos(polar)], axis=-1
    )
    proj1 = 0.5 * (_EYE2 + np.einsum("gk,kab->gab", axes, _SIGMA))
    proj2 = _EYE2 - proj1
    k1 = np.einsum("gab,cd->gacbd", proj1, _EYE2).reshape(-1, 4, 4)
    k2 = np.einsum("gab,cd->gacbd", proj2, _EYE2).reshape(-1, 4, 4)
    delta = mat - (k1 @ mat @ k1 + k2 @ mat @ k2)
    eig = np.linalg.eigvalsh(delta)
    return np.abs(eig).sum(axis=-1)


def _axis_from_angles(theta: float, phi: float) -> np.ndarray:
    polar = 2.0 * theta
    return np.array(
        [math.sin(polar) * math.cos(phi), math.sin(polar) * math.sin(phi), math.cos(polar)]
    )


def _angles_of_axes(axes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    thetas = 0.5 * np.arccos(np.clip(axes[:, 2], -1.0, 1.0))
    phis = np.arctan2(axes[:, 1], axes[:, 0])
    return thetas, phis


def _tangent_frame(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    pole = np.zeros(3)
    pole[int(np.argmin(np.abs(n)))] = 1.0
    u = np.cross(n, pole)
    u /= np.linalg.norm(u)
    return u, np.cross(n, u)


def d1_oracle(rho: DensityMatrix, cfg: SearchConfig | None = None, *, stop_below: float | None = None) -> float:
    """Minimal trace-norm disturbance under one-sided projective measurements.

    Scans a hemisphere grid of measurement axes (antipodal axes give the same
    map) and refines around the best cell with a compass pattern search.  The
    refinement steps live in the tangent plane of the axis sphere, so it does
    not degrade near the poles of the angle chart.  When ``stop_below`` is
    given, the search returns as soon as the running minimum drops below it;
    the result is then only an upper bound, which is all the callers using it
    need.
    """
    cfg = DEFAULT_SEARCH if cfg is None else cfg
    mat = _as_mat(rho)
    n_theta, n_phi = cfg.coarse_grid
    thetas = np.linspace(0.0, math.pi / 4.0, n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    tg, pg = np.meshgrid(thetas, phis, indexing="ij")
    vals = disturbance_norms(mat, tg.ravel(), pg.ravel())
    k = int(np.argmin(vals))
    best = float(vals[k])
    axis = _axis_from_angles(float(tg.ravel()[k]), float(pg.ravel()[k]))
    step = max(2.0 * (thetas[1] - thetas[0]), phis[1] - phis[0])
    for _ in range(cfg.refine_iters):
        if stop_below is not None and best <= stop_below:
            return best
        u, v = _tangent_frame(axis)
        cand = np.stack([axis + step * u, axis - step * u, axis + step * v, axis - step * v])
        cand /= np.linalg.norm(cand, axis=1, keepdims=True)
        cand_vals = disturbance_norms(mat, *_angles_of_axes(cand))
        j = int(np.argmin(cand_vals))
        if cand_vals[j] < best:
            best = float(cand_vals[j])
            axis = cand[j]
        else:
            step *= cfg.refine_shrink
    return best


def _covariance_by_traces(rho: DensityMatrix) -> np.ndarray:
    # Plain element-by-element evaluation of q_ij = <A_i B_j> - <A_i><B_j>,
    # kept deliberately separate from the vectorized production path.
    a_ops = [linalg.kron(pauli(i), _EYE2) for i in (1, 2, 3)]
    b_ops = [linalg.kron(_EYE2, pauli(j)) for j in (1, 2, 3)]
    a = np.array([linalg.trace(linalg.multiply(rho.mat, op)).real for op in a_ops])
    b = np.array([linalg.trace(linalg.multiply(rho.mat, op)).real for op in b_ops])
    q = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            both = linalg.multiply(a_ops[i], b_ops[j])
            q[i, j] = linalg.trace(linalg.multiply(rho.mat, both)).real - a[i] * b[j]
    return q


def _unit_rows(v: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(v, axis=1, keepdims=True)
    ok = norms > 1e-300
    fallback = np.zeros_like(v)
    fallback[:, 0] = 1.0
    return np.where(ok, v / np.where(ok, norms, 1.0), fallback)


def _sphere_grid(n_polar: int, n_azimuth: int) -> np.ndarray:
    th = np.linspace(0.0, math.pi, n_polar)
    ph = np.linspace(0.0, 2.0 * math.pi, n_azimuth, endpoint=False)
    tg, pg = np.meshgrid(th, ph, indexing="ij")
    return np.stack(
        [np.sin(tg) * np.cos(pg), np.sin(tg) * np.sin(pg), np.cos(tg)], axis=-1
    ).reshape(-1, 3)


def _krylov_polish(q: np.ndarray, a: np.ndarray, rounds: int = 3) -> np.ndarray:
    # Exact maximization of |Q^T a| over the plane spanned by a and (Q Q^T) a.
    # Once alternating ascent has confined a to the top-two singular subspace,
    # that plane contains the leading singular vector exactly, so the 2x2
    # restricted eigenproblem (closed-form solve) finishes the job even when
    # the top singular values are too close for power iteration to separate.
    m = q @ q.T
    for _ in range(rounds):
        w = m @ a
        w_perp = w - (a @ w) * a
        norm = np.linalg.norm(w_perp)
        if norm < 1e-300:
            break
        e = w_perp / norm
        raa = a @ m @ a
        rae = a @ m @ e
        ree = e @ m @ e
        half_gap = 0.5 * (raa - ree)
        radius = math.hypot(half_gap, rae)
        # rotation angle toward the top eigenvector of [[raa, rae], [rae, ree]]
        top = 0.5 * (raa + ree) + radius
        direction = np.array([rae, top - raa])
        dnorm = np.linalg.norm(direction)
        if dnorm < 1e-300:
            break
        direction /= dnorm
        a = direction[0] * a + direction[1] * e
        a /= np.linalg.norm(a)
    return a


def mmc_oracle(rho: DensityMatrix, cfg: SearchConfig | None = None) -> float:
    """Maximize |<a, Q b>| over unit vectors a, b by alternating optimization.

    Starts are taken on a spherical grid plus a few seeded random directions;
    each start alternates b = Q^T a / |Q^T a| and a = Q b / |Q b| until the
    objective changes by less than 1e-12.  The best iterate then gets an exact
    two-dimensional subspace polish, which removes the slow-convergence error
    left by near-degenerate top singular values.  The result equals the
    largest singular value of the covariance matrix Q.
    """
    cfg = DEFAULT_SEARCH if cfg is None else cfg
    q = _covariance_by_traces(rho)
    starts = _sphere_grid(max(cfg.coarse_grid[0] // 4, 8), max(cfg.coarse_grid[1] // 4, 16))
    rng = np.random.default_rng(cfg.seed)
    extra = _unit_rows(rng.standard_normal((8, 3)))
    a = np.vstack([starts, extra])
    b = _unit_rows(a @ q)
    prev = np.full(len(a), -1.0)
    for _ in range(500):
        a = _unit_rows(b @ q.T)
        b = _unit_rows(a @ q)
        vals = np.abs(np.einsum("ki,ij,kj->k", a, q, b))
        if float(np.abs(vals - prev).max()) < 1e-12:
            break
        prev = vals
    best = _krylov_polish(q, a[int(np.argmax(vals))])
    b_best = _unit_rows((q.T @ best)[None, :])[0]
    polished = abs(best @ q @ b_best)
    return max(float(vals.max()), float(polished))


def classical_cov(p: ProbTable2x2) -> float:
    """Covariance of the two +/-1 variables of a joint table, closed expression."""
    return (
        p.p11
        + p.p22
        - p.p12
        - p.p21
        + (p.p12 - p.p21) ** 2
        - (p.p11 - p.p22) ** 2
    )


def classical_cov_from_moments(p: ProbTable2x2) -> float:
    """Same covariance via <XY> - <X><Y>; must agree with :func:`classical_cov`."""
    ex = p.p11 + p.p12 - p.p21 - p.p22
    ey = p.p11 + p.p21 - p.p12 - p.p22
    exy = p.p11 + p.p22 - p.p12 - p.p21
    return exy - ex * ey
