"""Local projective measurements and the classical-correlations maximization.

Classical correlations J of a bipartite state are the maximal mutual
information of the post-measurement state over local measurements on one
subsystem. Here the measured subsystem must be a qubit and the search runs
over rank-1 projective measurements, parametrized by Bloch angles: a coarse
(theta, phi) grid followed by Nelder-Mead refinement from the best grid
points. For a rank-1 projective measurement on side B the post-measurement
mutual information reduces to

    I(rho_meas) = H(rho_A) - sum_a p_a H(rho_A | outcome a),

which is what the optimizer evaluates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np
from scipy.optimize import minimize

from .core import DensityMatrix, entropy_of, kron

COMPLETENESS_TOL = 1e-10
_P_FLOOR = 1e-14


class UnsupportedDimensionError(ValueError):
    """Measured subsystem is not a qubit; use the Koashi-Winter route in `bounds`."""


@dataclass(frozen=True)
class BlochAngles:
    """Direction on the Bloch sphere; theta in [0, pi], phi in [0, 2*pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * np.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")


@dataclass(frozen=True)
class OptimizerSettings:
    """Knobs for the classical-correlations search (CLI: --grid/--starts/--tol)."""

    grid: int = 24
    starts: int = 5
    tol: float = 1e-8
    maxiter: int = 400


DEFAULT_SETTINGS = OptimizerSettings()


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """Complete set of orthogonal projectors acting on one subsystem."""

    projectors: tuple[np.ndarray, ...]
    subsystem: int

    def __post_init__(self):
        projs = tuple(np.asarray(p, dtype=complex) for p in self.projectors)
        object.__setattr__(self, "projectors", projs)
        d = projs[0].shape[0]
        total = np.zeros((d, d), dtype=complex)
        for i, p in enumerate(projs):
            if p.shape != (d, d):
                raise ValueError("projectors must share one square shape")
            if np.max(np.abs(p - p.conj().T)) > COMPLETENESS_TOL:
                raise ValueError(f"projector {i} is not Hermitian")
            if np.max(np.abs(p @ p - p)) > COMPLETENESS_TOL:
                raise ValueError(f"projector {i} is not idempotent")
            for q in projs[:i]:
                if np.max(np.abs(p @ q)) > COMPLETENESS_TOL:
                    raise ValueError("projectors are not pairwise orthogonal")
            total += p
        if np.max(np.abs(total - np.eye(d))) > COMPLETENESS_TOL:
            raise ValueError("projectors do not sum to the identity")


@dataclass(frozen=True)
class MeasurementOptimum:
    """Best post-measurement mutual information found, with its maximizer."""

    value: float
    argmax: ProjectiveMeasurement
    angles: BlochAngles
    starts_used: int
    converged: bool


def _bloch_vector(theta: float, phi: float) -> np.ndarray:
    return np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)])


def _bloch_orthogonal(theta: float, phi: float) -> np.ndarray:
    return np.array([np.sin(theta / 2.0), -np.exp(1j * phi) * np.cos(theta / 2.0)])


def _canonical_angles(theta: float, phi: float) -> BlochAngles:
    theta = float(np.mod(theta, 2.0 * np.pi))
    if theta > np.pi:
        theta = 2.0 * np.pi - theta
        phi = phi + np.pi
    theta = min(max(theta, 0.0), np.pi)
    return BlochAngles(theta, float(np.mod(phi, 2.0 * np.pi)))


def qubit_projectors(angles: BlochAngles) -> ProjectiveMeasurement:
    """Rank-1 projectors onto +n and -n for the Bloch direction n(theta, phi)."""
    v = _bloch_vector(angles.theta, angles.phi)
    w = _bloch_orthogonal(angles.theta, angles.phi)
    return ProjectiveMeasurement((np.outer(v, v.conj()), np.outer(w, w.conj())), subsystem=0)


def apply_local_measurement(rho: DensityMatrix, m: ProjectiveMeasurement) -> DensityMatrix:
    """Post-measurement (pinched) state sum_a (I x P_a x I) rho (I x P_a x I)."""
    n = len(rho.dims)
    if not 0 <= m.subsystem < n:
        raise ValueError(f"subsystem {m.subsystem} out of range for dims {rho.dims}")
    d_sub = rho.dims[m.subsystem]
    if m.projectors[0].shape[0] != d_sub:
        raise ValueError(
            f"projector dimension {m.projectors[0].shape[0]} does not match "
            f"subsystem dimension {d_sub}"
        )
    left = np.eye(prod(rho.dims[: m.subsystem]))
    right = np.eye(prod(rho.dims[m.subsystem + 1 :]))
    out = np.zeros_like(rho.mat)
    for p in m.projectors:
        full = kron(kron(left, p), right)
        out += full @ rho.mat @ full
    out = (out + out.conj().T) / 2.0
    return DensityMatrix(out, rho.dims)


def _measured_last(rho: DensityMatrix, measured: int) -> tuple[np.ndarray, int]:
    """Tensor view (d_rest, 2, d_rest, 2) with the measured qubit as the last factor."""
    n = len(rho.dims)
    if not 0 <= measured < n:
        raise ValueError(f"measured subsystem {measured} out of range for dims {rho.dims}")
    if rho.dims[measured] != 2:
        raise UnsupportedDimensionError(
            f"direct optimization needs a qubit on the measured side, got dimension "
            f"{rho.dims[measured]}; group through the Koashi-Winter route in `bounds`"
        )
    order = tuple(i for i in range(n) if i != measured) + (measured,)
    t = rho.mat.reshape(rho.dims + rho.dims)
    t = t.transpose(order + tuple(n + i for i in order))
    d_rest = rho.dim // 2
    return t.reshape(d_rest, 2, d_rest, 2), d_rest


def angle_grid(opts: OptimizerSettings | None = None) -> np.ndarray:
    """(grid^2, 2) array of (theta, phi) search points covering the Bloch sphere.

    theta runs over [0, pi] inclusive, phi over [0, 2*pi) without the
    endpoint; the optimizers in this package all start from this family.
    """
    opts = opts or DEFAULT_SETTINGS
    thetas = np.linspace(0.0, np.pi, opts.grid)
    phis = np.linspace(0.0, 2.0 * np.pi, opts.grid, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    return np.column_stack([tt.ravel(), pp.ravel()])


def _outcome_blocks(t: np.ndarray) -> np.ndarray:
    """(4, d_rest^2) map from a flattened projector outer product to the
    unnormalized conditional block B[a, b] = sum_jk conj(v_j) v_k t[a, j, b, k]."""
    d_rest = t.shape[0]
    return np.ascontiguousarray(t.transpose(1, 3, 0, 2).reshape(4, d_rest * d_rest))


def _blocks_entropy_terms(m: np.ndarray) -> np.ndarray:
    """p log2 p - sum_i w_i log2 w_i for each block in a (..., d, d) stack."""
    w = np.clip(np.linalg.eigvalsh(m), 0.0, 1.0)
    p = w.sum(axis=-1)
    wlog = np.where(w > 0.0, w * np.log2(np.where(w > 0.0, w, 1.0)), 0.0).sum(axis=-1)
    plog = np.where(p > _P_FLOOR, p * np.log2(np.where(p > _P_FLOOR, p, 1.0)), 0.0)
    return plog - wlog


def _cond_entropy_batch(t2: np.ndarray, d_rest: int, vs: np.ndarray) -> np.ndarray:
    """sum_a p_a H(rho_A|a) for a batch of measurement vectors vs of shape (G, 2)."""
    both = np.stack([vs, np.stack([vs[:, 1].conj(), -vs[:, 0].conj()], axis=1)])
    cond = np.zeros(vs.shape[0])
    for v in both:
        outer = (v.conj()[:, :, None] * v[:, None, :]).reshape(-1, 4)
        m = (outer @ t2).reshape(-1, d_rest, d_rest)
        cond += _blocks_entropy_terms(m)
    return cond


def _cond_entropy_single(t2: np.ndarray, d_rest: int, theta: float, phi: float) -> float:
    v = _bloch_vector(theta, phi)
    w = np.array([v[1].conj(), -v[0].conj()])
    total = 0.0
    for vec in (v, w):
        outer = np.outer(vec.conj(), vec).reshape(4)
        m = (outer @ t2).reshape(d_rest, d_rest)
        total += float(_blocks_entropy_terms(m))
    return total


def classical_correlations(
    rho: DensityMatrix, measured: int, opts: OptimizerSettings | None = None
) -> MeasurementOptimum:
    """Maximize post-measurement mutual information over projective measurements.

    Parameters
    ----------
    rho : DensityMatrix
        Bipartite state once every subsystem except ``measured`` is grouped
        into the unmeasured side.
    measured : int
        Index into ``rho.dims`` of the measured qubit.
    opts : OptimizerSettings, optional
        Grid density, refinement start count, and simplex tolerance.

    Returns
    -------
    MeasurementOptimum
        Best value J in bits, the measurement attaining it, and search stats.
    """
    opts = opts or DEFAULT_SETTINGS
    t, d_rest = _measured_last(rho, measured)
    h_a = entropy_of(np.trace(t, axis1=1, axis2=3))
    t2 = _outcome_blocks(t)

    grid_pts = angle_grid(opts)
    vs = np.stack(
        [np.cos(grid_pts[:, 0] / 2.0), np.exp(1j * grid_pts[:, 1]) * np.sin(grid_pts[:, 0] / 2.0)],
        axis=1,
    )
    cond = _cond_entropy_batch(t2, d_rest, vs)

    # Stable sort keeps grid order among ties (deterministic argmax).
    ranked = np.argsort(cond, kind="stable")
    best_idx = int(ranked[0])
    best_cond = float(cond[best_idx])
    best_angles = (float(grid_pts[best_idx, 0]), float(grid_pts[best_idx, 1]))

    starts = min(opts.starts, len(ranked))
    converged = True
    for idx in ranked[:starts]:
        x0 = grid_pts[int(idx)]
        res = minimize(
            lambda x: _cond_entropy_single(t2, d_rest, x[0], x[1]),
            x0,
            method="Nelder-Mead",
            options={"xatol": opts.tol, "fatol": 1e-12, "maxiter": opts.maxiter},
        )
        converged = converged and bool(res.success)
        if res.fun < best_cond:
            best_cond = float(res.fun)
            best_angles = (float(res.x[0]), float(res.x[1]))

    angles = _canonical_angles(*best_angles)
    meas = ProjectiveMeasurement(qubit_projectors(angles).projectors, subsystem=measured)
    return MeasurementOptimum(
        value=h_a - best_cond, argmax=meas, angles=angles, starts_used=starts, converged=converged
    )
