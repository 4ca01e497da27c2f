"""Consensus quantifiers and inequality audits for system-environment states.

The functions here quantify how much of a system's information different
environment fragments agree on, and audit the inequalities that tie those
quantifiers to bipartite discord and entanglement of formation:

* the entanglement / classical-correlation trade-off (Koashi-Winter), which
  is saturated when the global state is pure and therefore doubles as a
  cheap route to classical correlations of a large complement fragment;
* per-site consensus parameters delta_i and their mean delta, with the
  discord and entanglement-of-formation bounds they imply;
* a conservation identity connecting the two entanglements and the two
  discords of a three-qubit pure state;
* the continuity chain bounding discord by minimized relative entropies of
  pinched states, together with the projective-pinching identity
  H(rho || rho_P) = H(rho_P) - H(rho);
* a spectral upper bound on relative entropy from the trace distance and
  the smallest eigenvalues of the two states;
* environment-internal consensus over pairwise classical correlations and
  the pairwise entanglement bound it implies.

Every audit is reported as a `BoundAudit` carrying lhs, rhs, slack and the
tolerance that decided `satisfied`, so reports serialize uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .core import (
    DensityMatrix,
    PureState,
    _relative_entropy_arrays,
    density_from_pure,
    entropy_of,
    partial_trace,
    reduced_density_matrix,
    relative_entropy,
    trace_distance_half,
    von_neumann_entropy,
)
from .correlations import eof_two_qubit
from .measurement import (
    DEFAULT_SETTINGS,
    OptimizerSettings,
    UnsupportedDimensionError,
    _bloch_vector,
    _measured_last,
    angle_grid,
    classical_correlations,
)

H_S_CUTOFF = 1e-9
OPTIMIZATION_SLACK = 2e-3
NUMERIC_SLACK = 1e-6
_FULL_RANK_CUTOFF = 1e-12


class UndefinedConsensusError(ValueError):
    """Consensus parameters divide by H(rho_S); raised when that entropy is ~0."""


@dataclass(frozen=True)
class BoundAudit:
    """One audited inequality: lhs <= rhs up to the recorded tolerance."""

    label: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    tolerance: float
    extras: dict = field(default_factory=dict)


def make_audit(label: str, lhs: float, rhs: float, tolerance: float, **extras) -> BoundAudit:
    slack = rhs - lhs
    return BoundAudit(
        label=label,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(slack),
        satisfied=bool(slack >= -tolerance),
        tolerance=float(tolerance),
        extras=extras,
    )


@dataclass(frozen=True)
class ConsensusReport:
    """Per-site consensus parameters of a system against its environment sites."""

    h_s: float
    j_full: float
    sites: tuple[int, ...]
    j_site: tuple[float, ...]
    j_complement: tuple[float, ...]
    delta_i: tuple[float, ...]
    delta: float


@dataclass(frozen=True)
class EnvConsensusReport:
    """Environment-internal disagreement from pairwise classical correlations.

    ``j_matrix[i][j]`` holds J of the (site_i, site_j) marginal measured on
    site j; diagonal entries are None. Sites whose marginal entropy is ~0
    carry ``delta_eps_i = None`` and ``defined[i] = False``, and their
    ``j_matrix`` row is left unpopulated (None) since no ratio uses it.
    """

    entropies: tuple[float, ...]
    j_matrix: tuple[tuple[float | None, ...], ...]
    delta_eps_i: tuple[float | None, ...]
    defined: tuple[bool, ...]


def _as_density(state: PureState | DensityMatrix) -> DensityMatrix:
    return density_from_pure(state) if isinstance(state, PureState) else state


def _marginal(state: PureState | DensityMatrix, keep) -> DensityMatrix:
    if isinstance(state, PureState):
        return reduced_density_matrix(state, keep)
    return partial_trace(state, keep)


def _require_pure(psi, what: str) -> PureState:
    if not isinstance(psi, PureState):
        raise ValueError(f"{what} requires a pure global state, got {type(psi).__name__}")
    return psi


def _single_qubit_index(psi: PureState, s, what: str) -> int:
    s = tuple(int(i) for i in (s if hasattr(s, "__iter__") else (s,)))
    if len(s) != 1 or psi.dims[s[0]] != 2:
        raise UnsupportedDimensionError(f"{what} must be a single qubit, got subsystems {s}")
    return s[0]


def _pos_in_sorted(pair, x) -> int:
    """Position of subsystem ``x`` inside the marginal kept over ``pair``.

    Partial traces order kept subsystems ascending, so the measured index
    into the marginal is x's rank within the pair.
    """
    return sorted(pair).index(x)


def _mutual_info_two(rho: DensityMatrix) -> float:
    h_a = von_neumann_entropy(partial_trace(rho, (0,)))
    h_b = von_neumann_entropy(partial_trace(rho, (1,)))
    return h_a + h_b - von_neumann_entropy(rho)


def koashi_winter_audit(psi: PureState, s, f, opts: OptimizerSettings | None = None) -> BoundAudit:
    """Audit E(rho_SF) <= H(rho_S) - J(rho_S,complement) on a pure state.

    For pure global states the trade-off is an equality, so the audit also
    reports the saturation gap |E - (H - J)| in ``extras["gap"]``. The
    complement of S and F must be a single qubit so J can be optimized
    directly.
    """
    _require_pure(psi, "trade-off audit")
    s_idx = _single_qubit_index(psi, s, "system block")
    f_idx = _single_qubit_index(psi, f, "fragment block")
    rest = tuple(i for i in range(len(psi.dims)) if i not in (s_idx, f_idx))
    if len(rest) != 1 or psi.dims[rest[0]] != 2:
        raise UnsupportedDimensionError(
            f"complement {rest} must be a single qubit for direct optimization"
        )
    h_s = von_neumann_entropy(reduced_density_matrix(psi, (s_idx,)))
    eof = eof_two_qubit(reduced_density_matrix(psi, (s_idx, f_idx)))
    comp = reduced_density_matrix(psi, (s_idx, rest[0]))
    j = classical_correlations(comp, measured=_pos_in_sorted((s_idx, rest[0]), rest[0]), opts=opts)
    return make_audit("kw", eof, h_s - j.value, OPTIMIZATION_SLACK, gap=abs(h_s - j.value - eof))


def kw_j_complement(psi: PureState, s, site: int) -> float:
    """J of the system against everything but one site, via trade-off saturation.

    For a pure global state, J(rho_{S, complement of site}) equals
    H(rho_S) - E(rho_{S,site}), which needs only a two-qubit closed form
    instead of a measurement optimization over the large complement.
    """
    _require_pure(psi, "complement classical correlations")
    s_idx = _single_qubit_index(psi, s, "system block")
    marg = reduced_density_matrix(psi, (s_idx, int(site)))
    if marg.dims != (2, 2):
        raise UnsupportedDimensionError(f"system-site marginal has dims {marg.dims}, need (2, 2)")
    h_s = von_neumann_entropy(reduced_density_matrix(psi, (s_idx,)))
    return h_s - eof_two_qubit(marg)


def consensus_from_marginals(
    h_s: float, sites, j_site, j_complement
) -> ConsensusReport:
    """Assemble a ConsensusReport from precomputed per-site quantities.

    J of the system against the whole environment is pinned to H(rho_S),
    which a measurement in the Schmidt basis attains for pure universes.
    """
    if h_s <= H_S_CUTOFF:
        raise UndefinedConsensusError(
            f"H(rho_S) = {h_s:.3e} <= {H_S_CUTOFF}; consensus parameters are undefined"
        )
    j_site = tuple(float(v) for v in j_site)
    j_complement = tuple(float(v) for v in j_complement)
    delta_i = tuple(
        (h_s - min(js, jc)) / h_s for js, jc in zip(j_site, j_complement, strict=True)
    )
    return ConsensusReport(
        h_s=float(h_s),
        j_full=float(h_s),
        sites=tuple(int(i) for i in sites),
        j_site=j_site,
        j_complement=j_complement,
        delta_i=delta_i,
        delta=float(np.mean(delta_i)),
    )


def consensus_delta(psi: PureState, s, opts: OptimizerSettings | None = None) -> ConsensusReport:
    """Per-site consensus parameters delta_i and their mean for a pure universe.

    delta_i = [J(rho_S,env) - min{J(rho_S,site_i), J(rho_S,env-without-i)}] / H(rho_S)

    with J(rho_S,env) = H(rho_S) (pure universe), the site term optimized
    directly on the two-qubit marginal, and the complement term obtained
    from trade-off saturation (`kw_j_complement`).
    """
    _require_pure(psi, "consensus parameters")
    s_idx = _single_qubit_index(psi, s, "system block")
    sites = tuple(i for i in range(len(psi.dims)) if i != s_idx)
    for i in sites:
        if psi.dims[i] != 2:
            raise UnsupportedDimensionError(f"environment site {i} has dimension {psi.dims[i]}")
    h_s = von_neumann_entropy(reduced_density_matrix(psi, (s_idx,)))
    if h_s <= H_S_CUTOFF:
        raise UndefinedConsensusError(
            f"H(rho_S) = {h_s:.3e} <= {H_S_CUTOFF}; consensus parameters are undefined"
        )
    j_site = []
    j_complement = []
    for i in sites:
        marg = reduced_density_matrix(psi, (s_idx, i))
        measured = _pos_in_sorted((s_idx, i), i)
        j_site.append(classical_correlations(marg, measured, opts).value)
        j_complement.append(h_s - eof_two_qubit(marg))
    return consensus_from_marginals(h_s, sites, j_site, j_complement)


def _site_marginals(psi: PureState, s_idx: int, sites) -> list[tuple[DensityMatrix, int]]:
    return [
        (reduced_density_matrix(psi, (s_idx, i)), _pos_in_sorted((s_idx, i), i)) for i in sites
    ]


def discord_bound_audit(
    psi: PureState, s, opts: OptimizerSettings | None = None
) -> BoundAudit:
    """Audit mean site discord <= delta * H(rho_S) for a pure universe."""
    report = consensus_delta(psi, s, opts)
    s_idx = _single_qubit_index(psi, s, "system block")
    discords = []
    for (marg, measured), j in zip(_site_marginals(psi, s_idx, report.sites), report.j_site):
        discords.append(_mutual_info_two(marg) - j)
    tol = NUMERIC_SLACK + OPTIMIZATION_SLACK
    return make_audit(
        "discord-bound",
        float(np.mean(discords)),
        report.delta * report.h_s,
        tol,
        delta=report.delta,
        h_s=report.h_s,
    )


def eof_bound_audit(
    psi: PureState, s, opts: OptimizerSettings | None = None
) -> list[BoundAudit]:
    """Audit E(rho_S,site_i) <= delta_i * H(rho_S) per site, plus the averaged form.

    Returns one audit per environment site followed by one labelled
    ``eof-bound-avg`` for mean(E) <= delta * H(rho_S).
    """
    report = consensus_delta(psi, s, opts)
    s_idx = _single_qubit_index(psi, s, "system block")
    tol = NUMERIC_SLACK + OPTIMIZATION_SLACK
    audits = []
    eofs = []
    for (marg, _), site, d_i in zip(
        _site_marginals(psi, s_idx, report.sites), report.sites, report.delta_i
    ):
        e = eof_two_qubit(marg)
        eofs.append(e)
        audits.append(make_audit(f"eof-bound-site-{site}", e, d_i * report.h_s, tol, site=site))
    audits.append(
        make_audit(
            "eof-bound-avg",
            float(np.mean(eofs)),
            report.delta * report.h_s,
            tol,
            delta=report.delta,
        )
    )
    return audits


REMARK_J_CUTOFF = 1e-4
REMARK_D_CEILING = 2e-3


def remark_audit(rho: DensityMatrix, opts: OptimizerSettings | None = None) -> BoundAudit:
    """Audit "no quantum correlations without classical correlations".

    Computes J and D on the same measured side of a two-qubit state. The
    audited quantity is the discord conditional on vanishing classical
    correlations: lhs is D when J < 1e-4 and 0 otherwise, rhs is the 2e-3
    ceiling, so a counterexample (J ~ 0 with sizable D) shows up as a
    violated audit.
    """
    if rho.dims != (2, 2):
        raise UnsupportedDimensionError(f"remark audit needs a two-qubit state, got {rho.dims}")
    j = classical_correlations(rho, measured=1, opts=opts).value
    d = _mutual_info_two(rho) - j
    lhs = d if j < REMARK_J_CUTOFF else 0.0
    return make_audit("remark", lhs, REMARK_D_CEILING, 0.0, j=j, d=d)


def fanchini_identity_audit(
    psi: PureState, s, site: int, opts: OptimizerSettings | None = None
) -> BoundAudit:
    """Audit the conservation identity on a three-qubit pure state.

    E(rho_S,other) + E(rho_S,site) = D(rho_S,site-measured)
                                   + D(rho_S,other-measured)

    holds exactly for pure three-qubit states; the audit reports the
    absolute gap between the two sides against a slack budget that covers
    the measurement optimization inside both discord terms.
    """
    _require_pure(psi, "conservation audit")
    if psi.dims != (2, 2, 2):
        raise UnsupportedDimensionError(f"conservation audit needs 3 qubits, got dims {psi.dims}")
    s_idx = _single_qubit_index(psi, s, "system block")
    site = int(site)
    if site == s_idx or not 0 <= site < 3:
        raise ValueError(f"site {site} must be an environment qubit distinct from {s_idx}")
    other = next(i for i in range(3) if i not in (s_idx, site))

    terms = {}
    sides = {"site": site, "other": other}
    for name, idx in sides.items():
        marg = reduced_density_matrix(psi, (s_idx, idx))
        measured = _pos_in_sorted((s_idx, idx), idx)
        terms[f"eof_{name}"] = eof_two_qubit(marg)
        terms[f"discord_{name}"] = (
            _mutual_info_two(marg) - classical_correlations(marg, measured, opts).value
        )
    lhs_sum = terms["eof_other"] + terms["eof_site"]
    rhs_sum = terms["discord_site"] + terms["discord_other"]
    return make_audit("fanchini", abs(lhs_sum - rhs_sum), 0.0, 5e-3, **terms)


def _require_full_rank(mat: np.ndarray, what: str) -> None:
    lam_min = float(np.linalg.eigvalsh(mat).min())
    if lam_min <= _FULL_RANK_CUTOFF:
        raise ValueError(f"{what} requires a full-rank state; min eigenvalue {lam_min:.3e}")


class _PinchEvaluator:
    """Relative entropies of a state against its pinchings, one Bloch direction at a time.

    Works in a basis with the measured qubit as the last tensor factor.
    Every evaluation computes the relative entropies from the definition and
    checks them against the pinching identity H(rho||rho_P) = H(rho_P) - H(rho),
    tracking the worst deviation seen.
    """

    def __init__(self, rho: DensityMatrix, measured: int):
        t, d_rest = _measured_last(rho, measured)
        self.t = t
        self.rho_perm = t.reshape(d_rest * 2, d_rest * 2)
        self.rho_f = np.trace(t, axis1=0, axis2=2)
        self.h_full = entropy_of(self.rho_perm)
        self.h_f = entropy_of(self.rho_f)
        self.max_identity_dev = 0.0

    def __call__(self, theta: float, phi: float) -> tuple[float, float]:
        """Returns (H(rho||rho_P), H(rho_F||rho_F,P)) for the direction (theta, phi)."""
        v = _bloch_vector(theta, phi)
        w = np.array([v[1].conj(), -v[0].conj()])
        sigma_t = np.zeros_like(self.t)
        sigma_f = np.zeros_like(self.rho_f)
        for u in (v, w):
            p = np.outer(u, u.conj())
            sigma_t += np.einsum("jm,ambn,nk->ajbk", p, self.t, p)
            sigma_f += p @ self.rho_f @ p
        d = self.rho_perm.shape[0]
        sigma = sigma_t.reshape(d, d)
        sigma = (sigma + sigma.conj().T) / 2.0
        sigma_f = (sigma_f + sigma_f.conj().T) / 2.0

        r_full = _relative_entropy_arrays(self.rho_perm, sigma)
        r_marg = _relative_entropy_arrays(self.rho_f, sigma_f)
        self.max_identity_dev = max(
            self.max_identity_dev,
            abs(r_full - (entropy_of(sigma) - self.h_full)),
            abs(r_marg - (entropy_of(sigma_f) - self.h_f)),
        )
        return r_full, r_marg


def _refine(objective, x0, opts: OptimizerSettings):
    return minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={"xatol": opts.tol, "fatol": 1e-12, "maxiter": opts.maxiter},
    )


def continuity_chain_audit(
    rho: DensityMatrix, measured: int, opts: OptimizerSettings | None = None
) -> BoundAudit:
    """Audit the discord continuity chain D <= m1 <= m2 on a full-rank state.

    m1 = min over pinchings P of [H(rho||rho_P) - H(rho_F||rho_F,P)] and
    m2 = min over pinchings of H(rho||rho_P), both minimized over the same
    measurement family as `classical_correlations` (grid plus simplex
    refinement). m1 <= m2 is enforced structurally by evaluating the m1
    objective at m2's minimizer, so the audited link is D <= m1; m2 and the
    worst pinching-identity deviation ride along in ``extras``.
    """
    opts = opts or DEFAULT_SETTINGS
    _require_full_rank(rho.mat, "continuity audit")
    j = classical_correlations(rho, measured, opts).value
    rest = tuple(i for i in range(len(rho.dims)) if i != measured)
    h_rest = von_neumann_entropy(partial_trace(rho, rest))
    h_meas = von_neumann_entropy(partial_trace(rho, (measured,)))
    discord = h_rest + h_meas - von_neumann_entropy(rho) - j

    ev = _PinchEvaluator(rho, measured)
    grid = angle_grid(opts)
    vals = np.array([ev(th, ph) for th, ph in grid])
    m1_vals, m2_vals = vals[:, 0] - vals[:, 1], vals[:, 0]

    def m1_obj(x):
        r_full, r_marg = ev(x[0], x[1])
        return r_full - r_marg

    def m2_obj(x):
        return ev(x[0], x[1])[0]

    starts = min(opts.starts, len(grid))
    m1 = float(m1_vals.min())
    for idx in np.argsort(m1_vals, kind="stable")[:starts]:
        m1 = min(m1, float(_refine(m1_obj, grid[int(idx)], opts).fun))
    m2 = float(m2_vals.min())
    best_m2_x = grid[int(np.argsort(m2_vals, kind="stable")[0])]
    for idx in np.argsort(m2_vals, kind="stable")[:starts]:
        res = _refine(m2_obj, grid[int(idx)], opts)
        if res.fun < m2:
            m2 = float(res.fun)
            best_m2_x = res.x
    # Evaluating m1's objective at m2's minimizer keeps m1 <= m2 structural.
    m1 = min(m1, m1_obj(best_m2_x))

    tol = OPTIMIZATION_SLACK + NUMERIC_SLACK
    return make_audit(
        "continuity",
        discord,
        m1,
        tol,
        m2=m2,
        pinch_dev=ev.max_identity_dev,
        classical=j,
    )


def relative_entropy_upper_bound(x: DensityMatrix, y: DensityMatrix) -> float:
    """Spectral upper bound on H(x||y) from trace distance and minimal eigenvalues.

    bound = (lmin(y) + d) * log2(1 + d/lmin(y)) - lmin(x) * log2(1 + d/lmin(x))

    with d the trace distance. Requires y full rank; the second term is the
    limit value 0 when lmin(x) = 0.
    """
    if x.dims != y.dims:
        raise ValueError(f"dimension mismatch: {x.dims} vs {y.dims}")
    lmin_y = float(np.linalg.eigvalsh(y.mat).min())
    if lmin_y <= 0.0:
        raise ValueError(f"second argument must be full rank, min eigenvalue {lmin_y:.3e}")
    lmin_x = max(0.0, float(np.linalg.eigvalsh(x.mat).min()))
    d = trace_distance_half(x, y)
    if d == 0.0:
        return 0.0
    first = (lmin_y + d) * np.log2(1.0 + d / lmin_y)
    second = 0.0 if lmin_x == 0.0 else lmin_x * np.log2(1.0 + d / lmin_x)
    return float(first - second)


def relative_entropy_bound_audit(x: DensityMatrix, y: DensityMatrix) -> BoundAudit:
    """Audit H(x||y) <= relative_entropy_upper_bound(x, y)."""
    return make_audit("jens", relative_entropy(x, y), relative_entropy_upper_bound(x, y), 1e-9)


def f_bound_audit(
    rho: DensityMatrix, measured: int, opts: OptimizerSettings | None = None
) -> BoundAudit:
    """Audit H(rho||rho_P~) <= eps + f(rho_F, P~) at the J-optimal measurement P~.

    eps = H(rho||rho_P~) - H(rho_F||rho_F,P~) is the continuity gap at P~ and
    f is the spectral relative-entropy bound evaluated on the measured
    marginal, so the audit closes the loop between the two.
    """
    opts = opts or DEFAULT_SETTINGS
    _require_full_rank(rho.mat, "f-function audit")
    best = classical_correlations(rho, measured, opts)
    ev = _PinchEvaluator(rho, measured)
    theta, phi = best.angles.theta, best.angles.phi
    r_full, r_marg = ev(theta, phi)
    eps = r_full - r_marg

    v = _bloch_vector(theta, phi)
    w = np.array([v[1].conj(), -v[0].conj()])
    sigma_f = sum(np.outer(u, u.conj()) @ ev.rho_f @ np.outer(u, u.conj()) for u in (v, w))
    sigma_f = (sigma_f + sigma_f.conj().T) / 2.0
    f_val = relative_entropy_upper_bound(
        DensityMatrix(ev.rho_f, (2,)), DensityMatrix(sigma_f, (2,))
    )
    return make_audit("f-bound", r_full, eps + f_val, NUMERIC_SLACK, eps=eps, f=f_val)


def env_consensus(
    env: PureState | DensityMatrix, opts: OptimizerSettings | None = None
) -> EnvConsensusReport:
    """Pairwise-J disagreement quantifier delta^e_i across environment sites.

    delta^e_i = 1 - min over j != i of J(rho_site_i,site_j) / H(rho_site_i),
    with J measured on site j. Sites with H(rho_site_i) ~ 0 are flagged
    undefined instead of raising.
    """
    state = _as_density(env)
    n = len(state.dims)
    if any(d != 2 for d in state.dims):
        raise UnsupportedDimensionError(f"all environment sites must be qubits, got {state.dims}")
    entropies = tuple(
        von_neumann_entropy(_marginal(env, (i,))) for i in range(n)
    )
    live = [h > H_S_CUTOFF for h in entropies]
    j_matrix = [[None] * n for _ in range(n)]
    for i in range(n):
        for jj in range(i + 1, n):
            if not (live[i] or live[jj]):
                continue
            marg = _marginal(env, (i, jj))
            if live[i]:
                j_matrix[i][jj] = classical_correlations(marg, measured=1, opts=opts).value
            if live[jj]:
                j_matrix[jj][i] = classical_correlations(marg, measured=0, opts=opts).value
    delta = []
    defined = []
    for i in range(n):
        if entropies[i] <= H_S_CUTOFF:
            delta.append(None)
            defined.append(False)
            continue
        j_min = min(j_matrix[i][jj] for jj in range(n) if jj != i)
        delta.append(1.0 - j_min / entropies[i])
        defined.append(True)
    return EnvConsensusReport(
        entropies=entropies,
        j_matrix=tuple(tuple(row) for row in j_matrix),
        delta_eps_i=tuple(delta),
        defined=tuple(defined),
    )


def env_eof_bound_audit(
    env: PureState | DensityMatrix,
    i: int,
    j: int,
    report: EnvConsensusReport | None = None,
    opts: OptimizerSettings | None = None,
) -> BoundAudit:
    """Audit E(rho_site_i,site_j) <= delta^e_i * H(rho_site_i) for one site pair.

    Pass a precomputed ``report`` to amortize the pairwise-J optimization
    when auditing many pairs of the same state.
    """
    if isinstance(env, DensityMatrix):
        raise ValueError(
            "pairwise entanglement bound is derived for pure environments; "
            "purify or pass a PureState"
        )
    report = report or env_consensus(env, opts)
    i, j = int(i), int(j)
    if i == j:
        raise ValueError("need two distinct sites")
    if not report.defined[i]:
        raise UndefinedConsensusError(f"site {i} has ~zero entropy; bound undefined")
    marg = _marginal(env, (min(i, j), max(i, j)))
    eof = eof_two_qubit(marg)
    return make_audit(
        "env-bound",
        eof,
        report.delta_eps_i[i] * report.entropies[i],
        OPTIMIZATION_SLACK,
        site_i=i,
        site_j=j,
    )
