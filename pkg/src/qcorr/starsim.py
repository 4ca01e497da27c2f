"""Star-network decoherence model: one system qubit coupled to N environment qubits.

Each environment qubit interacts once with the system through the two-qubit
"c-maybe" gate, the controlled unitary

    I_2  (+)  [[a, sqrt(1-a^2)], [sqrt(1-a^2), -a]],

which interpolates between a CNOT-like gate at a = 0 (the universe ends up
in a generalized GHZ state) and a trivial control-Z-like gate at a = 1 (the
universe stays product). Starting from |+>_S |0...0> the final state is

    (|0>_S |0>^N + |1>_S |phi_a>^N) / sqrt(2),    |phi_a> = a|0> + sqrt(1-a^2)|1>,

so every marginal needed by the correlation sweep has a small closed form
valid for any N. The brute-force statevector path exists to validate those
closed forms at small N.
"""

from __future__ import annotations

from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .bounds import H_S_CUTOFF, consensus_from_marginals
from .core import DensityMatrix, PureState, von_neumann_entropy
from .correlations import Bipartition, eof_two_qubit, mutual_information
from .measurement import OptimizerSettings, classical_correlations

BRUTE_MAX_SITES = 12


@dataclass(frozen=True)
class StarConfig:
    """Star-network parameters: environment size and gate parameter a."""

    n_env: int
    a: float

    def __post_init__(self):
        if int(self.n_env) != self.n_env or self.n_env < 1:
            raise ValueError(f"n_env must be a positive integer, got {self.n_env}")
        object.__setattr__(self, "n_env", int(self.n_env))
        if not 0.0 <= self.a <= 1.0:
            raise ValueError(f"a must lie in [0, 1], got {self.a}")
        object.__setattr__(self, "a", float(self.a))


@dataclass(frozen=True)
class SweepRow:
    """All sweep quantities at one (N, a) grid point.

    ``delta`` and ``bound`` are None exactly when ``delta_defined`` is False,
    which happens when H(rho_S) vanishes (a = 1).
    """

    n_env: int
    a: float
    h_s: float
    avg_eof: float
    avg_classical: float
    avg_discord: float
    delta: float | None
    bound: float | None
    delta_defined: bool

    def __post_init__(self):
        missing = self.delta is None or self.bound is None
        if missing == self.delta_defined:
            raise ValueError(
                "delta and bound must be present exactly when delta_defined is True"
            )


def cmaybe_gate(a: float) -> np.ndarray:
    """4x4 block-diagonal unitary controlled on the first qubit."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    s = np.sqrt(1.0 - a * a)
    gate = np.eye(4, dtype=complex)
    gate[2:, 2:] = np.array([[a, s], [s, -a]])
    return gate


def build_universe_brute(cfg: StarConfig) -> PureState:
    """Exact (1+N)-qubit final state by statevector simulation; N <= 12."""
    if cfg.n_env > BRUTE_MAX_SITES:
        raise ValueError(f"n_env = {cfg.n_env} exceeds the brute-force cap {BRUTE_MAX_SITES}")
    n = cfg.n_env
    psi = np.zeros((2,) * (n + 1), dtype=complex)
    psi[(0,) * (n + 1)] = 1.0 / np.sqrt(2.0)
    psi[(1,) + (0,) * n] = 1.0 / np.sqrt(2.0)
    gate = cmaybe_gate(cfg.a).reshape(2, 2, 2, 2)
    for site in range(1, n + 1):
        psi = np.tensordot(gate, psi, axes=[[2, 3], [0, site]])
        psi = np.moveaxis(psi, [0, 1], [0, site])
    return PureState(psi.reshape(-1), (2,) * (n + 1))


def _phi_vector(a: float) -> np.ndarray:
    return np.array([a, np.sqrt(1.0 - a * a)], dtype=complex)


def analytic_marginals(
    cfg: StarConfig,
) -> tuple[DensityMatrix, DensityMatrix, DensityMatrix | None]:
    """Closed-form marginals (rho_S, rho_S-site, rho_site-pair) for any N.

    Derived from the final state (|0>|0>^N + |1>|phi>^N)/sqrt(2): overlaps
    of the environment tails contribute <0|phi>^k = a^k coherence factors,

    rho_S         = 1/2 [[1, a^N], [a^N, 1]]
    rho_S,site    = 1/2 (|00><00| + |1 phi><1 phi|
                         + a^(N-1) (|00><1 phi| + h.c.))
    rho_site,pair = 1/2 (|00><00| + |phi phi><phi phi|)

    The pair marginal has no coherence term: tracing out the system kills
    the |0><1|_S cross terms entirely. It is None when N = 1 (no pair).
    """
    n, a = cfg.n_env, cfg.a
    phi = _phi_vector(a)

    rho_s = 0.5 * np.array([[1.0, a**n], [a**n, 1.0]], dtype=complex)

    zero_zero = np.zeros(4, dtype=complex)
    zero_zero[0] = 1.0
    one_phi = np.kron(np.array([0.0, 1.0], dtype=complex), phi)
    rho_se = 0.5 * (
        np.outer(zero_zero, zero_zero.conj())
        + np.outer(one_phi, one_phi.conj())
        + a ** (n - 1) * (np.outer(zero_zero, one_phi.conj()) + np.outer(one_phi, zero_zero.conj()))
    )

    rho_pair = None
    if n >= 2:
        phi_phi = np.kron(phi, phi)
        mat = 0.5 * (np.outer(zero_zero, zero_zero.conj()) + np.outer(phi_phi, phi_phi.conj()))
        rho_pair = DensityMatrix(mat, (2, 2))

    return DensityMatrix(rho_s, (2,)), DensityMatrix(rho_se, (2, 2)), rho_pair


def _sweep_point(cfg: StarConfig, opts: OptimizerSettings | None) -> SweepRow:
    rho_s, rho_se, _ = analytic_marginals(cfg)
    h_s = von_neumann_entropy(rho_s)
    eof = eof_two_qubit(rho_se)
    j = classical_correlations(rho_se, measured=1, opts=opts).value
    discord = mutual_information(Bipartition(rho_se, (0,), (1,))) - j

    if h_s > H_S_CUTOFF:
        # All sites share one marginal by permutation symmetry, so one site's
        # quantities give every delta_i at once.
        report = consensus_from_marginals(h_s, (1,), (j,), (h_s - eof,))
        delta: float | None = report.delta
        bound: float | None = report.delta * h_s
        defined = True
    else:
        delta, bound, defined = None, None, False
    return SweepRow(
        n_env=cfg.n_env,
        a=cfg.a,
        h_s=h_s,
        avg_eof=eof,
        avg_classical=j,
        avg_discord=discord,
        delta=delta,
        bound=bound,
        delta_defined=defined,
    )


def run_sweep(
    n_list, a_grid, opts: OptimizerSettings | None = None, threads: int = 1
) -> list[SweepRow]:
    """Sweep quantities over the (N, a) grid, in grid order (N outer, a inner).

    Points are independent; with ``threads > 1`` they are evaluated by a
    thread pool, with output order (and values) unchanged.
    """
    configs = [StarConfig(n, a) for n in n_list for a in a_grid]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda c: _sweep_point(c, opts), configs))
    return [_sweep_point(cfg, opts) for cfg in configs]
