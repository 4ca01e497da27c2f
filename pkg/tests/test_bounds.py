"""Tests for the inequality audits and consensus quantifiers."""

import numpy as np
import pytest

from qcorr import (
    DensityMatrix,
    OptimizerSettings,
    PureState,
    StarConfig,
    UndefinedConsensusError,
    UnsupportedDimensionError,
    bell_state,
    binary_entropy,
    build_universe_brute,
    classical_correlations,
    consensus_delta,
    consensus_from_marginals,
    continuity_chain_audit,
    density_from_pure,
    discord_bound_audit,
    env_consensus,
    env_eof_bound_audit,
    eof_bound_audit,
    eof_two_qubit,
    f_bound_audit,
    fanchini_identity_audit,
    ghz_state,
    koashi_winter_audit,
    kron,
    kw_j_complement,
    random_density_matrix,
    random_pure_state,
    reduced_density_matrix,
    relative_entropy,
    relative_entropy_bound_audit,
    relative_entropy_upper_bound,
    remark_audit,
    w_state,
)
from qcorr.bounds import make_audit


def _full_rank(dims, seed: int, eps: float = 1e-6) -> DensityMatrix:
    """Random state mixed with a sliver of the maximally mixed state."""
    rho = random_density_matrix(dims, int(np.prod(dims)), seed)
    d = rho.mat.shape[0]
    return DensityMatrix((1.0 - eps) * rho.mat + eps * np.eye(d) / d, rho.dims)


def _cq_full_rank() -> DensityMatrix:
    """Classical-quantum state, classical on the first qubit, full rank."""
    rho0 = np.diag([0.8, 0.2]).astype(complex)
    rho1 = np.array([[0.3, 0.1], [0.1, 0.7]], dtype=complex)
    mat = 0.6 * kron(np.diag([1.0, 0.0]), rho0) + 0.4 * kron(np.diag([0.0, 1.0]), rho1)
    return DensityMatrix(mat, (2, 2))


def _bell_plus_idle_universe() -> PureState:
    vec = np.kron(bell_state().vec, np.array([1.0, 0.0]))
    return PureState(vec, (2, 2, 2))


# ---------------------------------------------------------------------------
# audit record semantics
# ---------------------------------------------------------------------------


def test_make_audit_flags_follow_slack_sign():
    good = make_audit("x", 1.0, 1.5, 1e-6)
    assert good.slack == pytest.approx(0.5)
    assert good.satisfied
    borderline = make_audit("x", 1.0, 1.0 - 5e-7, 1e-6)
    assert borderline.satisfied
    bad = make_audit("x", 1.0, 0.5, 1e-6)
    assert not bad.satisfied
    assert bad.slack == pytest.approx(-0.5)


# ---------------------------------------------------------------------------
# trade-off audit (entanglement vs complement classical correlations)
# ---------------------------------------------------------------------------


def test_kw_audit_on_ghz_is_exactly_saturated():
    audit = koashi_winter_audit(ghz_state(3), (0,), (1,))
    assert audit.label == "kw"
    assert audit.satisfied
    assert audit.lhs == pytest.approx(0.0, abs=1e-12)
    assert audit.rhs == pytest.approx(0.0, abs=1e-9)
    assert audit.extras["gap"] <= 1e-9


def test_kw_audit_on_product_state_is_trivial():
    vec = np.zeros(8)
    vec[0] = 1.0
    audit = koashi_winter_audit(PureState(vec, (2, 2, 2)), (0,), (1,))
    assert audit.lhs == pytest.approx(0.0, abs=1e-12)
    assert audit.extras["gap"] <= 1e-9


def test_kw_audit_gap_stays_small_on_haar_states():
    rng = np.random.default_rng(5)
    for _ in range(20):
        psi = random_pure_state((2, 2, 2), int(rng.integers(1 << 30)))
        audit = koashi_winter_audit(psi, (0,), (1,))
        assert audit.satisfied
        assert audit.extras["gap"] <= 2e-3


def test_kw_audit_rejects_invalid_inputs():
    with pytest.raises(UnsupportedDimensionError, match="complement"):
        koashi_winter_audit(random_pure_state((2, 2, 2, 2), 7), (0,), (1,))
    with pytest.raises(ValueError, match="pure"):
        koashi_winter_audit(random_density_matrix((2, 2, 2), 8, 9), (0,), (1,))


def test_kw_j_complement_closed_cases():
    assert kw_j_complement(ghz_state(3), (0,), 1) == pytest.approx(1.0, abs=1e-12)
    assert kw_j_complement(ghz_state(4), (0,), 2) == pytest.approx(1.0, abs=1e-12)
    vec = np.zeros(8)
    vec[0] = 1.0
    assert kw_j_complement(PureState(vec, (2, 2, 2)), (0,), 1) == pytest.approx(0.0, abs=1e-12)


def test_kw_j_complement_matches_direct_optimization_at_smallest_size():
    # with two environment sites, the complement of site 1 is the single
    # qubit 2, so the saturation route can be cross-checked directly
    psi = build_universe_brute(StarConfig(2, 0.5))
    via_tradeoff = kw_j_complement(psi, (0,), 1)
    comp = reduced_density_matrix(psi, (0, 2))
    direct = classical_correlations(comp, 1).value
    assert abs(via_tradeoff - direct) <= 2e-3


def test_kw_j_complement_rejects_non_qubit_marginal():
    with pytest.raises(UnsupportedDimensionError):
        kw_j_complement(random_pure_state((2, 3, 2), 11), (0,), 1)


# ---------------------------------------------------------------------------
# consensus parameters
# ---------------------------------------------------------------------------


def test_consensus_on_ghz_shows_perfect_agreement():
    report = consensus_delta(ghz_state(4), (0,))
    assert report.h_s == pytest.approx(1.0, abs=1e-12)
    assert report.j_full == report.h_s
    for d_i, j_s, j_c in zip(report.delta_i, report.j_site, report.j_complement):
        assert abs(d_i) <= 1e-9
        assert abs(j_s - report.j_full) <= 2e-3
        assert abs(j_c - report.j_full) <= 2e-3


def test_consensus_undefined_for_unentangled_system():
    vec = np.kron(np.array([1.0, 1.0]) / np.sqrt(2.0), np.array([1.0, 0.0, 0.0, 0.0]))
    psi = PureState(vec, (2, 2, 2))
    with pytest.raises(UndefinedConsensusError):
        consensus_delta(psi, (0,))


def test_consensus_is_permutation_symmetric_on_star_states():
    psi = build_universe_brute(StarConfig(4, 0.7))
    report = consensus_delta(psi, (0,))
    assert max(report.delta_i) - min(report.delta_i) < 1e-6


def test_consensus_report_invariants_on_haar_universes():
    rng = np.random.default_rng(13)
    for _ in range(8):
        psi = random_pure_state((2, 2, 2, 2), int(rng.integers(1 << 30)))
        report = consensus_delta(psi, (0,))
        assert report.delta == pytest.approx(float(np.mean(report.delta_i)), abs=1e-12)
        for d_i in report.delta_i:
            assert -1e-9 <= d_i <= 1.0 + 1e-9


def test_delta_reaches_one_when_a_side_carries_no_information():
    # S is Bell-paired with site 1 while site 2 idles: measuring site 2
    # alone reveals nothing, so both sites are maximally contested
    report = consensus_delta(_bell_plus_idle_universe(), (0,))
    assert report.j_site[1] <= 2e-3  # idle site: J(rho_S,site2) = 0
    assert report.delta_i[1] >= 1.0 - 2e-3
    # Bell site: the complement carries nothing instead
    assert report.j_complement[0] <= 2e-3
    assert report.delta_i[0] >= 1.0 - 2e-3


def test_consensus_from_marginals_pins_j_full_and_averages():
    report = consensus_from_marginals(0.8, (1, 2), (0.8, 0.2), (0.4, 0.8))
    assert report.j_full == pytest.approx(0.8)
    assert report.delta_i[0] == pytest.approx((0.8 - 0.4) / 0.8)
    assert report.delta_i[1] == pytest.approx((0.8 - 0.2) / 0.8)
    assert report.delta == pytest.approx(float(np.mean(report.delta_i)), abs=1e-12)
    with pytest.raises(UndefinedConsensusError):
        consensus_from_marginals(0.0, (1,), (0.5,), (0.5,))


# ---------------------------------------------------------------------------
# discord and entanglement bounds
# ---------------------------------------------------------------------------


def test_discord_bound_saturates_on_ghz():
    audit = discord_bound_audit(ghz_state(4), (0,))
    assert audit.label == "discord-bound"
    assert audit.satisfied
    assert audit.lhs == pytest.approx(0.0, abs=1e-9)
    assert audit.rhs == pytest.approx(0.0, abs=2e-3)


def test_discord_bound_holds_on_haar_universes():
    rng = np.random.default_rng(17)
    for _ in range(10):
        psi = random_pure_state((2, 2, 2, 2), int(rng.integers(1 << 30)))
        assert discord_bound_audit(psi, (0,)).satisfied


def test_eof_bound_reports_per_site_and_average():
    audits = eof_bound_audit(ghz_state(4), (0,))
    labels = [a.label for a in audits]
    assert labels == ["eof-bound-site-1", "eof-bound-site-2", "eof-bound-site-3", "eof-bound-avg"]
    for audit in audits:
        assert audit.satisfied
        assert audit.lhs == pytest.approx(0.0, abs=1e-9)


def test_eof_bound_holds_on_haar_universes():
    rng = np.random.default_rng(19)
    for _ in range(10):
        psi = random_pure_state((2, 2, 2, 2), int(rng.integers(1 << 30)))
        for audit in eof_bound_audit(psi, (0,)):
            assert audit.satisfied


# ---------------------------------------------------------------------------
# no-quantum-without-classical remark
# ---------------------------------------------------------------------------


def test_remark_audit_on_product_states():
    rho = DensityMatrix(kron(np.diag([0.7, 0.3]), np.eye(2) / 2.0).astype(complex), (2, 2))
    audit = remark_audit(rho)
    assert audit.satisfied
    assert audit.extras["j"] <= 1e-6
    assert abs(audit.extras["d"]) <= 1e-6


def test_remark_audit_ignores_states_with_classical_correlations():
    rho = density_from_pure(bell_state())
    audit = remark_audit(rho)
    assert audit.satisfied
    assert audit.lhs == 0.0  # J is large, so the flag never triggers
    assert audit.extras["j"] > 0.5


def test_remark_audit_satisfied_iff_slack_within_tolerance():
    rng = np.random.default_rng(23)
    for _ in range(10):
        rho = random_density_matrix((2, 2), 4, int(rng.integers(1 << 30)))
        audit = remark_audit(rho)
        assert audit.satisfied == (audit.slack >= -audit.tolerance)
        assert audit.satisfied


# ---------------------------------------------------------------------------
# conservation identity
# ---------------------------------------------------------------------------


def test_fanchini_identity_exact_on_ghz():
    audit = fanchini_identity_audit(ghz_state(3), (0,), 1)
    assert audit.satisfied
    assert audit.lhs <= 1e-9
    for term in ("eof_site", "eof_other", "discord_site", "discord_other"):
        assert audit.extras[term] == pytest.approx(0.0, abs=1e-9)


def test_fanchini_identity_on_w_state():
    audit = fanchini_identity_audit(w_state(3), (0,), 2)
    assert audit.satisfied
    assert audit.lhs <= 5e-3
    assert audit.extras["eof_site"] > 0.1  # W marginals are genuinely entangled


def test_fanchini_identity_on_haar_states():
    rng = np.random.default_rng(29)
    for _ in range(10):
        psi = random_pure_state((2, 2, 2), int(rng.integers(1 << 30)))
        assert fanchini_identity_audit(psi, (0,), 1).lhs <= 5e-3


def test_fanchini_identity_rejects_bad_inputs():
    with pytest.raises(UnsupportedDimensionError):
        fanchini_identity_audit(random_pure_state((2, 2, 2, 2), 31), (0,), 1)
    with pytest.raises(ValueError, match="site"):
        fanchini_identity_audit(random_pure_state((2, 2, 2), 37), (0,), 0)


# ---------------------------------------------------------------------------
# continuity chain
# ---------------------------------------------------------------------------


def test_continuity_chain_requires_full_rank():
    with pytest.raises(ValueError, match="full-rank"):
        continuity_chain_audit(density_from_pure(bell_state()), 1)


def test_continuity_chain_on_classical_quantum_state():
    rho = _cq_full_rank()
    audit = continuity_chain_audit(rho, 0)
    assert audit.satisfied
    assert audit.lhs <= 2e-6  # measuring the classical side leaves no discord
    assert audit.extras["m2"] <= 1e-9  # its eigenbasis pinching is a fixed point


def test_continuity_chain_on_perturbed_classical_quantum_state():
    bell = density_from_pure(bell_state()).mat
    mat = (1.0 - 1e-3) * _cq_full_rank().mat + 1e-3 * bell
    audit = continuity_chain_audit(DensityMatrix(mat, (2, 2)), 0)
    assert audit.satisfied
    assert audit.extras["m2"] <= 1e-2


def test_continuity_chain_on_random_full_rank_states():
    rng = np.random.default_rng(41)
    for _ in range(4):
        rho = _full_rank((2, 2), int(rng.integers(1 << 30)))
        audit = continuity_chain_audit(rho, 1)
        assert audit.label == "continuity"
        assert audit.satisfied
        assert audit.rhs <= audit.extras["m2"] + 1e-9
        assert audit.extras["pinch_dev"] <= 1e-9


# ---------------------------------------------------------------------------
# spectral relative-entropy bound
# ---------------------------------------------------------------------------


def test_relative_entropy_bound_is_zero_at_equal_states():
    rho = _full_rank((2,), 43)
    assert relative_entropy_upper_bound(rho, rho) == pytest.approx(0.0, abs=1e-12)


def test_relative_entropy_bound_commuting_qubit_fixtures():
    x = DensityMatrix(np.diag([0.75, 0.25]).astype(complex), (2,))
    y = DensityMatrix(np.eye(2, dtype=complex) / 2.0, (2,))
    bound = relative_entropy_upper_bound(x, y)
    rel = relative_entropy(x, y)
    assert bound >= rel - 1e-12
    assert bound == pytest.approx(0.18872187554086717, abs=1e-12)
    assert rel == pytest.approx(1.0 - binary_entropy(0.25), abs=1e-12)
    # rank-deficient x: the second bound term takes its zero limit value
    pure = DensityMatrix(np.diag([1.0, 0.0]).astype(complex), (2,))
    assert relative_entropy_upper_bound(pure, y) == pytest.approx(1.0, abs=1e-12)
    assert relative_entropy(pure, y) == pytest.approx(1.0, abs=1e-12)


def test_relative_entropy_bound_rejects_singular_reference():
    x = _full_rank((2,), 47)
    pure = DensityMatrix(np.diag([1.0, 0.0]).astype(complex), (2,))
    with pytest.raises(ValueError, match="full rank"):
        relative_entropy_upper_bound(x, pure)
    with pytest.raises(ValueError, match="dimension"):
        relative_entropy_upper_bound(x, _full_rank((3,), 53))


def test_relative_entropy_bound_dominates_on_random_pairs():
    rng = np.random.default_rng(59)
    for k in range(30):
        d = (2, 3, 4)[k % 3]
        x = _full_rank((d,), int(rng.integers(1 << 30)))
        y = _full_rank((d,), int(rng.integers(1 << 30)))
        audit = relative_entropy_bound_audit(x, y)
        assert audit.label == "jens"
        assert audit.satisfied
        assert relative_entropy(x, y) <= relative_entropy_upper_bound(x, y) + 1e-9


# ---------------------------------------------------------------------------
# f-function audit at the optimal measurement
# ---------------------------------------------------------------------------


def test_f_bound_trivial_on_maximally_mixed_state():
    rho = DensityMatrix(np.eye(4, dtype=complex) / 4.0, (2, 2))
    audit = f_bound_audit(rho, 1)
    assert audit.satisfied
    assert audit.lhs == pytest.approx(0.0, abs=1e-12)
    assert audit.rhs == pytest.approx(0.0, abs=1e-10)


def test_f_bound_on_classical_quantum_state():
    mat = _cq_full_rank().mat.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
    audit = f_bound_audit(DensityMatrix(mat, (2, 2)), 1)  # classical side last
    assert audit.satisfied


def test_f_bound_requires_full_rank():
    with pytest.raises(ValueError, match="full-rank"):
        f_bound_audit(density_from_pure(bell_state()), 1)


def test_f_bound_on_random_full_rank_states():
    rng = np.random.default_rng(61)
    for _ in range(8):
        rho = _full_rank((2, 2), int(rng.integers(1 << 30)))
        audit = f_bound_audit(rho, 1)
        assert audit.label == "f-bound"
        assert audit.satisfied


# ---------------------------------------------------------------------------
# environment-internal consensus and the pairwise entanglement bound
# ---------------------------------------------------------------------------


def test_env_consensus_on_ghz_environment():
    report = env_consensus(ghz_state(4))
    assert all(report.defined)
    for h, d_eps in zip(report.entropies, report.delta_eps_i):
        assert h == pytest.approx(1.0, abs=1e-12)
        assert abs(d_eps) <= 1e-9


def test_env_consensus_flags_product_environment_undefined():
    vec = np.zeros(8)
    vec[0] = 1.0
    report = env_consensus(PureState(vec, (2, 2, 2)))
    assert not any(report.defined)
    assert all(d is None for d in report.delta_eps_i)


def test_env_consensus_symmetric_on_w_state():
    report = env_consensus(w_state(3))
    values = [d for d in report.delta_eps_i if d is not None]
    assert len(values) == 3
    assert max(values) - min(values) < 1e-6


def test_env_consensus_definition_recoverable_from_fields():
    report = env_consensus(random_pure_state((2, 2, 2), 67))
    for i, (h, d_eps) in enumerate(zip(report.entropies, report.delta_eps_i)):
        j_min = min(v for j, v in enumerate(report.j_matrix[i]) if j != i)
        assert d_eps == pytest.approx(1.0 - j_min / h, abs=1e-12)


def test_env_eof_bound_saturates_on_ghz():
    audit = env_eof_bound_audit(ghz_state(4), 0, 1)
    assert audit.label == "env-bound"
    assert audit.satisfied
    assert audit.lhs == pytest.approx(0.0, abs=1e-12)
    assert audit.rhs == pytest.approx(0.0, abs=1e-9)


def test_env_eof_bound_on_w_state_pairs():
    report = env_consensus(w_state(3))
    pair = reduced_density_matrix(w_state(3), (0, 1))
    audit = env_eof_bound_audit(w_state(3), 0, 1, report=report)
    assert audit.satisfied
    assert audit.lhs == pytest.approx(eof_two_qubit(pair), abs=1e-12)


def test_env_eof_bound_rejects_mixed_environments():
    with pytest.raises(ValueError, match="pure"):
        env_eof_bound_audit(random_density_matrix((2, 2, 2), 8, 71), 0, 1)


def test_env_eof_bound_holds_on_haar_environments():
    rng = np.random.default_rng(73)
    for _ in range(4):
        psi = random_pure_state((2, 2, 2, 2), int(rng.integers(1 << 30)))
        report = env_consensus(psi)
        for i in range(4):
            for j in range(4):
                if i != j and report.defined[i]:
                    assert env_eof_bound_audit(psi, i, j, report=report).satisfied
