"""Tests for projective measurements and the classical-correlations optimizer."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qcorr import (
    Bipartition,
    BlochAngles,
    DensityMatrix,
    OptimizerSettings,
    ProjectiveMeasurement,
    UnsupportedDimensionError,
    apply_local_measurement,
    bell_state,
    binary_entropy,
    classical_correlations,
    density_from_pure,
    kron,
    mutual_information,
    partial_trace,
    random_density_matrix,
    relative_entropy,
    von_neumann_entropy,
    qubit_projectors,
)


def _mutual_info(rho: DensityMatrix) -> float:
    n = len(rho.dims)
    h_a = von_neumann_entropy(partial_trace(rho, tuple(range(n - 1))))
    h_b = von_neumann_entropy(partial_trace(rho, (n - 1,)))
    return h_a + h_b - von_neumann_entropy(rho)


def _measured_mutual_info(rho: DensityMatrix, theta: float, phi: float) -> float:
    """Post-measurement mutual information straight from the definition."""
    meas = qubit_projectors(BlochAngles(theta, phi))
    meas = ProjectiveMeasurement(meas.projectors, len(rho.dims) - 1)
    return _mutual_info(apply_local_measurement(rho, meas))


# ---------------------------------------------------------------------------
# projector construction
# ---------------------------------------------------------------------------


def test_bloch_angles_validate_ranges():
    with pytest.raises(ValueError):
        BlochAngles(-0.1, 0.0)
    with pytest.raises(ValueError):
        BlochAngles(np.pi + 0.1, 0.0)
    with pytest.raises(ValueError):
        BlochAngles(0.5, 2.0 * np.pi)


def test_qubit_projectors_at_north_pole_are_computational():
    meas = qubit_projectors(BlochAngles(0.0, 0.0))
    assert_allclose(meas.projectors[0], np.diag([1.0, 0.0]), atol=1e-15)
    assert_allclose(meas.projectors[1], np.diag([0.0, 1.0]), atol=1e-15)


def test_qubit_projectors_on_equator_are_plus_minus():
    meas = qubit_projectors(BlochAngles(np.pi / 2.0, 0.0))
    plus = np.full((2, 2), 0.5)
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]])
    assert_allclose(meas.projectors[0], plus, atol=1e-12)
    assert_allclose(meas.projectors[1], minus, atol=1e-12)


def test_qubit_projectors_complete_and_orthogonal_for_random_angles():
    rng = np.random.default_rng(5)
    for _ in range(25):
        angles = BlochAngles(rng.uniform(0.0, np.pi), rng.uniform(0.0, 2.0 * np.pi))
        p0, p1 = qubit_projectors(angles).projectors
        assert np.max(np.abs(p0 + p1 - np.eye(2))) <= 1e-12
        assert np.max(np.abs(p0 @ p1)) <= 1e-12
        assert np.max(np.abs(p0 @ p0 - p0)) <= 1e-12


def test_projective_measurement_rejects_incomplete_sets():
    p0 = np.diag([1.0, 0.0]).astype(complex)
    with pytest.raises(ValueError, match="identity"):
        ProjectiveMeasurement((p0,), 0)
    with pytest.raises(ValueError, match="idempotent"):
        ProjectiveMeasurement((p0 * 0.5, np.diag([0.5, 1.0]).astype(complex)), 0)


# ---------------------------------------------------------------------------
# post-measurement states
# ---------------------------------------------------------------------------


def test_apply_local_measurement_fixes_block_diagonal_states():
    rho = DensityMatrix(np.diag([0.4, 0.1, 0.2, 0.3]).astype(complex), (2, 2))
    meas = qubit_projectors(BlochAngles(0.0, 0.0))
    meas = ProjectiveMeasurement(meas.projectors, 1)
    assert_allclose(apply_local_measurement(rho, meas).mat, rho.mat, atol=1e-14)


def test_apply_local_measurement_decoheres_bell_state():
    rho = density_from_pure(bell_state())
    meas = ProjectiveMeasurement(qubit_projectors(BlochAngles(0.0, 0.0)).projectors, 1)
    expected = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
    assert_allclose(apply_local_measurement(rho, meas).mat, expected, atol=1e-14)


def test_apply_local_measurement_is_idempotent():
    rng = np.random.default_rng(9)
    for _ in range(10):
        rho = random_density_matrix((2, 2), 4, int(rng.integers(1 << 30)))
        angles = BlochAngles(rng.uniform(0.0, np.pi), rng.uniform(0.0, 2.0 * np.pi))
        meas = ProjectiveMeasurement(qubit_projectors(angles).projectors, 1)
        once = apply_local_measurement(rho, meas)
        twice = apply_local_measurement(once, meas)
        assert np.max(np.abs(twice.mat - once.mat)) <= 1e-12


def test_apply_local_measurement_satisfies_pinching_identity():
    rng = np.random.default_rng(13)
    for _ in range(10):
        rho = random_density_matrix((2, 2), 4, int(rng.integers(1 << 30)))
        angles = BlochAngles(rng.uniform(0.0, np.pi), rng.uniform(0.0, 2.0 * np.pi))
        meas = ProjectiveMeasurement(qubit_projectors(angles).projectors, 1)
        pinched = apply_local_measurement(rho, meas)
        gap = relative_entropy(rho, pinched) - (
            von_neumann_entropy(pinched) - von_neumann_entropy(rho)
        )
        assert abs(gap) <= 1e-9


def test_apply_local_measurement_never_increases_mutual_information():
    rng = np.random.default_rng(17)
    for _ in range(10):
        rho = random_density_matrix((2, 2), 4, int(rng.integers(1 << 30)))
        angles = BlochAngles(rng.uniform(0.0, np.pi), rng.uniform(0.0, 2.0 * np.pi))
        meas = ProjectiveMeasurement(qubit_projectors(angles).projectors, 1)
        pinched = apply_local_measurement(rho, meas)
        assert _mutual_info(pinched) <= _mutual_info(rho) + 1e-10


def test_apply_local_measurement_rejects_dimension_mismatch():
    rho = random_density_matrix((2, 3), 6, 21)
    meas = ProjectiveMeasurement(qubit_projectors(BlochAngles(0.0, 0.0)).projectors, 1)
    with pytest.raises(ValueError, match="dimension"):
        apply_local_measurement(rho, meas)


# ---------------------------------------------------------------------------
# classical correlations
# ---------------------------------------------------------------------------


def test_classical_correlations_of_product_state_vanish():
    rho_a = random_density_matrix((2,), 2, 25)
    rho_b = random_density_matrix((2,), 2, 29)
    joint = DensityMatrix(kron(rho_a.mat, rho_b.mat), (2, 2))
    best = classical_correlations(joint, 1)
    assert abs(best.value) <= 1e-10


def test_classical_correlations_of_bell_state_reach_one():
    best = classical_correlations(density_from_pure(bell_state()), 1)
    assert best.value == pytest.approx(1.0, abs=1e-9)


def test_classical_correlations_of_classical_mixture_hit_binary_entropy():
    mat = np.diag([0.7, 0.0, 0.0, 0.3]).astype(complex)
    rho = DensityMatrix(mat, (2, 2))
    best = classical_correlations(rho, 1)
    assert best.value == pytest.approx(binary_entropy(0.3), abs=1e-9)
    # the embedding basis is optimal; a coarse definition-route grid agrees
    dense = max(
        _measured_mutual_info(rho, theta, phi)
        for theta in np.linspace(0.0, np.pi, 31)
        for phi in np.linspace(0.0, 2.0 * np.pi, 31, endpoint=False)
    )
    assert best.value >= dense - 1e-9


def test_classical_correlations_bounded_by_marginal_entropies():
    rng = np.random.default_rng(33)
    for _ in range(8):
        rho = random_density_matrix((2, 2), 4, int(rng.integers(1 << 30)))
        best = classical_correlations(rho, 1)
        h_a = von_neumann_entropy(partial_trace(rho, (0,)))
        h_b = von_neumann_entropy(partial_trace(rho, (1,)))
        assert -1e-10 <= best.value <= min(h_a, h_b) + 1e-9
        assert best.value <= _mutual_info(rho) + 1e-9


def test_classical_correlations_invariant_under_local_unitaries():
    rng = np.random.default_rng(39)
    for _ in range(5):
        rho = random_density_matrix((2, 2), 4, int(rng.integers(1 << 30)))
        gen_u = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        gen_v = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        u, _ = np.linalg.qr(gen_u)
        v, _ = np.linalg.qr(gen_v)
        w = kron(u, v)
        rotated = DensityMatrix(w @ rho.mat @ w.conj().T, (2, 2))
        a = classical_correlations(rho, 1).value
        b = classical_correlations(rotated, 1).value
        assert abs(a - b) <= 2e-6


def test_classical_correlations_stable_under_denser_grid():
    rng = np.random.default_rng(43)
    for _ in range(5):
        rho = random_density_matrix((2, 2), 4, int(rng.integers(1 << 30)))
        coarse = classical_correlations(rho, 1, OptimizerSettings(grid=24)).value
        fine = classical_correlations(rho, 1, OptimizerSettings(grid=48)).value
        assert abs(coarse - fine) < 1e-6


def test_classical_correlations_tie_break_is_deterministic():
    rho_a = random_density_matrix((2,), 2, 47)
    rho_b = random_density_matrix((2,), 2, 51)
    joint = DensityMatrix(kron(rho_a.mat, rho_b.mat), (2, 2))
    first = classical_correlations(joint, 1)
    second = classical_correlations(joint, 1)
    assert first.angles == second.angles
    assert_allclose(first.argmax.projectors[0], second.argmax.projectors[0], atol=0)


def test_classical_correlations_reject_non_qubit_measured_side():
    rho = random_density_matrix((2, 3), 6, 55)
    with pytest.raises(UnsupportedDimensionError):
        classical_correlations(rho, 1)


def test_optimum_value_never_exceeds_unmeasured_mutual_information():
    rng = np.random.default_rng(57)
    for _ in range(8):
        rho = random_density_matrix((2, 2), int(rng.integers(1, 5)), int(rng.integers(1 << 30)))
        best = classical_correlations(rho, 1)
        b = Bipartition(rho, (0,), (1,))
        assert best.value <= mutual_information(b) + 1e-9


def test_classical_correlations_measure_first_subsystem_too():
    """Measuring side A of rho equals measuring side B of the swapped state."""
    rng = np.random.default_rng(63)
    for _ in range(5):
        rho = random_density_matrix((2, 2), 4, int(rng.integers(1 << 30)))
        swapped = DensityMatrix(
            rho.mat.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4), (2, 2)
        )
        a = classical_correlations(rho, 0).value
        b = classical_correlations(swapped, 1).value
        assert abs(a - b) <= 2e-6
