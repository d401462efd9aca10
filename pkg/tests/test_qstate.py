"""
Qubit and two-qubit state algebra.

Run with:
    pytest tests/test_qstate.py -v
"""

import numpy as np
import pytest

from data.sampling import random_density_matrix, uniform_ball
from quantum.qstate import (
    I2,
    I4,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BlochVector,
    Ensemble,
    Projector,
    QubitDensity,
    TwoQubitDensity,
    bell_state,
    bloch_to_density,
    conditional_state_B,
    density_to_bloch,
    ensemble_from_bloch,
    is_pure,
    mixture,
    nonselective_measure,
    partial_trace_A,
    partial_trace_A_matrix,
    pauli_vector,
    polarization_vector,
    projector_A,
    purity,
    selective_measure,
    trace_distance,
    von_neumann_entropy,
)
from utils.validators import InvalidStateError, ZeroProbabilityError

LN2 = np.log(2.0)


class TestBlochDensity:
    def test_maximally_mixed(self):
        np.testing.assert_allclose(bloch_to_density([0, 0, 0]).matrix, 0.5 * I2, atol=1e-15)

    def test_sigma_z_eigenstate(self):
        np.testing.assert_allclose(bloch_to_density([0, 0, 1]).matrix, np.diag([1.0, 0.0]), atol=1e-15)

    def test_sigma_x_eigenstate(self):
        expected = 0.5 * np.array([[1, 1], [1, 1]])
        np.testing.assert_allclose(bloch_to_density([1, 0, 0]).matrix, expected, atol=1e-15)

    def test_density_to_bloch_examples(self):
        np.testing.assert_allclose(density_to_bloch(QubitDensity(0.5 * I2)).n, [0, 0, 0], atol=1e-15)
        np.testing.assert_allclose(density_to_bloch(QubitDensity(np.diag([1.0, 0.0]))).n, [0, 0, 1], atol=1e-15)
        rho = QubitDensity(0.5 * (I2 + 0.3 * SIGMA_X + 0.4 * SIGMA_Y))
        np.testing.assert_allclose(rho.bloch.n, [0.3, 0.4, 0.0], atol=1e-15)

    def test_round_trip(self, ball_points):
        """density_to_bloch ∘ bloch_to_density is the identity"""
        for n in ball_points:
            np.testing.assert_allclose(density_to_bloch(bloch_to_density(n)).n, n, atol=1e-12)
            rho = bloch_to_density(n)
            np.testing.assert_allclose(bloch_to_density(density_to_bloch(rho)).matrix, rho.matrix, atol=1e-12)

    def test_norm_violation_rejected(self):
        with pytest.raises(InvalidStateError, match="norm"):
            bloch_to_density([0.0, 0.0, 1.1])

    def test_norm_tolerance_accepted(self):
        BlochVector([0.0, 0.0, 1.0 + 5e-10])

    def test_norm_tolerance_converts_to_pure_state(self):
        rho = bloch_to_density([0.0, 0.0, 1.0 + 5e-10])
        np.testing.assert_allclose(rho.matrix, np.diag([1.0, 0.0]), atol=1e-15)
        assert von_neumann_entropy(rho) == 0.0

    def test_pauli_vector(self):
        sx, sy, sz = pauli_vector()
        np.testing.assert_array_equal(sx, SIGMA_X)
        np.testing.assert_allclose(sx @ sy, 1j * sz)


class TestDensityValidation:
    def test_negative_eigenvalue_rejected_not_clamped(self):
        with pytest.raises(InvalidStateError, match="negative eigenvalue"):
            QubitDensity(np.diag([1.1, -0.1]))

    def test_non_hermitian_rejected(self):
        with pytest.raises(InvalidStateError, match="Hermitian"):
            QubitDensity(np.array([[0.5, 0.2], [0.0, 0.5]]))

    def test_bad_trace_rejected(self):
        with pytest.raises(InvalidStateError, match="trace"):
            TwoQubitDensity(0.5 * I4)


class TestEntropy:
    def test_maximally_mixed_is_ln2(self):
        assert von_neumann_entropy(QubitDensity(0.5 * I2)) == pytest.approx(LN2, abs=1e-12)

    def test_pure_state_zero(self, sphere_points):
        for n in sphere_points[:20]:
            assert von_neumann_entropy(bloch_to_density(n)) == pytest.approx(0.0, abs=1e-12)

    def test_half_length_vector(self):
        """|n| = ½ → eigenvalues (¾, ¼)"""
        expected = -(0.75 * np.log(0.75) + 0.25 * np.log(0.25))
        assert von_neumann_entropy(bloch_to_density([0.0, 0.5, 0.0])) == pytest.approx(expected, abs=1e-12)

    def test_binary_entropy_identity_and_range(self, ball_points):
        for n in ball_points:
            r = np.linalg.norm(n)
            p = (1.0 + r) / 2.0
            binary = -(p * np.log(p) + (1 - p) * np.log(1 - p))
            s = von_neumann_entropy(bloch_to_density(n))
            assert 0.0 <= s <= LN2
            assert s == pytest.approx(binary, abs=1e-12)
            # interior points are strictly mixed
            assert s > 0.0


class TestTraceDistance:
    def test_same_state(self):
        rho = bloch_to_density([0.1, 0.2, 0.3])
        assert trace_distance(rho, rho) == 0.0

    def test_orthogonal_pure_states(self):
        assert trace_distance(bloch_to_density([0, 0, 1]), bloch_to_density([0, 0, -1])) == pytest.approx(1.0)

    def test_half_bloch_distance(self):
        d = trace_distance(bloch_to_density([0, 0, 0]), bloch_to_density([0, 0, 0.6]))
        assert d == pytest.approx(0.3, abs=1e-15)

    def test_matches_eigenvalue_definition(self, rng):
        for _ in range(20):
            a = QubitDensity(random_density_matrix(rng, 2))
            b = QubitDensity(random_density_matrix(rng, 2))
            direct = 0.5 * np.sum(np.abs(np.linalg.eigvalsh(a.matrix - b.matrix)))
            assert trace_distance(a, b) == pytest.approx(direct, abs=1e-12)

    def test_metric_properties(self, rng):
        for _ in range(50):
            a, b, c = (bloch_to_density(uniform_ball(rng)) for _ in range(3))
            assert trace_distance(a, b) == trace_distance(b, a)
            assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12

    def test_two_qubit_distance(self):
        """Pure singlet vs I/4: eigenvalues of the difference are ¾, -¼, -¼, -¼"""
        assert trace_distance(bell_state(), TwoQubitDensity(0.25 * I4)) == pytest.approx(0.75, abs=1e-12)


class TestBellAndProjectors:
    def test_bell_is_pure_with_mixed_marginal(self):
        rho = bell_state()
        assert purity(rho) == pytest.approx(1.0, abs=1e-12)
        assert is_pure(rho)
        np.testing.assert_allclose(partial_trace_A(rho).matrix, 0.5 * I2, atol=1e-12)

    def test_conditional_state_anticorrelated(self):
        for phi in np.linspace(0.0, 2 * np.pi, 9):
            zeta = polarization_vector(phi)
            state, probability = conditional_state_B(bell_state(), projector_A(phi))
            assert probability == pytest.approx(0.5, abs=1e-12)
            np.testing.assert_allclose(state.bloch.n, -zeta, atol=1e-12)

    def test_polarization_vector(self):
        np.testing.assert_allclose(polarization_vector(0.0), [1, 0, 0], atol=1e-15)
        np.testing.assert_allclose(polarization_vector(np.pi / 2), [0, 1, 0], atol=1e-15)
        for phi in np.linspace(-7, 7, 15):
            assert np.linalg.norm(polarization_vector(phi)) == pytest.approx(1.0, abs=1e-15)

    def test_polarization_rejects_non_finite(self):
        with pytest.raises(InvalidStateError):
            polarization_vector(np.inf)

    def test_projector_properties(self):
        for phi in np.linspace(0.0, 2 * np.pi, 13):
            p = projector_A(phi).matrix
            np.testing.assert_allclose(p @ p, p, atol=1e-12)
            np.testing.assert_allclose(p, p.conj().T, atol=1e-12)
            assert np.real(np.trace(p)) == pytest.approx(2.0, abs=1e-12)

    def test_projector_phi_zero_matrix(self):
        expected = np.kron(0.5 * (I2 + SIGMA_X), I2)
        np.testing.assert_allclose(projector_A(0.0).matrix, expected, atol=1e-15)

    def test_projector_rejects_non_idempotent(self):
        with pytest.raises(InvalidStateError, match="idempotent"):
            Projector(0.5 * I2)


class TestMeasurements:
    def test_nonselective_trivial_projectors(self):
        rho = bell_state()
        for p in (Projector(I4), Projector(np.zeros((4, 4)))):
            np.testing.assert_allclose(nonselective_measure(rho, p).matrix, rho.matrix, atol=1e-15)

    def test_nonselective_on_bell_splits_into_branches(self):
        rho = bell_state()
        projector = projector_A(0.7)
        out = nonselective_measure(rho, projector)
        rho1, p1 = selective_measure(rho, projector)
        rho2, p2 = selective_measure(rho, projector.complement())
        np.testing.assert_allclose(out.matrix, p1 * rho1.matrix + p2 * rho2.matrix, atol=1e-12)
        assert (p1, p2) == pytest.approx((0.5, 0.5), abs=1e-12)
        assert np.real(np.trace(out.matrix)) == pytest.approx(1.0, abs=1e-12)
        assert np.min(np.linalg.eigvalsh(out.matrix)) >= -1e-12

    def test_nonselective_marginal_is_branch_mixture(self):
        rho_phi = nonselective_measure(bell_state(), projector_A(1.1))
        np.testing.assert_allclose(partial_trace_A(rho_phi).matrix, 0.5 * I2, atol=1e-12)

    def test_selective_identity(self):
        rho = bloch_to_density([0.2, -0.1, 0.4])
        post, probability = selective_measure(rho, Projector(I2))
        np.testing.assert_allclose(post.matrix, rho.matrix, atol=1e-15)
        assert probability == pytest.approx(1.0)

    def test_selective_pure_state_in_range(self):
        rho = bloch_to_density([1, 0, 0])
        post, probability = selective_measure(rho, Projector(rho.matrix))
        np.testing.assert_allclose(post.matrix, rho.matrix, atol=1e-12)
        assert probability == pytest.approx(1.0, abs=1e-12)

    def test_selective_born_rule_on_mixed_state(self):
        post, probability = selective_measure(QubitDensity(0.5 * I2), Projector(np.diag([1.0, 0.0])))
        np.testing.assert_allclose(post.matrix, np.diag([1.0, 0.0]), atol=1e-15)
        assert probability == pytest.approx(0.5)

    def test_zero_probability_branch(self):
        with pytest.raises(ZeroProbabilityError):
            selective_measure(QubitDensity(np.diag([1.0, 0.0])), Projector(np.diag([0.0, 1.0])))


class TestPartialTrace:
    def test_product_state(self, rng):
        rho_a = random_density_matrix(rng, 2)
        rho_b = random_density_matrix(rng, 2)
        out = partial_trace_A(TwoQubitDensity(np.kron(rho_a, rho_b)))
        np.testing.assert_allclose(out.matrix, rho_b, atol=1e-12)

    def test_linearity_on_hermitian_operators(self, rng):
        for _ in range(20):
            r = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            s = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            rho, tau = r + r.conj().T, s + s.conj().T
            alpha, beta = rng.normal(size=2)
            lhs = partial_trace_A_matrix(alpha * rho + beta * tau)
            rhs = alpha * partial_trace_A_matrix(rho) + beta * partial_trace_A_matrix(tau)
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_trace_preserved(self, rng):
        rho = random_density_matrix(rng, 4)
        assert np.real(np.trace(partial_trace_A_matrix(rho))) == pytest.approx(1.0, abs=1e-12)


class TestEnsembles:
    def test_single_member(self):
        rho = bloch_to_density([0.1, 0.0, 0.2])
        np.testing.assert_allclose(mixture(Ensemble(((1.0, rho),))).matrix, rho.matrix, atol=1e-15)

    def test_two_poles_mix_to_identity(self):
        ens = ensemble_from_bloch([(0.5, [0, 0, 1]), (0.5, [0, 0, -1])])
        np.testing.assert_allclose(ens.mixture().matrix, 0.5 * I2, atol=1e-15)

    def test_weights_must_sum_to_one(self):
        with pytest.raises(InvalidStateError, match="sum"):
            ensemble_from_bloch([(0.5, [0, 0, 1]), (0.6, [0, 0, -1])])

    def test_weights_must_be_non_negative(self):
        with pytest.raises(InvalidStateError, match="must lie in"):
            ensemble_from_bloch([(1.5, [0, 0, 1]), (-0.5, [0, 0, -1])])
