import numpy as np
import pytest

from udw_msc.qmat import (
    eigensystem2,
    kron,
    partial_trace,
    pauli,
    trace_distance,
    validate_density,
)
from udw_msc.udw_state import coeffs_to_density, steady_state_coeffs


def random_density(rng, dim=4):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_hermitian(rng, dim=2):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


def singlet():
    psi = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2.0)
    return np.outer(psi, psi.conj())


class TestPauli:
    def test_sigma_z_is_diag(self):
        assert np.array_equal(pauli(3), np.diag([1.0, -1.0]).astype(complex))

    def test_involution(self):
        for i in (1, 2, 3):
            assert np.allclose(pauli(i) @ pauli(i), np.eye(2), atol=1e-15)

    def test_algebra(self):
        assert np.allclose(pauli(1) @ pauli(2), 1j * pauli(3), atol=1e-15)
        assert np.allclose(pauli(2) @ pauli(3), 1j * pauli(1), atol=1e-15)

    @pytest.mark.parametrize("bad", [0, 4, -1, "x"])
    def test_invalid_index(self, bad):
        with pytest.raises(ValueError):
            pauli(bad)


class TestKron:
    def test_identity(self):
        eye = np.eye(2, dtype=complex)
        assert np.array_equal(kron(eye, eye), np.eye(4, dtype=complex))

    def test_projector_block(self):
        proj = np.diag([1.0, 0.0]).astype(complex)
        assert np.array_equal(kron(proj, np.eye(2)), np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex))

    def test_trace_identity(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            assert abs(np.trace(kron(a, b)) - np.trace(a) * np.trace(b)) < 1e-12

    def test_shape_check(self):
        with pytest.raises(ValueError):
            kron(np.eye(3), np.eye(2))


class TestPartialTrace:
    def test_product_state_factorizes(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            rho_a = random_density(rng, 2)
            rho_b = random_density(rng, 2)
            joint = np.kron(rho_a, rho_b)
            assert np.abs(partial_trace(joint, "A") - rho_b).max() < 1e-12
            assert np.abs(partial_trace(joint, "B") - rho_a).max() < 1e-12

    def test_singlet_reduces_to_maximally_mixed(self):
        assert np.abs(partial_trace(singlet(), "A") - np.eye(2) / 2).max() < 1e-12

    def test_x_state_contraction(self):
        # Oracle: direct index contraction rho_B[b,b'] = sum_a rho[2a+b, 2a+b'].
        c = steady_state_coeffs(0.5, 0.3)
        rho = coeffs_to_density(c)
        expected = np.zeros((2, 2), dtype=complex)
        for b in range(2):
            for bp in range(2):
                expected[b, bp] = sum(rho[2 * a + b, 2 * a + bp] for a in range(2))
        assert np.abs(expected - np.diag([c.a_pop + c.c_pop, c.c_pop + c.b_pop])).max() < 1e-15
        assert np.abs(partial_trace(rho, "A") - expected).max() < 1e-15

    def test_preserves_trace_and_positivity(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            rho = random_density(rng, 4)
            for side in ("A", "B"):
                red = partial_trace(rho, side)
                assert abs(np.trace(red) - 1.0) < 1e-12
                assert np.linalg.eigvalsh(red).min() > -1e-12

    def test_rejects_invalid_density(self):
        with pytest.raises(ValueError):
            partial_trace(np.eye(4, dtype=complex), "A")  # trace 4

    def test_rejects_bad_side(self):
        with pytest.raises(ValueError):
            partial_trace(np.eye(4, dtype=complex) / 4, "C")


class TestEigensystem2:
    def test_diagonal(self):
        es = eigensystem2(np.diag([0.7, 0.3]).astype(complex))
        assert np.allclose(es.eigenvalues, [0.7, 0.3])
        assert np.abs(es.eigenvectors - np.eye(2)).max() < 1e-15
        assert not es.degenerate

    def test_maximally_mixed_is_degenerate(self):
        assert eigensystem2(np.eye(2, dtype=complex) / 2).degenerate

    def test_plus_state_mixture(self):
        m = np.array([[0.5, 0.25], [0.25, 0.5]], dtype=complex)
        es = eigensystem2(m)
        assert np.allclose(es.eigenvalues, [0.75, 0.25])
        s = 1.0 / np.sqrt(2.0)
        assert np.abs(es.eigenvectors[:, 0] - np.array([s, s])).max() < 1e-12
        assert np.abs(es.eigenvectors[:, 1] - np.array([s, -s])).max() < 1e-12

    def test_reconstruction_and_orthonormality(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            m = random_hermitian(rng)
            es = eigensystem2(m)
            v = es.eigenvectors
            assert np.abs(v.conj().T @ v - np.eye(2)).max() < 1e-12
            recon = v @ np.diag(es.eigenvalues) @ v.conj().T
            assert np.abs(recon - m).max() <= 1e-10
            assert es.eigenvalues[0] >= es.eigenvalues[1]

    def test_phase_convention(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            v = eigensystem2(random_hermitian(rng)).eigenvectors
            for col in v.T:
                lead = next(c for c in col if abs(c) > 1e-12)
                assert abs(lead.imag) < 1e-12
                assert lead.real > 0.0

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            eigensystem2(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


class TestValidateDensity:
    def test_maximally_mixed_ok(self):
        assert validate_density(np.eye(4, dtype=complex) / 4).ok

    def test_positivity_violation_magnitude(self):
        report = validate_density(np.diag([1.5, -0.5]).astype(complex))
        assert not report.ok
        assert abs(report.min_eigenvalue + 0.5) < 1e-12
        assert any("positivity" in v for v in report.violations())

    def test_steady_state_point(self):
        assert validate_density(coeffs_to_density(steady_state_coeffs(0.5, 0.3))).ok

    def test_steady_family_is_positive_on_grid(self):
        # The X-matrix spectrum is {A, B, C + D, C - D}; all must be >= 0.
        for delta0 in np.linspace(-3.0, 1.0, 17):
            for gamma in np.linspace(0.0, 1.0, 11):
                c = steady_state_coeffs(float(delta0), float(gamma))
                rho = coeffs_to_density(c)
                assert validate_density(rho).ok, (delta0, gamma)
                expected = sorted([c.a_pop, c.b_pop, c.c_pop + c.d_coh, c.c_pop - c.d_coh])
                assert np.abs(np.linalg.eigvalsh(rho) - expected).max() < 1e-12

    def test_shape_check(self):
        with pytest.raises(ValueError):
            validate_density(np.eye(3) / 3)


class TestTraceDistance:
    def test_identical_states(self):
        assert trace_distance(np.eye(4) / 4, np.eye(4) / 4) == 0.0

    def test_orthogonal_pure_states(self):
        a = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
        b = np.diag([0.0, 0.0, 0.0, 1.0]).astype(complex)
        assert abs(trace_distance(a, b) - 1.0) < 1e-12

    def test_diagonal_matches_classical_distance(self):
        p = np.diag([0.5, 0.3, 0.2, 0.0]).astype(complex)
        q = np.diag([0.25, 0.25, 0.25, 0.25]).astype(complex)
        expected = 0.5 * np.abs(np.diagonal(p) - np.diagonal(q)).sum()
        assert abs(trace_distance(p, q) - expected) < 1e-12
