import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import greedy_match_error, replaced_spectrum, symp_residual
from sympsurgery.errors import InconsistentRootError, InvalidInputError, InvalidValueError
from sympsurgery.spectral import ReciprocalPair, normalize_X, select_update_pair
from sympsurgery.surgery import (
    Branch,
    apply_update,
    build_R,
    canonical_R,
    commutator_residual,
    eta_roots,
    gap_d,
    general_R,
    modify,
    omega,
    rado_omega,
    rado_update,
    update_matrix,
)
from sympsurgery.sympcore import SympMatrix, random_symplectic

nonzero = st.complex_numbers(min_magnitude=0.2, max_magnitude=5.0, allow_nan=False, allow_infinity=False)
small = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)


def _example2():
    return SympMatrix(np.diag([2.0, 5.0, 0.5, 0.2]).astype(complex))


class TestScalars:
    def test_gap(self):
        assert gap_d(2, 2) == 0
        assert gap_d(2, 3) == pytest.approx(5 / 6)
        assert abs(gap_d(1j, -1j)) < 1e-15

    def test_gap_zero_rejected(self):
        with pytest.raises(InvalidValueError):
            gap_d(0, 3)

    def test_roots_at_zero(self):
        assert eta_roots(2, 3) == pytest.approx((1, -5 / 3))
        assert eta_roots(2, 2) == pytest.approx((0, -1.5))

    def test_roots_nonzero_c(self):
        d = gap_d(2, 3)
        for eta in eta_roots(2, 3, 1.0):
            assert abs(-(eta**2) + eta * (0.5 + d - 2) + 2 * d + 1) <= 1e-12

    @settings(max_examples=60, deadline=None)
    @given(nonzero, nonzero, small)
    def test_roots_are_roots(self, lam, mu, c):
        d = gap_d(lam, mu)
        b = 1 / lam + d - lam
        for eta in eta_roots(lam, mu, c):
            scale = 1 + abs(eta) ** 2 + abs(b * eta) + abs(d * lam) + abs(c)
            assert abs(-(eta**2) + b * eta + d * lam + c) <= 1e-12 * scale


class TestCoefficients:
    def test_build_r1(self):
        R = build_R(1.0, 0, 0, 2, 3).R
        np.testing.assert_allclose(R, [[0, 0.5], [1 / 3, 0]])

    def test_build_identity(self):
        np.testing.assert_array_equal(build_R(0.0, 0, 0, 2, 2).R, np.zeros((2, 2)))

    def test_build_rejects_non_root(self):
        with pytest.raises(InconsistentRootError):
            build_R(0.7, 0, 0, 2, 3)

    def test_general_residuals(self):
        for root in (1, 2):
            res = general_R(2, 3, 1, 1, root).residuals()
            assert max(res) <= 1e-12

    def test_canonical_values(self):
        np.testing.assert_allclose(canonical_R(2, 3, 1).R, [[0, 0.5], [1 / 3, 0]])
        np.testing.assert_allclose(canonical_R(2, 3, 2).R, [[0, -5 / 6], [-5, 0]])
        np.testing.assert_array_equal(canonical_R(2, 2, 1).R, np.zeros((2, 2)))

    def test_canonical_matches_general_at_zero(self):
        for b in (1, 2):
            np.testing.assert_allclose(canonical_R(2 + 1j, 0.3, b).R, general_R(2 + 1j, 0.3, 0, 0, b).R, atol=1e-14)

    def test_bad_branch(self):
        with pytest.raises(InvalidValueError):
            canonical_R(2, 3, 3)

    @settings(max_examples=60, deadline=None)
    @given(nonzero, nonzero, small, small, st.sampled_from([1, 2]))
    def test_general_satisfies_both_conditions(self, lam, mu, r11, r22, root):
        co = general_R(lam, mu, r11, r22, root)
        scale = 1 + np.abs(co.R).max() ** 2 + abs(co.d) * (abs(lam) + 1 / abs(lam))
        assert max(co.residuals()) <= 1e-11 * scale


class TestOmega:
    def test_zero(self):
        np.testing.assert_array_equal(omega(2, build_R(0.0, 0, 0, 2, 2)), np.diag([2, 0.5]))

    @pytest.mark.parametrize("coeffs", [canonical_R(2, 3, 1), canonical_R(2, 3, 2), general_R(2, 3, 1, 1)])
    def test_eigenvalues(self, coeffs):
        w = np.sort(np.linalg.eigvals(omega(2, coeffs)).real)
        np.testing.assert_allclose(w, [1 / 3, 3], atol=1e-10)

    @settings(max_examples=60, deadline=None)
    @given(nonzero, nonzero, small, small, st.sampled_from([1, 2]))
    def test_eigenvalues_property(self, lam, mu, r11, r22, root):
        # eigenvalues mu, 1/mu  <=>  trace mu + 1/mu and determinant 1
        W = omega(lam, general_R(lam, mu, r11, r22, root))
        scale = 1 + np.abs(W).max() ** 2
        assert abs(np.trace(W) - (mu + 1 / mu)) <= 1e-10 * scale
        assert abs(np.linalg.det(W) - 1) <= 1e-10 * scale


class TestApplyUpdate:
    def test_zero_r_is_identity(self):
        S = random_symplectic(3, seed=2)
        lam = np.linalg.eigvals(S.entries)[0]
        pair = select_update_pair(S, lam)
        res = apply_update(S, normalize_X(pair), canonical_R(pair.lam, pair.lam, 1))
        assert res.s_hat.entries.tobytes() == S.entries.tobytes()

    def test_example_branch1(self):
        X = normalize_X(ReciprocalPair.from_vectors(2, [1, 0, 0, 0], [0, 0, 1, 0]))
        out = apply_update(_example2(), X, canonical_R(2, 3, 1)).s_hat.entries
        np.testing.assert_allclose(out, np.diag([3, 5, 1 / 3, 0.2]), atol=1e-14)

    def test_example_branch2(self):
        X = normalize_X(ReciprocalPair.from_vectors(2, [1, 0, 0, 0], [0, 0, 1, 0]))
        out = apply_update(_example2(), X, canonical_R(2, 3, 2)).s_hat.entries
        np.testing.assert_allclose(out, np.diag([1 / 3, 5, 3, 0.2]), atol=1e-14)

    def test_modify_convenience(self):
        out = modify(_example2(), 2.0, 3.0).s_hat.entries
        np.testing.assert_allclose(out, np.diag([3, 5, 1 / 3, 0.2]), atol=1e-14)

    def test_mismatched_x(self):
        X = normalize_X(ReciprocalPair.from_vectors(2, [1, 0, 0, 0], [0, 0, 1, 0]))
        with pytest.raises(InvalidInputError):
            apply_update(_example2(), X, canonical_R(5, 3, 1))

    def test_update_matrix_form(self):
        X = normalize_X(ReciprocalPair.from_vectors(2, [1, 0, 0, 0], [0, 0, 1, 0]))
        E = update_matrix(X, canonical_R(2, 3, 1))
        S = _example2().entries
        np.testing.assert_allclose(S + E @ S, apply_update(S, X, canonical_R(2, 3, 1)).s_hat.entries)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 6), st.integers(0, 10**6), nonzero, st.sampled_from([1, 2]))
    def test_structure_and_spectrum_property(self, n, seed, mu, branch):
        S = random_symplectic(n, seed=seed)
        w = np.linalg.eigvals(S.entries)
        pair = select_update_pair(S, w[0])
        res = apply_update(S, normalize_X(pair), canonical_R(pair.lam, mu, branch))
        A = res.s_hat.entries
        assert symp_residual(A) <= 1e-8 * (1 + np.linalg.norm(A) ** 2)
        assert greedy_match_error(np.linalg.eigvals(A), replaced_spectrum(w, pair.lam, mu)) <= 1e-6

    @settings(max_examples=20, deadline=None)
    @given(st.integers(2, 5), st.integers(0, 10**6), nonzero)
    def test_involution_surgery(self, n, seed, mu):
        # replacing lam by mu and then mu back by lam restores the spectrum
        S = random_symplectic(n, seed=seed)
        w = np.linalg.eigvals(S.entries)
        lam = w[0]
        s1 = modify(S, lam, mu).s_hat
        s2 = modify(s1, mu, lam).s_hat
        assert greedy_match_error(np.linalg.eigvals(s2.entries), w) <= 1e-6

    def test_untouched_eigenvectors(self):
        S = random_symplectic(4, seed=8)
        A = S.entries
        w, V = np.linalg.eig(A)
        pair = select_update_pair(S, w[0])
        A_hat = apply_update(S, normalize_X(pair), canonical_R(pair.lam, 0.7 + 0.2j, 1)).s_hat.entries
        for k in range(w.size):
            if min(abs(w[k] - pair.lam), abs(w[k] - 1 / pair.lam)) < 1e-6:
                continue
            v = V[:, k]
            assert np.linalg.norm(A_hat @ v - w[k] * v) <= 1e-10 * np.linalg.norm(A)


class TestCommutator:
    def _setup(self, seed):
        S = random_symplectic(4, seed=seed)
        lam = np.linalg.eigvals(S.entries)[1]
        pair = select_update_pair(S, lam)
        return S, pair, normalize_X(pair)

    def test_canonical_commutes(self):
        S, pair, X = self._setup(3)
        for b in (1, 2):
            assert commutator_residual(S, X, canonical_R(pair.lam, 2.5, b)) <= 1e-10 * S.norm_fro

    def test_general_does_not(self):
        S, pair, X = self._setup(3)
        assert commutator_residual(S, X, general_R(pair.lam, 2.5, 1, 1)) > 1e-4 * S.norm_fro

    def test_identity_any_r(self):
        S = SympMatrix(np.eye(4, dtype=complex))
        pair = select_update_pair(S, 1.0)
        X = normalize_X(pair)
        for co in (canonical_R(1.0, 2.0, 1), general_R(1.0, 2.0, 0.5, 0.3j, 2)):
            assert commutator_residual(S, X, co) <= 1e-10


class TestRado:
    def test_brauer(self):
        A = np.diag([2.0, 3.0])
        x = np.array([1.0, 0.0])
        c = np.array([0.5, 0.0])
        np.testing.assert_allclose(np.sort(np.linalg.eigvals(rado_update(A, x, c)).real), [2.5, 3.0])

    def test_omega(self):
        X = np.eye(4)[:, :2]
        C = np.array([[1, 0], [0, 0], [0, 1], [0, 0]], dtype=complex)
        np.testing.assert_allclose(rado_omega([1, 1], X, C), [[2, 0], [0, 1]])

    def test_shape_mismatch(self):
        with pytest.raises(InvalidInputError):
            rado_update(np.eye(3), np.ones((3, 2)), np.ones((3, 1)))


def test_branch_enum():
    assert Branch.canonical(1) is Branch.CANONICAL1
    assert Branch.canonical("2") is Branch.CANONICAL2
    assert Branch.GENERAL.index is None
