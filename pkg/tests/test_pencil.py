import numpy as np
import pytest

from _oracles import greedy_match_error, replaced_spectrum
from sympsurgery.errors import IllPosedError, InvalidEigenpairError, InvalidInputError
from sympsurgery.pencil import (
    SympPencil,
    conditioning_bound,
    pencil_apply_update,
    pencil_eigs,
    pencil_rado,
    pencil_residual,
    pencil_select_update_pair,
    pencil_update_forms,
)
from sympsurgery.spectral import ReciprocalPair, normalize_X, select_update_pair
from sympsurgery.surgery import apply_update, canonical_R, general_R, rado_update
from sympsurgery.sympcore import random_symplectic


def _g(N, seed):
    rng = np.random.default_rng(seed)
    return np.eye(N) + 0.3 * (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / np.sqrt(N)


def _random_pencil(n, seed):
    S = random_symplectic(n, seed=seed)
    G = _g(2 * n, seed + 1)
    return S, G, SympPencil(G @ S.entries, G)


class TestResidual:
    def test_identity(self):
        assert pencil_residual(np.eye(4), np.eye(4)) == 0

    def test_symplectic_a(self):
        S = random_symplectic(3, seed=0).entries
        assert pencil_residual(S, np.eye(6)) <= 1e-12 * np.linalg.norm(S) ** 2

    def test_scaled(self):
        assert pencil_residual(2 * np.eye(4), np.eye(4)) == pytest.approx(6.0)

    def test_shape_mismatch(self):
        with pytest.raises(InvalidInputError):
            pencil_residual(np.eye(4), np.eye(2))


class TestRado:
    def test_c_zero(self):
        A = np.diag([2.0, 3.0])
        A2, B2 = pencil_rado(A, np.eye(2), np.eye(2)[:, :1], np.zeros((2, 1)))
        np.testing.assert_array_equal(A2, A)

    def test_reduces_to_matrix_rado(self):
        rng = np.random.default_rng(1)
        A = np.diag([1.0, 2.0, 3.0])
        X = np.eye(3)[:, :2]
        C = rng.standard_normal((3, 2))
        A2, _ = pencil_rado(A, np.eye(3), X, C, lams=[1.0, 2.0])
        np.testing.assert_allclose(A2, rado_update(A, X, C))

    def test_brauer(self):
        A2, B2 = pencil_rado(np.diag([2.0, 3.0]), np.eye(2), [1.0, 0.0], [0.75, 0.0])
        np.testing.assert_allclose(np.sort(np.linalg.eigvals(np.linalg.solve(B2, A2)).real), [2.75, 3.0])

    def test_singular_b(self):
        with pytest.raises(InvalidInputError):
            pencil_rado(np.eye(2), np.zeros((2, 2)), [1.0, 0.0], [1.0, 0.0])

    def test_rank_deficient_x(self):
        with pytest.raises(InvalidInputError):
            pencil_rado(np.eye(2), np.eye(2), np.ones((2, 2)), np.ones((2, 2)))

    def test_bad_eigenpair(self):
        with pytest.raises(InvalidEigenpairError):
            pencil_rado(np.diag([2.0, 3.0]), np.eye(2), [1.0, 0.0], [1.0, 0.0], lams=[3.0])


class TestEigs:
    def test_2x2(self):
        pairs = pencil_eigs(SympPencil(np.diag([2.0, 0.5]), np.eye(2)))
        assert pairs == [(2, 0.5)]

    def test_4x4(self):
        pairs = pencil_eigs(SympPencil(np.diag([2.0, 3.0, 0.5, 1 / 3]), np.eye(4)))
        assert sorted(round(a.real * b.real, 12) for a, b in pairs) == [1.0, 1.0]
        assert sorted(round(min(a.real, b.real), 12) for a, b in pairs) == [round(1 / 3, 12), 0.5]

    def test_random_matches_matrix(self):
        S, G, P = _random_pencil(4, 10)
        got = np.concatenate(pencil_eigs(P))
        want = np.linalg.eigvals(S.entries)
        assert greedy_match_error(got, want) <= 1e-8

    def test_singular(self):
        with pytest.raises(IllPosedError):
            pencil_eigs(SympPencil(np.eye(2), np.diag([1.0, 0.0])))

    def test_validated(self):
        _, _, P = _random_pencil(3, 4)
        SympPencil.validated(P.A, P.B)
        with pytest.raises(IllPosedError):
            SympPencil.validated(np.eye(2), np.diag([1.0, 1e-14]))


class TestUpdate:
    def test_zero_r(self):
        P = SympPencil(np.diag([2.0, 0.5]).astype(complex), np.eye(2))
        X = normalize_X(ReciprocalPair.from_vectors(2.0, [1, 0], [0, 1]))
        out = pencil_apply_update(P, X, canonical_R(2.0, 2.0, 1))
        np.testing.assert_array_equal(out.A, P.A)
        np.testing.assert_array_equal(out.B, P.B)

    def test_reduces_to_matrix(self):
        P = SympPencil(np.diag([2.0, 5.0, 0.5, 0.2]).astype(complex), np.eye(4))
        X = normalize_X(ReciprocalPair.from_vectors(2.0, [1, 0, 0, 0], [0, 0, 1, 0]))
        out = pencil_apply_update(P, X, canonical_R(2.0, 3.0, 1))
        np.testing.assert_allclose(out.A, np.diag([3, 5, 1 / 3, 0.2]), atol=1e-14)

    def test_same_spectrum_as_matrix_case(self):
        S, G, P = _random_pencil(4, 20)
        lam = np.linalg.eigvals(S.entries)[2]
        mu = 0.8 - 0.4j
        pair = pencil_select_update_pair(P, lam)
        out = pencil_apply_update(P, normalize_X(pair), canonical_R(pair.lam, mu, 1))
        mpair = select_update_pair(S, lam)
        ref = apply_update(S, normalize_X(mpair), canonical_R(mpair.lam, mu, 1)).s_hat.entries
        got = np.concatenate(pencil_eigs(out))
        assert greedy_match_error(got, np.linalg.eigvals(ref)) <= 1e-8
        np.testing.assert_array_equal(out.B, P.B)

    def test_wrong_eigenpair(self):
        P = SympPencil(np.diag([2.0, 0.5]).astype(complex), np.eye(2))
        X = normalize_X(ReciprocalPair.from_vectors(2.0, [0, 1], [1, 0]))
        with pytest.raises(InvalidEigenpairError):
            pencil_apply_update(P, X, canonical_R(2.0, 3.0, 1))

    @pytest.mark.parametrize("seed", range(5))
    def test_structure_and_spectrum(self, seed):
        S, G, P = _random_pencil(5, 100 + seed)
        w = np.linalg.eigvals(S.entries)
        pair = pencil_select_update_pair(P, w[seed])
        X = normalize_X(pair)
        for co in (canonical_R(pair.lam, 1.5j, 1), general_R(pair.lam, 1.5j, 0.4, -0.3j)):
            out = pencil_apply_update(P, X, co)
            assert out.residual <= 1e-8 * (1 + np.linalg.norm(out.A) ** 2 + np.linalg.norm(out.B) ** 2)
            got = np.concatenate(pencil_eigs(out))
            assert greedy_match_error(got, replaced_spectrum(w, pair.lam, 1.5j)) <= 1e-6
            rel = np.linalg.norm(out.A - P.A) / np.linalg.norm(P.A)
            assert rel <= conditioning_bound(P, X, co)


class TestForms:
    def _case(self, symplectic_g):
        n = 4
        S = random_symplectic(n, seed=31)
        G = random_symplectic(n, seed=32, spread=0.3).entries if symplectic_g else _g(2 * n, 33)
        P = SympPencil(G @ S.entries, G)
        pair = pencil_select_update_pair(P, np.linalg.eigvals(S.entries)[1])
        X = normalize_X(pair)
        co = canonical_R(pair.lam, 0.6 + 0.9j, 1)
        return P, pencil_update_forms(P, X, co), np.linalg.norm(P.A)

    def test_inverse_forms_agree(self):
        _, forms, scale = self._case(False)
        for name in ("inverse", "transpose_inverse"):
            assert np.linalg.norm(forms[name] - forms["diagonal"]) <= 1e-10 * scale

    def test_symplectic_a_form_when_a_symplectic(self):
        _, forms, scale = self._case(True)
        assert np.linalg.norm(forms["symplectic_A"] - forms["diagonal"]) <= 1e-10 * scale

    def test_symplectic_a_form_differs_in_general(self):
        # documents that this rewriting relies on A itself being symplectic
        _, forms, scale = self._case(False)
        assert np.linalg.norm(forms["symplectic_A"] - forms["diagonal"]) > 1e-3 * scale
