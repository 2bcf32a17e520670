"""Symplectic pencils ``A - z B`` with ``A J A^T = B J B^T`` and both
``A``, ``B`` nonsingular.

Generalized eigenvalues come from QZ (``scipy.linalg.eigvals(A, B)``);
``B^{-1} A`` is never formed except in :func:`pencil_update_forms`, which
exists to cross-check the equivalent ways of writing the update.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.linalg

from .errors import (
    IllPosedError,
    InvalidDimensionError,
    InvalidEigenpairError,
    InvalidInputError,
    NumericalFailureError,
)
from .spectral import NormalizedX, pair_values, select_update_pair, TOL_PAIR
from .sympcore import StructureJ, _half_dim

TOL_SINGULAR = 1e-12
TOL_RESIDUAL = 1e-8
TOL_EIGPAIR = 1e-8


def _sv_ratio(M):
    s = np.linalg.svd(M, compute_uv=False)
    return s[-1] / s[0] if s[0] > 0 else 0.0


def pencil_residual(A, B):
    """``||A J A^T - B J B^T||_F``."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise InvalidInputError(f"A{A.shape} and B{B.shape} differ in shape")
    J = StructureJ(_half_dim(A))
    return float(np.linalg.norm(J.apply_right(A) @ A.T - J.apply_right(B) @ B.T, "fro"))


@dataclass(frozen=True)
class SympPencil:
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)

    def __post_init__(self):
        A = np.array(self.A, dtype=complex)
        B = np.array(self.B, dtype=complex)
        if A.shape != B.shape:
            raise InvalidInputError(f"A{A.shape} and B{B.shape} differ in shape")
        _half_dim(A)
        A.setflags(write=False)
        B.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @classmethod
    def validated(cls, A, B, tol=TOL_RESIDUAL, tol_singular=TOL_SINGULAR):
        P = cls(A, B)
        P.check_regular(tol_singular)
        bound = tol * (1.0 + np.linalg.norm(P.A) ** 2 + np.linalg.norm(P.B) ** 2)
        if P.residual > bound:
            raise NumericalFailureError(f"pencil residual {P.residual:.3e} exceeds {bound:.3e}", P.residual)
        return P

    @property
    def dim_half(self):
        return self.A.shape[0] // 2

    @cached_property
    def residual(self):
        return pencil_residual(self.A, self.B)

    def check_regular(self, tol_singular=TOL_SINGULAR):
        for name, M in (("A", self.A), ("B", self.B)):
            r = _sv_ratio(M)
            if r <= tol_singular:
                raise IllPosedError(f"{name} is numerically singular (sigma_min/sigma_max = {r:.2e})")


def _as_2d(v):
    return np.atleast_2d(np.asarray(v, dtype=complex).T).T


def pencil_rado(A, B, X, C, lams=None):
    """Pencil ``(A + B X C^T) - z B``.

    Its eigenvalues are those of ``diag(lams) + C^T X`` together with the
    untouched rest of the spectrum. When ``lams`` is supplied the eigenpair
    condition ``A X = B X diag(lams)`` is checked.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    X = _as_2d(X)
    C = _as_2d(C)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise InvalidInputError(f"A{A.shape}, B{B.shape} must be equal square shapes")
    if X.shape != C.shape or X.shape[0] != A.shape[0]:
        raise InvalidInputError(f"X{X.shape} and C{C.shape} incompatible with A{A.shape}")
    if _sv_ratio(B) <= TOL_SINGULAR:
        raise InvalidInputError("B is singular")
    if np.linalg.matrix_rank(X) < X.shape[1]:
        raise InvalidInputError("X is rank deficient")
    if lams is not None:
        res = np.linalg.norm(A @ X - B @ X * np.asarray(lams)[None, :])
        scale = (np.linalg.norm(A) + np.linalg.norm(B) * np.max(np.abs(lams))) * np.linalg.norm(X)
        if res > TOL_EIGPAIR * scale:
            raise InvalidEigenpairError(f"A X != B X diag(lams) (residual {res:.2e})")
    return A + B @ X @ C.T, B


def pencil_eigs(P, tol_pair=TOL_PAIR):
    """Generalized eigenvalues, grouped into reciprocal pairs."""
    P.check_regular()
    return pair_values(scipy.linalg.eigvals(P.A, P.B), tol_pair)


def pencil_select_update_pair(P, lambda1, **kw):
    """Generalized eigenvectors for ``lambda1``, ``1/lambda1`` maximizing
    ``|x1^T J x2|`` (null spaces of ``A - z B``)."""
    return select_update_pair(P.A, lambda1, B=P.B, **kw)


def _xmat(X):
    return X.X if isinstance(X, NormalizedX) else np.asarray(X, dtype=complex)


def _check_eigenpair(P, Xm, lam):
    lams = np.array([lam, 1.0 / lam])
    res = np.linalg.norm(P.A @ Xm - (P.B @ Xm) * lams[None, :])
    scale = (np.linalg.norm(P.A) + np.linalg.norm(P.B) * np.max(np.abs(lams))) * np.linalg.norm(Xm)
    if res > TOL_EIGPAIR * scale:
        raise InvalidEigenpairError(f"A X != B X diag(lam, 1/lam) (residual {res:.2e}, scale {scale:.2e})")


def pencil_update_forms(P, X, coeffs):
    """The updated ``A`` written four ways.

    ``inverse``            A + B X R X^T J^T B^{-1} A
    ``diagonal``           A + B X R diag(1/lam, lam) X^T J^T
    ``transpose_inverse``  A + B X R X^T B^T A^{-T} J^T
    ``symplectic_A``       A + B X R X^T B^T J^T A

    The first three agree for every symplectic pencil; ``symplectic_A``
    additionally needs ``A^T J A = J`` and is kept for that special case.
    """
    Xm = _xmat(X)
    A, B = P.A, P.B
    J = StructureJ(P.dim_half)
    lam = coeffs.lam
    BXR = B @ Xm @ coeffs.R
    XtJt = J.apply_left(Xm).T
    XtBt = (B @ Xm).T
    return {
        "inverse": A + BXR @ (XtJt @ np.linalg.solve(B, A)),
        "diagonal": A + (BXR * np.array([1.0 / lam, lam])[None, :]) @ XtJt,
        "transpose_inverse": A + BXR @ J.transpose_apply_right(np.linalg.solve(A, XtBt.T).T),
        "symplectic_A": A + BXR @ (XtBt @ J.transpose_apply(A)),
    }


def pencil_apply_update(P, X, coeffs, tol=TOL_RESIDUAL):
    """Structure-preserving pencil update; ``B`` is returned unchanged."""
    Xm = _xmat(X)
    if Xm.shape != (P.A.shape[0], 2):
        raise InvalidDimensionError(f"X has shape {Xm.shape}, expected ({P.A.shape[0]}, 2)")
    _check_eigenpair(P, Xm, coeffs.lam)
    J = StructureJ(P.dim_half)
    lam = coeffs.lam
    delta = (P.B @ Xm @ coeffs.R * np.array([1.0 / lam, lam])[None, :]) @ J.apply_left(Xm).T
    out = SympPencil(P.A + delta, P.B)
    bound = tol * (1.0 + np.linalg.norm(out.A) ** 2 + np.linalg.norm(out.B) ** 2)
    if out.residual > bound:
        raise NumericalFailureError(f"updated pencil residual {out.residual:.3e} exceeds {bound:.3e}", out.residual)
    return out


def conditioning_bound(P, X, coeffs):
    """``kappa_2(B) ||R||_F ||X||_F^2``, bounding ``||A_hat - A||_F / ||A||_F``."""
    Xm = _xmat(X)
    kappa = np.linalg.cond(P.B, 2)
    return float(kappa * np.linalg.norm(coeffs.R) * np.linalg.norm(Xm) ** 2)
