"""Structure-preserving replacement of one reciprocal eigenvalue pair.

The update is ``S_hat = S + X R X^T J^T S`` where ``X`` is a normalized
eigenvector pair (``X^T J X = J_2``) and the 2x2 coefficient matrix ``R``
satisfies

    lam*r12 - r21/lam = d                    (spectrum condition)
    r12 - r21 + r11*r22 - r12*r21 = 0        (structure condition)

with ``d = (mu + 1/mu) - (lam + 1/lam)``. Writing ``r12 = eta/lam`` and
``r21 = lam*(eta - d)`` turns the second condition into a quadratic in
``eta`` whose two roots give the two admissible ``R`` for fixed diagonal.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InconsistentRootError,
    InvalidInputError,
    InvalidValueError,
    NumericalFailureError,
)
from .spectral import NormalizedX, normalize_X, select_update_pair
from .sympcore import StructureJ, SympMatrix, _as_array

TOL_RESIDUAL = 1e-8


class Branch(enum.Enum):
    CANONICAL1 = "canonical1"
    CANONICAL2 = "canonical2"
    GENERAL = "general"

    @classmethod
    def canonical(cls, j):
        if isinstance(j, cls):
            return j
        if j in (1, "1"):
            return cls.CANONICAL1
        if j in (2, "2"):
            return cls.CANONICAL2
        raise InvalidValueError(f"branch must be 1 or 2, got {j!r}")

    @property
    def index(self):
        return {Branch.CANONICAL1: 1, Branch.CANONICAL2: 2}.get(self)


def _nonzero(name, z):
    z = complex(z)
    if z == 0:
        raise InvalidValueError(f"{name} must be nonzero")
    return z


@dataclass(frozen=True)
class UpdateCoeffs:
    R: np.ndarray = field(repr=False)
    lam: complex
    mu: complex
    d: complex
    eta: complex
    branch: Branch

    def residuals(self):
        """Residuals of the spectrum and structure conditions."""
        (r11, r12), (r21, r22) = self.R
        res_spectrum = abs(self.lam * r12 - r21 / self.lam - self.d)
        res_struct = abs(r12 - r21 + r11 * r22 - r12 * r21)
        return res_spectrum, res_struct


@dataclass(frozen=True)
class SurgeryResult:
    s_hat: SympMatrix
    coeffs: UpdateCoeffs
    X: NormalizedX
    delta_frobenius: float


def gap_d(lambda1, mu):
    """Trace gap ``(mu + 1/mu) - (lambda1 + 1/lambda1)``."""
    lam = _nonzero("lambda1", lambda1)
    mu = _nonzero("mu", mu)
    return (mu + 1.0 / mu) - (lam + 1.0 / lam)


def _eta_poly(lam, d, c, eta):
    return -(eta**2) + eta * (1.0 / lam + d - lam) + d * lam + c


def eta_roots(lambda1, mu, c=0.0):
    """Both roots of ``-eta^2 + eta(1/lam + d - lam) + d*lam + c``.

    Ordered so that the first root continues ``mu - lam`` and the second
    ``1/mu - lam`` (the exact roots at ``c = 0``).
    """
    lam = _nonzero("lambda1", lambda1)
    mu = _nonzero("mu", mu)
    c = complex(c)
    eta1_0, eta2_0 = mu - lam, 1.0 / mu - lam
    if c == 0:
        return eta1_0, eta2_0
    d = gap_d(lam, mu)
    b = 1.0 / lam + d - lam
    k = d * lam + c
    s = np.sqrt(complex(b * b + 4.0 * k))
    # eta^2 - b*eta - k = 0; larger-modulus root first, the other from the product
    q = (b + s) / 2.0 if abs(b + s) >= abs(b - s) else (b - s) / 2.0
    other = -k / q if q != 0 else b - q
    a, z = complex(q), complex(other)
    if abs(a - eta1_0) + abs(z - eta2_0) <= abs(z - eta1_0) + abs(a - eta2_0):
        return a, z
    return z, a


def build_R(eta, r11, r22, lambda1, mu, branch=Branch.GENERAL):
    """``[[r11, eta/lam], [lam*(eta - d), r22]]`` after checking that ``eta``
    is a root for ``c = r11*r22``."""
    lam = _nonzero("lambda1", lambda1)
    mu = _nonzero("mu", mu)
    eta, r11, r22 = complex(eta), complex(r11), complex(r22)
    d = gap_d(lam, mu)
    c = r11 * r22
    b = 1.0 / lam + d - lam
    scale = 1.0 + abs(eta) ** 2 + abs(b * eta) + abs(d * lam) + abs(c)
    res = abs(_eta_poly(lam, d, c, eta))
    if res > 1e-10 * scale:
        raise InconsistentRootError(f"eta={eta} is not a root (|p(eta)|={res:.3e})")
    R = np.array([[r11, eta / lam], [lam * (eta - d), r22]], dtype=complex)
    R.setflags(write=False)
    return UpdateCoeffs(R, lam, mu, d, eta, branch)


def canonical_R(lambda1, mu, branch):
    """The two zero-diagonal solutions ``R_1`` (eta = mu - lam) and
    ``R_2`` (eta = 1/mu - lam), entries written in factored form."""
    lam = _nonzero("lambda1", lambda1)
    mu = _nonzero("mu", mu)
    br = Branch.canonical(branch)
    d = gap_d(lam, mu)
    if br is Branch.CANONICAL1:
        eta = mu - lam
        R = np.array([[0, (mu - lam) / lam], [(mu - lam) / mu, 0]], dtype=complex)
    else:
        eta = 1.0 / mu - lam
        R = np.array([[0, (1.0 / lam - mu) / mu], [lam * (1.0 / lam - mu), 0]], dtype=complex)
    R.setflags(write=False)
    return UpdateCoeffs(R, lam, mu, d, eta, br)


def general_R(lambda1, mu, r11, r22, root=1):
    """Admissible ``R`` with prescribed diagonal; ``root`` picks the eta root."""
    if root not in (1, 2):
        raise InvalidValueError(f"root must be 1 or 2, got {root!r}")
    eta = eta_roots(lambda1, mu, complex(r11) * complex(r22))[root - 1]
    return build_R(eta, r11, r22, lambda1, mu)


def omega(lambda1, coeffs):
    """Restriction of the update to span(X); its eigenvalues are ``mu, 1/mu``."""
    lam = complex(lambda1)
    (r11, r12), (r21, r22) = coeffs.R
    return np.array(
        [[lam + lam * r12, -r11 / lam], [lam * r22, 1.0 / lam - r21 / lam]],
        dtype=complex,
    )


def _check_inputs(S, X, coeffs):
    A = _as_array(S)
    Xm = X.X if isinstance(X, NormalizedX) else np.asarray(X)
    if Xm.shape != (A.shape[0], 2):
        raise InvalidInputError(f"X has shape {Xm.shape}, expected ({A.shape[0]}, 2)")
    if isinstance(X, NormalizedX):
        lx = X.lam
        if abs(lx - coeffs.lam) > 1e-8 * max(1.0, abs(lx)):
            raise InvalidInputError(f"X belongs to {lx}, coefficients to {coeffs.lam}")
    return A, Xm


def update_matrix(X, coeffs):
    """``X R X^T J^T`` as a dense matrix."""
    Xm = X.X if isinstance(X, NormalizedX) else np.asarray(X)
    J = StructureJ(Xm.shape[0] // 2)
    return (Xm @ coeffs.R) @ J.apply_left(Xm).T


def apply_update(S, X, coeffs, tol=TOL_RESIDUAL):
    """``S_hat = S + X R X^T J^T S`` with a post-hoc symplecticity gate."""
    A, Xm = _check_inputs(S, X, coeffs)
    J = StructureJ(A.shape[0] // 2)
    delta = (Xm @ coeffs.R) @ (J.apply_left(Xm).T @ A)
    s_hat = SympMatrix(A + delta)
    bound = tol * (1.0 + s_hat.norm_fro**2)
    if s_hat.residual > bound:
        raise NumericalFailureError(
            f"updated matrix lost symplecticity: residual {s_hat.residual:.3e} > {bound:.3e}",
            s_hat.residual,
        )
    if not isinstance(X, NormalizedX):
        X = NormalizedX(Xm, None)
    return SurgeryResult(s_hat, coeffs, X, float(np.linalg.norm(delta, "fro")))


def commutator_residual(S, X, coeffs):
    """``||E S - S E||_F`` for ``E = X R X^T J^T``."""
    A, Xm = _check_inputs(S, X, coeffs)
    J = StructureJ(A.shape[0] // 2)
    XR = Xm @ coeffs.R
    JXt = J.apply_left(Xm).T
    return float(np.linalg.norm(XR @ (JXt @ A) - (A @ XR) @ JXt, "fro"))


def make_coeffs(lambda1, mu, branch=1, r11=None, r22=None, root=1):
    """Canonical coefficients, or general ones when a diagonal is given."""
    if r11 is None and r22 is None:
        return canonical_R(lambda1, mu, branch)
    return general_R(lambda1, mu, r11 or 0.0, r22 or 0.0, root)


def modify(S, lambda1, mu, branch=1, r11=None, r22=None, root=1, tol=TOL_RESIDUAL):
    """Select eigenvectors for ``lambda1``, build coefficients and update."""
    if not isinstance(S, SympMatrix):
        S = SympMatrix(S)
    pair = select_update_pair(S, lambda1)
    X = normalize_X(pair)
    coeffs = make_coeffs(pair.lam, mu, branch, r11, r22, root)
    return apply_update(S, X, coeffs, tol)


def rado_update(A, X, C):
    """Unstructured rank-k update ``A + X C^T``."""
    A = np.asarray(A)
    X = np.atleast_2d(np.asarray(X).T).T
    C = np.atleast_2d(np.asarray(C).T).T
    if X.shape != C.shape or X.shape[0] != A.shape[0]:
        raise InvalidInputError(f"incompatible shapes A{A.shape}, X{X.shape}, C{C.shape}")
    return A + X @ C.T


def rado_omega(lams, X, C):
    """``diag(lams) + C^T X``; its eigenvalues replace ``lams``."""
    X = np.atleast_2d(np.asarray(X).T).T
    C = np.atleast_2d(np.asarray(C).T).T
    return np.diag(np.asarray(lams, dtype=complex)) + C.T @ X
