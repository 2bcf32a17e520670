"""Symplectic building blocks: the structure matrix J, residuals, the star
operator and a seeded generator of test matrices.

Transposes are plain transposes throughout (no conjugation); the symplectic
form is the complex bilinear form ``x^T J y``.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidDimensionError, NotSymplecticError

TOL_SYMP = 1e-10


def _half_dim(M):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidDimensionError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] % 2 or M.shape[0] == 0:
        raise InvalidDimensionError(f"expected even dimension, got {M.shape[0]}")
    return M.shape[0] // 2


@dataclass(frozen=True)
class StructureJ:
    """The matrix ``J_2n = [[0, I], [-I, 0]]`` applied by block swaps.

    Never materialized for products; use :meth:`dense` only when an explicit
    array is really required (tests, small examples).
    """

    dim_half: int

    def __post_init__(self):
        if int(self.dim_half) < 1:
            raise InvalidDimensionError(f"n must be >= 1, got {self.dim_half}")

    def _check(self, M, axis):
        if M.shape[axis] != 2 * self.dim_half:
            raise InvalidDimensionError(
                f"size {M.shape[axis]} along axis {axis} does not match 2n={2 * self.dim_half}"
            )

    def apply_left(self, M):
        """Return ``J @ M`` for a vector or matrix ``M``."""
        M = np.asarray(M)
        self._check(M, 0)
        n = self.dim_half
        return np.concatenate([M[n:], -M[:n]], axis=0)

    def apply_right(self, M):
        """Return ``M @ J``."""
        M = np.asarray(M)
        self._check(M, -1)
        n = self.dim_half
        return np.concatenate([-M[..., n:], M[..., :n]], axis=-1)

    def transpose_apply(self, M):
        """Return ``J^T @ M`` (equal to ``-J @ M``)."""
        return -self.apply_left(M)

    def transpose_apply_right(self, M):
        """Return ``M @ J^T``."""
        return -self.apply_right(M)

    def form(self, x, y):
        """Bilinear form ``x^T J y`` (no conjugation)."""
        return np.asarray(x).T @ self.apply_left(y)

    def dense(self):
        n = self.dim_half
        Z = np.zeros((n, n))
        I = np.eye(n)
        return np.block([[Z, I], [-I, Z]])


def j_matrix(n):
    """Structure matrix of half-dimension ``n``."""
    if n < 1:
        raise InvalidDimensionError(f"n must be >= 1, got {n}")
    return StructureJ(int(n))


def symplecticity_residual(S):
    """Frobenius norm of ``S^T J S - J``."""
    n = _half_dim(S)
    S = np.asarray(S)
    J = StructureJ(n)
    return float(np.linalg.norm(S.T @ J.apply_left(S) - J.dense(), "fro"))


def star(S):
    """``J^T S^T J``; equals ``S^{-1}`` when ``S`` is symplectic."""
    n = _half_dim(S)
    J = StructureJ(n)
    return J.transpose_apply(J.apply_right(np.asarray(S).T))


@dataclass(frozen=True)
class SympMatrix:
    """Dense complex symplectic matrix with a lazily cached residual.

    Use :meth:`validated` to construct with a residual gate; the plain
    constructor only checks the shape.
    """

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        _half_dim(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def validated(cls, entries, tol_symp=TOL_SYMP):
        S = cls(entries)
        bound = tol_symp * (1.0 + S.norm_fro**2)
        if S.residual > bound:
            raise NotSymplecticError(
                f"symplecticity residual {S.residual:.3e} exceeds {bound:.3e}", S.residual
            )
        return S

    @property
    def dim_half(self):
        return self.entries.shape[0] // 2

    @property
    def J(self):
        return StructureJ(self.dim_half)

    @cached_property
    def residual(self):
        return symplecticity_residual(self.entries)

    @cached_property
    def norm_fro(self):
        return float(np.linalg.norm(self.entries, "fro"))

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


def _as_array(S):
    return S.entries if isinstance(S, SympMatrix) else np.asarray(S)


def _shear_upper(W):
    n = W.shape[0]
    I = np.eye(n)
    return np.block([[I, W], [np.zeros((n, n)), I]])


def _shear_lower(W):
    n = W.shape[0]
    I = np.eye(n)
    return np.block([[I, np.zeros((n, n))], [W, I]])


def _block_diag(G, H):
    n = G.shape[0]
    Z = np.zeros((n, n))
    return np.block([[G, Z], [Z, H]])


def _random_symmetric(rng, n, scale):
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (A + A.T) / (2 * np.sqrt(n))


def random_symplectic(n, seed=0, spread=1.0):
    """Seeded random symplectic matrix of size ``2n``.

    A symplectic basis ``T`` is assembled from elementary factors (two
    shears with complex symmetric blocks and a ``diag(G, G^{-T})`` factor).
    The spectrum ``diag(L, L^{-1})`` has ``|L_i| = 10**(spread*u_i)`` with
    ``u_i`` uniform on ``[-1, 1]`` and uniform phases. The result
    ``T diag(L, L^{-1}) T^{-1}`` is finally rescaled by
    ``diag(D1^{-1}, D1) . diag(D2, D2^{-1})`` with entries ``rand + 1j*rand``,
    which keeps it symplectic and widens the spectrum further.
    """
    if n < 1:
        raise InvalidDimensionError(f"n must be >= 1, got {n}")
    if spread < 0:
        raise ValueError(f"spread must be nonnegative, got {spread}")
    rng = np.random.default_rng(seed)

    G = np.eye(n) + 0.5 * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(n)
    T = (
        _shear_upper(_random_symmetric(rng, n, 0.5))
        @ _block_diag(G, np.linalg.inv(G).T)
        @ _shear_lower(_random_symmetric(rng, n, 0.5))
    )

    mags = 10.0 ** (spread * rng.uniform(-1.0, 1.0, n))
    lam = mags * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))
    core = (T * np.concatenate([lam, 1.0 / lam])) @ star(T)

    alpha = rng.uniform(size=n) + 1j * rng.uniform(size=n)
    beta = rng.uniform(size=n) + 1j * rng.uniform(size=n)
    left = np.concatenate([1.0 / alpha, alpha])
    right = np.concatenate([beta, 1.0 / beta])
    S = left[:, None] * core * right[None, :]
    return SympMatrix(S)


def diag_symplectic(lams):
    """``diag(L, L^{-1})`` for the given eigenvalues ``L``."""
    lams = np.asarray(lams, dtype=complex)
    return SympMatrix(np.diag(np.concatenate([lams, 1.0 / lams])))


def conjugate_by(T, D):
    """``T D T^{-1}`` for symplectic ``T`` (inverse taken via :func:`star`)."""
    T = _as_array(T)
    return T @ _as_array(D) @ star(T)
