"""Eigenstructure of symplectic matrices: reciprocal pairing, choice of the
eigenvector pair for an update, Segre characteristics and eigenvalue
condition numbers.

The dense eigensolver is treated as a black box with accuracy of order
``eps * cond * ||S||``; tolerances below are relative to that scale.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    InvalidDimensionError,
    NotAnEigenvalueError,
    NotApplicableError,
    NotSimpleError,
    PairingError,
)
from .sympcore import StructureJ, _as_array, _half_dim

TOL_PAIR = 1e-6
TOL_RANK = 1e-8
TOL_APPLICABLE = 1e-8


@dataclass(frozen=True)
class ReciprocalPair:
    """Unit eigenvectors ``x1`` (for ``lam``) and ``x2`` (for ``1/lam``)."""

    lam: complex
    x1: np.ndarray = field(repr=False)
    x2: np.ndarray = field(repr=False)
    pairing: complex

    @classmethod
    def from_vectors(cls, lam, x1, x2):
        """Normalize ``x1``, ``x2`` and compute their pairing ``x1^T J x2``."""
        x1 = np.asarray(x1, dtype=complex)
        x2 = np.asarray(x2, dtype=complex)
        if x1.ndim != 1 or x1.shape != x2.shape or x1.size % 2:
            raise InvalidDimensionError("x1, x2 must be vectors of equal even length")
        x1 = x1 / np.linalg.norm(x1)
        x2 = x2 / np.linalg.norm(x2)
        J = StructureJ(x1.size // 2)
        return cls(complex(lam), x1, x2, complex(J.form(x1, x2)))

    @property
    def partner(self):
        return 1.0 / self.lam


@dataclass(frozen=True)
class NormalizedX:
    """``X = [x1 x2] / sqrt(x1^T J x2)`` so that ``X^T J X = J_2``."""

    X: np.ndarray = field(repr=False)
    source: ReciprocalPair

    @property
    def lam(self):
        return self.source.lam


@dataclass(frozen=True)
class SegreChar:
    lam: complex
    sizes: tuple

    def has_trivial_block(self):
        return bool(self.sizes) and self.sizes[-1] == 1

    def to_dict(self):
        return {"lambda": [self.lam.real, self.lam.imag], "sizes": list(self.sizes)}

    def __str__(self):
        return "((" + ",".join(str(s) for s in self.sizes) + "))"


def _rel_close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def eig_pairs(S, tol_pair=TOL_PAIR):
    """Match every eigenvalue with a reciprocal partner.

    Greedy on ``|lam_i * lam_j - 1|``: candidate pairs are taken in order of
    increasing cost (ties by index) while both members are free. Returns a
    list of ``(lam, lam')`` tuples ordered by the index of the first member.
    """
    w = np.linalg.eigvals(_as_array(S))
    return pair_values(w, tol_pair)


def pair_values(w, tol_pair=TOL_PAIR):
    w = np.asarray(w, dtype=complex)
    m = w.size
    i, j = np.triu_indices(m, k=1)
    cost = np.abs(w[i] * w[j] - 1.0)
    order = np.lexsort((j, i, cost))
    used = np.zeros(m, dtype=bool)
    pairs = []
    for k in order:
        if cost[k] > tol_pair:
            break
        a, b = i[k], j[k]
        if used[a] or used[b]:
            continue
        used[a] = used[b] = True
        pairs.append((a, b))
    if not used.all():
        orphan = complex(w[np.flatnonzero(~used)[0]])
        raise PairingError(f"eigenvalue {orphan} has no reciprocal partner", orphan)
    pairs.sort()
    return [(complex(w[a]), complex(w[b])) for a, b in pairs]


def _cluster(w, lam, tol):
    idx = np.flatnonzero(np.abs(w - lam) <= tol * max(1.0, abs(lam)))
    return idx


def _eigenspace(A, lam, max_dim, tol_rank, B=None):
    """Orthonormal basis of the numerical null space of ``A - lam B``."""
    s_mat = A - lam * (np.eye(A.shape[0]) if B is None else B)
    _, s, vh = np.linalg.svd(s_mat)
    k = int(np.count_nonzero(s <= tol_rank * s[0])) if s[0] > 0 else s.size
    k = min(max(k, 1), max_dim)
    return vh[-k:].conj().T


def _fix_phase(x1, x2):
    """Make the largest entry of ``x1`` real positive, compensating in ``x2``."""
    p = x1[np.argmax(np.abs(x1))]
    phase = p / abs(p)
    return x1 / phase, x2 * phase


def eigenspace_basis(S, lam, tol_pair=TOL_PAIR, tol_rank=TOL_RANK, B=None):
    """Cluster mean, eigenvector basis and algebraic multiplicity for the
    eigenvalue near ``lam`` (of the pencil ``S - z B`` when ``B`` is given)."""
    A = _as_array(S)
    w = np.linalg.eigvals(A) if B is None else scipy.linalg.eigvals(A, B)
    idx = _cluster(w, lam, tol_pair)
    if idx.size == 0:
        nearest = w[np.argmin(np.abs(w - lam))]
        raise NotAnEigenvalueError(f"{lam} is not an eigenvalue (nearest: {nearest})")
    lam_hat = complex(np.mean(w[idx]))
    return lam_hat, _eigenspace(A, lam_hat, idx.size, tol_rank, B), idx.size


def select_update_pair(S, lambda1, tol=TOL_APPLICABLE, tol_pair=TOL_PAIR, tol_rank=TOL_RANK, B=None):
    """Pick unit eigenvectors for ``lambda1`` and ``1/lambda1`` maximizing
    ``|x1^T J x2|``.

    With orthonormal eigenbases ``B1``, ``B2`` the maximum of the bilinear
    form is the largest singular value of ``B1^T J B2``, attained at its
    leading singular vectors. For ``lambda1 = +-1`` both bases coincide and
    the two resulting vectors are automatically independent.

    Raises :class:`NotApplicableError` when the maximum is below ``tol``;
    this happens iff ``lambda1`` has no Jordan block of size one. Passing
    ``B`` selects generalized eigenvectors of ``S - z B`` instead.
    """
    A = _as_array(S)
    n = _half_dim(A)
    J = StructureJ(n)
    lam, B1, _ = eigenspace_basis(A, lambda1, tol_pair, tol_rank, B)
    if _rel_close(lam, 1.0 / lam, tol_pair):
        B2 = B1
    else:
        _, B2, _ = eigenspace_basis(A, 1.0 / lam, tol_pair, tol_rank, B)

    M = B1.T @ J.apply_left(B2)
    U, s, Vh = np.linalg.svd(M)
    if s[0] < tol:
        segre = None
        if B is None:
            try:
                segre = segre_characteristic(A, lam, tol_rank)
            except NotAnEigenvalueError:
                pass
        raise NotApplicableError(
            f"no eigenvector pair for {lam} with nonzero pairing "
            f"(max |x1^T J x2| = {s[0]:.2e}); Segre characteristic {segre} has no trivial block",
            segre,
        )
    x1 = B1 @ U[:, 0].conj()
    x2 = B2 @ Vh[0].conj()
    x1, x2 = _fix_phase(x1, x2)
    return ReciprocalPair(lam, x1, x2, complex(J.form(x1, x2)))


def _rank(M, tol_rank):
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol_rank * s[0]))


def rank_sequence(A, lam, tol_rank=TOL_RANK):
    """Ranks ``r_k`` of ``(A - lam I)^k`` for ``k = 0, 1, ...`` until they
    stop decreasing."""
    A = np.asarray(A, dtype=complex)
    N = A.shape[0]
    shifted = A - lam * np.eye(N)
    ranks = [N]
    P = np.eye(N, dtype=complex)
    for _ in range(N):
        P = P @ shifted
        r = _rank(P, tol_rank)
        if r == ranks[-1]:
            break
        ranks.append(r)
    return ranks


def segre_characteristic(S, lam, tol_rank=TOL_RANK):
    """Jordan block sizes of ``S`` at ``lam`` in nonincreasing order.

    The number of blocks of size at least ``k`` is ``r_{k-1} - r_k``
    (Weyr characteristic); conjugating that partition gives the sizes.
    ``S`` need not be symplectic.
    """
    A = _as_array(S)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidDimensionError(f"expected square matrix, got {A.shape}")
    ranks = rank_sequence(A, lam, tol_rank)
    weyr = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    if not weyr:
        raise NotAnEigenvalueError(f"{lam} is not an eigenvalue (A - lam I has full rank)")
    sizes = []
    for k, at_least in enumerate(weyr, start=1):
        nxt = weyr[k] if k < len(weyr) else 0
        sizes.extend([k] * (at_least - nxt))
    return SegreChar(complex(lam), tuple(sorted(sizes, reverse=True)))


def eig_condition_number(S, pair, tol_pair=TOL_PAIR):
    """``1/|x1^T J x2|`` for a simple eigenvalue with unit eigenvectors."""
    w = np.linalg.eigvals(_as_array(S))
    if _cluster(w, pair.lam, tol_pair).size != 1:
        raise NotSimpleError(f"eigenvalue {pair.lam} is not simple")
    return 1.0 / abs(pair.pairing)


def condition_numbers(A):
    """Eigenvalues of ``A`` with ``||u|| ||v|| / |v^H u|`` from left/right
    eigenvectors (meaningful for simple eigenvalues only)."""
    w, vl, vr = scipy.linalg.eig(np.asarray(A), left=True, right=True)
    num = np.linalg.norm(vl, axis=0) * np.linalg.norm(vr, axis=0)
    den = np.abs(np.sum(vl.conj() * vr, axis=0))
    return w, num / den


def normalize_X(pair, tol=0.0):
    """Scale ``[x1 x2]`` by the principal ``1/sqrt(x1^T J x2)``."""
    if abs(pair.pairing) <= tol:
        raise NotApplicableError(f"pairing {pair.pairing} is zero; X^T J X = J_2 impossible")
    X = np.column_stack([pair.x1, pair.x2]) / np.sqrt(complex(pair.pairing))
    X.setflags(write=False)
    return NormalizedX(X, pair)
