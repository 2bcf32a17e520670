"""Distance certificates for the canonical updates.

Two different scale factors appear and are kept apart on purpose:

* the coarse bound uses ``2/|x1^T J x2|`` (``= ||X||_F^2``),
* the sharp bounds use ``1/(|x1^T J x2| * ||S||_F)``.

All bounds are on the relative change ``||S_hat - S||_F / ||S||_F``.
"""

import csv
import io
from dataclasses import asdict, dataclass

import numpy as np

from .errors import NotApplicableError, NumericalFailureError
from .surgery import Branch, apply_update, canonical_R, eta_roots, gap_d
from .spectral import normalize_X
from .sympcore import _as_array

CSV_COLUMNS = ["branch", "abs_lambda1", "abs_mu", "rel_eig_change", "coarse", "sharp_lower", "sharp_upper", "exact"]


def _pairing_abs(pairing):
    p = abs(complex(pairing))
    if p == 0:
        raise NotApplicableError("pairing x1^T J x2 is zero")
    return p


def _reflect(lam, branch):
    """Branch 2 bounds are the branch 1 formulas with ``1/lam`` in place of ``lam``."""
    return lam if Branch.canonical(branch) is Branch.CANONICAL1 else 1.0 / lam


def coarse_bound(lambda1, mu, pairing, branch=1):
    """``|l - mu|/|l| * (2/|p|) * sqrt(1 + |l|^2/|mu|^2)`` with ``l = lambda1``
    (branch 1) or ``1/lambda1`` (branch 2)."""
    p = _pairing_abs(pairing)
    lam = _reflect(complex(lambda1), branch)
    mu = complex(mu)
    return abs(lam - mu) / abs(lam) * (2.0 / p) * np.sqrt(1.0 + abs(lam) ** 2 / abs(mu) ** 2)


def halfplane_value(lambda1, mu, branch=1):
    """``Re(lam*mu)`` for branch 1, ``Re(conj(lam)*mu)`` for branch 2."""
    lam, mu = complex(lambda1), complex(mu)
    if Branch.canonical(branch) is Branch.CANONICAL1:
        return (lam * mu).real
    return (lam.conjugate() * mu).real


def sharp_bounds(lambda1, mu, pairing, normS, branch=1):
    """Lower and upper bound on the relative change plus the half-plane sign.

    When the half-plane value is ``<= 0`` the lower bound carries
    ``|l + 1/mu|`` and the upper ``|l - 1/mu|``; otherwise they swap.
    """
    p = _pairing_abs(pairing)
    phi = 1.0 / (p * float(normS))
    lam = _reflect(complex(lambda1), branch)
    mu = complex(mu)
    f = abs(lam - mu) / abs(lam)
    plus = f * abs(lam + 1.0 / mu) * phi
    minus = f * abs(lam - 1.0 / mu) * phi
    hp = halfplane_value(lambda1, mu, branch)
    flag = -1 if hp <= 0 else 1
    if flag < 0:
        return plus, minus, flag
    return minus, plus, flag


def exact_distance_formula(lambda1, mu, cross, pairing, branch=1):
    """``||S_hat_j - S||_F`` from ``x1^H x2`` and ``x1^T J x2`` only.

    ``|p|^2 ||S_hat - S||^2 = |eta|^2 + |eta - d|^2
    + 2 |x1^H x2|^2 Re(eta * conj(eta - d))``.
    """
    p = _pairing_abs(pairing)
    eta = eta_roots(lambda1, mu, 0.0)[Branch.canonical(branch).index - 1]
    d = gap_d(lambda1, mu)
    e = eta - d
    val = abs(eta) ** 2 + abs(e) ** 2 + 2.0 * abs(cross) ** 2 * (eta * e.conjugate()).real
    return float(np.sqrt(max(val, 0.0)) / p)


def exact_distance(lambda1, mu, pair, branch=1, S=None, rtol=1e-10):
    """Closed-form distance for a unit-norm eigenvector pair.

    If ``S`` is supplied the canonical update is also carried out and the
    two values must agree to ``rtol``.
    """
    cross = np.vdot(pair.x1, pair.x2)
    val = exact_distance_formula(lambda1, mu, cross, pair.pairing, branch)
    if S is not None:
        res = apply_update(S, normalize_X(pair), canonical_R(lambda1, mu, branch))
        direct = res.delta_frobenius
        if abs(direct - val) > rtol * max(direct, np.finfo(float).tiny):
            raise NumericalFailureError(
                f"closed-form distance {val:.16e} disagrees with direct {direct:.16e}",
                abs(direct - val),
            )
    return val


@dataclass(frozen=True)
class BoundsReport:
    branch: int
    lambda1: complex
    mu: complex
    phi: float
    coarse: float
    sharp_lower: float
    sharp_upper: float
    halfplane_flag: int
    exact: float

    @property
    def rel_eig_change(self):
        return abs(self.lambda1 - self.mu) / abs(self.lambda1)

    def sandwich_ok(self, slack=1e-10):
        return self.sharp_lower - slack <= self.exact <= self.sharp_upper + slack

    def csv_row(self):
        return [
            self.branch,
            abs(self.lambda1),
            abs(self.mu),
            self.rel_eig_change,
            self.coarse,
            self.sharp_lower,
            self.sharp_upper,
            self.exact,
        ]

    def to_csv(self, header=True):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(CSV_COLUMNS)
        w.writerow([repr(float(v)) if isinstance(v, float) else v for v in self.csv_row()])
        return buf.getvalue()

    def to_dict(self):
        out = asdict(self)
        out["lambda1"] = [self.lambda1.real, self.lambda1.imag]
        out["mu"] = [self.mu.real, self.mu.imag]
        return out


def bounds_report(S, pair, mu, branch=1):
    """All certificates for one canonical update of ``S`` at ``pair.lam``."""
    normS = float(np.linalg.norm(_as_array(S), "fro"))
    lam = pair.lam
    br = Branch.canonical(branch).index
    lower, upper, flag = sharp_bounds(lam, mu, pair.pairing, normS, br)
    exact = exact_distance(lam, mu, pair, br) / normS
    return BoundsReport(
        branch=br,
        lambda1=complex(lam),
        mu=complex(mu),
        phi=1.0 / (abs(pair.pairing) * normS),
        coarse=float(coarse_bound(lam, mu, pair.pairing, br)),
        sharp_lower=float(lower),
        sharp_upper=float(upper),
        halfplane_flag=flag,
        exact=exact,
    )
