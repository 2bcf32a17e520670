"""Seeded experiments on random symplectic matrices, emitted as CSV.

* ``run_fig1``: canonical update with relative eigenvalue change
  ``gamma = gamma_scale * |lam|`` against the coarse and sharp bounds.
* ``run_fig2``: same set-up, comparing the two canonical branches.
* ``run_fig3``: one fixed matrix, general coefficients with
  ``r11 = r22 = sqrt(c)`` on a grid of complex ``c``.

Every trial draws its randomness from ``(seed, trial)`` only, so trials can
run in any order and the CSV is reproducible byte for byte.
"""

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import coarse_bound, sharp_bounds
from .errors import NotApplicableError, NotSimpleError, SympError
from .spectral import (
    TOL_PAIR,
    _cluster,
    condition_numbers,
    normalize_X,
    select_update_pair,
)
from .surgery import apply_update, build_R, canonical_R, eta_roots
from .sympcore import StructureJ, random_symplectic

AUDIT_RTOL = 1e-6


@dataclass(frozen=True)
class ExperimentConfig:
    n_half: int = 20
    trials: int = 50
    seed: int = 0
    gamma_scale: float = 1.0
    grid_points: int = 50
    grid_halfwidth: float = 1.0
    spread: float = 1.0
    branch: int = 1
    audit: bool = False

    def __post_init__(self):
        for name in ("n_half", "trials", "grid_points"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be positive")
        if not self.gamma_scale > 0:
            raise ValueError("gamma_scale must be positive")
        if not self.grid_halfwidth > 0:
            raise ValueError("grid_halfwidth must be positive")
        if self.branch not in (1, 2):
            raise ValueError("branch must be 1 or 2")


@dataclass
class TrialRecord:
    trial: int
    lambda1: complex = None
    mu: complex = None
    rel_eig_change: float = None
    rel_change_1: float = None
    rel_change_2: float = None
    coarse: float = None
    sharp_lower: float = None
    sharp_upper: float = None
    phi: float = None
    kappa: float = None
    branch: int = 1
    audit_dkappa: float = None
    audit_kappa_mu: float = None

    @property
    def skipped(self):
        return self.lambda1 is None

    @property
    def exact(self):
        return self.rel_change_1 if self.branch == 1 else self.rel_change_2

    def sandwich_ok(self, slack=1e-10):
        return self.sharp_lower - slack <= self.exact <= self.sharp_upper + slack

    def audit_ok(self, rtol=AUDIT_RTOL):
        vals = [v for v in (self.audit_dkappa, self.audit_kappa_mu) if v is not None]
        return all(v <= rtol for v in vals)


CSV_COLUMNS = [
    "trial", "status", "lambda1_re", "lambda1_im", "mu_re", "mu_im",
    "rel_eig_change", "rel_change_1", "rel_change_2", "branch",
    "coarse", "sharp_lower", "sharp_upper", "phi", "kappa",
    "audit_dkappa", "audit_kappa_mu",
]


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def records_to_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in sorted(records, key=lambda r: r.trial):
        if r.skipped:
            w.writerow([r.trial, "skipped"] + [""] * (len(CSV_COLUMNS) - 2))
            continue
        w.writerow([
            r.trial, "ok",
            _fmt(r.lambda1.real), _fmt(r.lambda1.imag), _fmt(r.mu.real), _fmt(r.mu.imag),
            _fmt(r.rel_eig_change), _fmt(r.rel_change_1), _fmt(r.rel_change_2), r.branch,
            _fmt(r.coarse), _fmt(r.sharp_lower), _fmt(r.sharp_upper), _fmt(r.phi), _fmt(r.kappa),
            _fmt(r.audit_dkappa), _fmt(r.audit_kappa_mu),
        ])
    return buf.getvalue()


def trial_rng(seed, trial):
    return np.random.default_rng([seed, trial, 1])


def trial_matrix(config, trial):
    return random_symplectic(config.n_half, seed=[config.seed, trial, 0], spread=config.spread)


def choose_eigenvalue(S, rng, tol_pair=TOL_PAIR):
    """Uniformly random simple eigenvalue (not +-1) with an applicable
    eigenvector pair; ``None`` if every candidate fails."""
    w = np.linalg.eigvals(S.entries)
    for k in rng.permutation(w.size):
        lam = w[k]
        if _cluster(w, lam, tol_pair).size != 1:
            continue
        if abs(lam - 1.0 / lam) <= tol_pair * max(1.0, abs(lam)):
            continue
        try:
            return select_update_pair(S, lam)
        except (NotApplicableError, NotSimpleError):
            continue
    return None


def _kappa_audit(S, s_hat, lam, mu, tol_pair=TOL_PAIR):
    """Largest relative change of kappa over untouched simple eigenvalues,
    and the relative gap between kappa(S_hat, mu) and kappa(S, lam)."""
    w0, k0 = condition_numbers(S)
    w1, k1 = condition_numbers(s_hat)
    excluded_old = (lam, 1.0 / lam)
    excluded_new = (mu, 1.0 / mu)

    def near(z, targets):
        return any(abs(z - t) <= 1e-6 * max(1.0, abs(t)) for t in targets)

    worst = 0.0
    for i, z in enumerate(w0):
        if near(z, excluded_old) or near(z, excluded_new):
            continue
        if _cluster(w0, z, tol_pair).size != 1:
            continue
        j = int(np.argmin(np.abs(w1 - z)))
        worst = max(worst, abs(k1[j] - k0[i]) / k0[i])
    i0 = int(np.argmin(np.abs(w0 - lam)))
    j0 = int(np.argmin(np.abs(w1 - mu)))
    return worst, abs(k1[j0] - k0[i0]) / k0[i0]


def run_trial(config, trial):
    """One random matrix, one eigenvalue, both canonical updates."""
    rng = trial_rng(config.seed, trial)
    S = trial_matrix(config, trial)
    pair = choose_eigenvalue(S, rng)
    if pair is None:
        return TrialRecord(trial)
    lam = pair.lam
    z = np.exp(2j * np.pi * rng.uniform())
    gamma = config.gamma_scale * abs(lam)
    mu = lam * (1.0 + gamma * z)
    X = normalize_X(pair)
    normS = S.norm_fro
    results = {b: apply_update(S, X, canonical_R(lam, mu, b)) for b in (1, 2)}
    lower, upper, _ = sharp_bounds(lam, mu, pair.pairing, normS, config.branch)
    rec = TrialRecord(
        trial=trial,
        lambda1=complex(lam),
        mu=complex(mu),
        rel_eig_change=abs(lam - mu) / abs(lam),
        rel_change_1=results[1].delta_frobenius / normS,
        rel_change_2=results[2].delta_frobenius / normS,
        coarse=float(coarse_bound(lam, mu, pair.pairing, config.branch)),
        sharp_lower=float(lower),
        sharp_upper=float(upper),
        phi=1.0 / (abs(pair.pairing) * normS),
        kappa=1.0 / abs(pair.pairing),
        branch=config.branch,
    )
    if config.audit:
        rec.audit_dkappa, rec.audit_kappa_mu = _kappa_audit(
            S.entries, results[1].s_hat.entries, lam, mu
        )
    return rec


def run_trials(config):
    return [run_trial(config, t) for t in range(config.trials)]


def run_fig1(config):
    """Records for the bound comparison; CSV via :func:`records_to_csv`."""
    return run_trials(config)


def run_fig2(config):
    """Records comparing both branches (use ``gamma_scale`` 1e-3 or 1e3)."""
    return run_trials(config)


def branch_medians(records):
    done = [r for r in records if not r.skipped]
    return (
        float(np.median([r.rel_change_1 for r in done])),
        float(np.median([r.rel_change_2 for r in done])),
    )


@dataclass
class GridResult:
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray = field(repr=False)  # values[i, j] at c = xs[i] + 1j*ys[j]
    lambda1: complex
    mu: complex
    canonical: tuple  # relative change of the two canonical updates

    @property
    def argmin(self):
        return np.unravel_index(int(np.argmin(self.values)), self.values.shape)

    @property
    def argmin_c(self):
        i, j = self.argmin
        return complex(self.xs[i], self.ys[j])

    def origin_offset(self):
        """Distance of the argmin from ``c = 0`` in grid steps, per axis."""
        i, j = self.argmin
        o = (len(self.xs) - 1) / 2.0
        return float(abs(i - o)), float(abs(j - o))

    def argmin_near_origin(self):
        """At the origin node or one of its neighbours.

        With an even number of points the origin lies between four nodes,
        all at offset 0.5; their neighbours sit at 1.5.
        """
        di, dj = self.origin_offset()
        return max(di, dj) <= 1.5

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "value"])
        for i, x in enumerate(self.xs):
            for j, y in enumerate(self.ys):
                w.writerow([_fmt(float(x)), _fmt(float(y)), _fmt(float(self.values[i, j]))])
        return buf.getvalue()


def grid_values(S, X, lam, mu, cs):
    """``min_j ||X R_j X^T J^T S||_F / ||S||_F`` with ``R_j = R(eta_j(c),
    sqrt(c), sqrt(c))`` for each ``c`` in ``cs``.

    Uses ``||X R W||_F^2 = tr(R^H (X^H X) R (W W^H))`` with ``W = X^T J^T S``.
    """
    A = S.entries
    J = StructureJ(A.shape[0] // 2)
    Xm = X.X
    W = J.apply_left(Xm).T @ A
    G1 = Xm.conj().T @ Xm
    G2 = W @ W.conj().T
    normS = np.linalg.norm(A)
    out = np.empty(len(cs))
    for k, c in enumerate(cs):
        r = np.sqrt(complex(c))
        best = math.inf
        for eta in eta_roots(lam, mu, r * r):
            R = build_R(eta, r, r, lam, mu).R
            val = np.trace(R.conj().T @ G1 @ R @ G2).real
            best = min(best, math.sqrt(max(val, 0.0)))
        out[k] = best / normS
    return out


def run_fig3(config):
    """Grid over ``c = x + iy`` in ``[-h, h]^2`` for one fixed matrix."""
    rng = trial_rng(config.seed, 0)
    S = trial_matrix(config, 0)
    pair = choose_eigenvalue(S, rng)
    if pair is None:
        raise SympError("no applicable simple eigenvalue in the fixed matrix")
    lam = pair.lam
    z = np.exp(2j * np.pi * rng.uniform())
    mu = lam * (1.0 + config.gamma_scale * abs(lam) * z)
    X = normalize_X(pair)
    h = config.grid_halfwidth
    xs = np.linspace(-h, h, config.grid_points)
    ys = np.linspace(-h, h, config.grid_points)
    cs = (xs[:, None] + 1j * ys[None, :]).ravel()
    values = grid_values(S, X, lam, mu, cs).reshape(len(xs), len(ys))
    canonical = tuple(
        apply_update(S, X, canonical_R(lam, mu, b)).delta_frobenius / S.norm_fro for b in (1, 2)
    )
    return GridResult(xs, ys, values, complex(lam), complex(mu), canonical)
