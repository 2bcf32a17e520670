"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 update not
applicable (no trivial Jordan chain at the requested eigenvalue).
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import harness, mmio
from .bounds import bounds_report
from .errors import (
    IllPosedError,
    InvalidDimensionError,
    InvalidEigenpairError,
    InvalidInputError,
    InvalidValueError,
    NotAnEigenvalueError,
    NotApplicableError,
    NotSymplecticError,
    NumericalFailureError,
    PairingError,
)
from .pencil import SympPencil, pencil_apply_update, pencil_eigs, pencil_select_update_pair
from .spectral import eig_pairs, normalize_X, segre_characteristic, select_update_pair
from .surgery import apply_update, make_coeffs
from .sympcore import SympMatrix

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_NOT_APPLICABLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _complex(text):
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _cplx(z):
    return [float(z.real), float(z.imag)]


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_matrix(path):
    return SympMatrix(mmio.read_matrix(path))


def cmd_check(args):
    S = _load_matrix(args.matrix)
    report = {
        "dim": S.entries.shape[0],
        "norm_fro": S.norm_fro,
        "residual": S.residual,
        "relative_residual": S.residual / (1.0 + S.norm_fro**2),
    }
    try:
        pairs = eig_pairs(S, args.tol_pair)
        report["pairs"] = [[_cplx(a), _cplx(b)] for a, b in pairs]
    except PairingError as e:
        report["pairing_failure"] = _cplx(e.orphan)
        print(json.dumps(report, indent=2))
        return EXIT_NUMERICAL
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _coeffs_for(args, lam, mu):
    return make_coeffs(lam, mu, args.branch, args.r11, args.r22, args.root)


def cmd_modify(args):
    S = _load_matrix(args.matrix)
    pair = select_update_pair(S, args.lambda1)
    mu = pair.lam if args.mu == args.lambda1 else args.mu
    X = normalize_X(pair)
    coeffs = _coeffs_for(args, pair.lam, mu)
    res = apply_update(S, X, coeffs)
    mmio.write_matrix(args.out, res.s_hat.entries)
    spectrum_res, struct_res = coeffs.residuals()
    report = {
        "lambda1": _cplx(pair.lam),
        "mu": _cplx(complex(mu)),
        "branch": coeffs.branch.value,
        "pairing": _cplx(pair.pairing),
        "R": [[_cplx(z) for z in row] for row in coeffs.R],
        "coeff_residuals": [spectrum_res, struct_res],
        "symplecticity_residual": res.s_hat.residual,
        "delta_frobenius": res.delta_frobenius,
        "relative_change": res.delta_frobenius / S.norm_fro,
        "output": str(args.out),
    }
    try:
        report["pairs"] = [[_cplx(a), _cplx(b)] for a, b in eig_pairs(res.s_hat)]
    except PairingError as e:
        report["pairing_failure"] = _cplx(e.orphan)
    text = json.dumps(report, indent=2) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bounds(args):
    S = _load_matrix(args.matrix)
    pair = select_update_pair(S, args.lambda1)
    rep = bounds_report(S, pair, args.mu, args.branch)
    sys.stdout.write(rep.to_csv())
    return EXIT_OK


def cmd_segre(args):
    A = mmio.read_matrix(args.matrix)
    seg = segre_characteristic(A, args.lam, args.tol_rank)
    print(json.dumps(seg.to_dict()))
    return EXIT_OK


def cmd_pencil(args):
    A, B = mmio.read_manifest(args.pencil_manifest)
    P = SympPencil.validated(A, B)
    pair = pencil_select_update_pair(P, args.lambda1)
    mu = pair.lam if args.mu == args.lambda1 else args.mu
    X = normalize_X(pair)
    coeffs = _coeffs_for(args, pair.lam, mu)
    out = pencil_apply_update(P, X, coeffs)
    mmio.write_manifest(args.out, out.A, out.B)
    report = {
        "lambda1": _cplx(pair.lam),
        "mu": _cplx(complex(mu)),
        "pencil_residual": out.residual,
        "relative_change_A": float(np.linalg.norm(out.A - P.A) / np.linalg.norm(P.A)),
        "pairs": [[_cplx(a), _cplx(b)] for a, b in pencil_eigs(out)],
        "manifest": str(args.out),
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _config(args, **overrides):
    kw = dict(
        n_half=args.n_half,
        trials=args.trials,
        seed=args.seed,
        gamma_scale=args.gamma_scale,
        grid_points=args.grid_points,
        grid_halfwidth=args.grid_halfwidth,
        spread=args.spread,
        branch=args.branch,
        audit=args.audit,
    )
    kw.update(overrides)
    try:
        return harness.ExperimentConfig(**kw)
    except ValueError as e:
        raise InvalidValueError(str(e))


def _run_records(args, records):
    _emit(harness.records_to_csv(records), args.out)
    if args.audit and not all(r.audit_ok() for r in records if not r.skipped):
        print("condition-number audit failed", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_fig1(args):
    return _run_records(args, harness.run_fig1(_config(args)))


def cmd_fig2(args):
    cfg = _config(args)
    records = harness.run_fig2(cfg)
    m1, m2 = harness.branch_medians(records)
    print(f"median rel change: branch1={m1!r} branch2={m2!r}", file=sys.stderr)
    return _run_records(args, records)


def cmd_fig3(args):
    grid = harness.run_fig3(_config(args))
    _emit(grid.to_csv(), args.out)
    i, j = grid.argmin
    print(
        f"argmin c={grid.argmin_c!r} value={grid.values[i, j]!r} "
        f"canonical={grid.canonical!r} near_origin={grid.argmin_near_origin()}",
        file=sys.stderr,
    )
    return EXIT_OK


def build_parser():
    p = _Parser(prog="sympsurgery", description="Structure-preserving eigenvalue surgery on symplectic matrices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def update_opts(sp):
        sp.add_argument("--lambda1", type=_complex, required=True)
        sp.add_argument("--mu", type=_complex, required=True)
        sp.add_argument("--branch", type=int, choices=(1, 2), default=1)
        sp.add_argument("--r11", type=_complex, default=None, help="general coefficients: diagonal entry r11")
        sp.add_argument("--r22", type=_complex, default=None, help="general coefficients: diagonal entry r22")
        sp.add_argument("--root", type=int, choices=(1, 2), default=1, help="eta root for general coefficients")

    sp = sub.add_parser("check", help="symplecticity residual and eigenvalue pairing")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--tol-pair", type=float, default=1e-6)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("modify", help="replace (lambda1, 1/lambda1) by (mu, 1/mu)")
    sp.add_argument("--matrix", required=True)
    update_opts(sp)
    sp.add_argument("--out", required=True, help="Matrix Market file for the updated matrix")
    sp.add_argument("--report", default=None, help="write the JSON report here instead of stdout")
    sp.set_defaults(func=cmd_modify)

    sp = sub.add_parser("bounds", help="distance certificates as one CSV row")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--lambda1", type=_complex, required=True)
    sp.add_argument("--mu", type=_complex, required=True)
    sp.add_argument("--branch", type=int, choices=(1, 2), default=1)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("segre", help="Jordan block sizes at an eigenvalue")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--lambda", dest="lam", type=_complex, required=True)
    sp.add_argument("--tol-rank", type=float, default=1e-8)
    sp.set_defaults(func=cmd_segre)

    sp = sub.add_parser("pencil", help="structure-preserving update of a pencil A - zB")
    sp.add_argument("--pencil-manifest", required=True)
    update_opts(sp)
    sp.add_argument("--out", required=True, help="output manifest path")
    sp.set_defaults(func=cmd_pencil)

    for name, func, gamma in (("fig1", cmd_fig1, 1.0), ("fig2", cmd_fig2, 1e-3), ("fig3", cmd_fig3, 1.0)):
        sp = sub.add_parser(name, help=f"experiment {name} to CSV")
        sp.add_argument("--n-half", type=int, default=20)
        sp.add_argument("--trials", type=int, default=50)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--gamma-scale", type=float, default=gamma)
        sp.add_argument("--grid-points", type=int, default=50)
        sp.add_argument("--grid-halfwidth", type=float, default=1.0)
        sp.add_argument("--spread", type=float, default=1.0)
        sp.add_argument("--branch", type=int, choices=(1, 2), default=1)
        sp.add_argument("--audit", action="store_true")
        sp.add_argument("--out", default=None)
        sp.set_defaults(func=func)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotApplicableError as e:
        print(f"not applicable: {e}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except (NumericalFailureError, NotSymplecticError, PairingError, IllPosedError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (
        NotAnEigenvalueError,
        InvalidDimensionError,
        InvalidEigenpairError,
        InvalidInputError,
        InvalidValueError,
        OSError,
        KeyError,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
