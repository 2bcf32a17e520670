"""Dense matrix I/O: Matrix Market (array, complex general), CSV export and
the JSON manifest that names the two files of a pencil."""

import csv
import json
from pathlib import Path

import numpy as np
import scipy.io

from .errors import InvalidInputError


def read_matrix(path):
    M = scipy.io.mmread(str(path))
    if hasattr(M, "toarray"):
        M = M.toarray()
    return np.asarray(M, dtype=complex)


def write_matrix(path, M, comment=""):
    scipy.io.mmwrite(str(path), np.asarray(M, dtype=complex), comment=comment, field="complex", symmetry="general")


def write_csv(path, M):
    """Row-major CSV; every cell holds ``re,im``."""
    M = np.asarray(M, dtype=complex)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for row in M:
            w.writerow([f"{float(z.real)!r},{float(z.imag)!r}" for z in row])


def read_csv(path):
    with open(path, newline="") as fh:
        rows = [[complex(*map(float, cell.split(","))) for cell in row] for row in csv.reader(fh)]
    return np.array(rows, dtype=complex)


def read_manifest(path):
    """Load ``{"a_path": ..., "b_path": ...}``; relative paths resolve
    against the manifest's directory."""
    path = Path(path)
    manifest = json.loads(path.read_text())
    missing = {"a_path", "b_path"} - set(manifest)
    if missing:
        raise InvalidInputError(f"manifest {path} lacks {sorted(missing)}")
    base = path.parent
    a = read_matrix(base / manifest["a_path"])
    b = read_matrix(base / manifest["b_path"])
    return a, b


def write_manifest(path, A, B, a_name=None, b_name=None):
    path = Path(path)
    stem = path.stem
    a_name = a_name or f"{stem}_A.mtx"
    b_name = b_name or f"{stem}_B.mtx"
    write_matrix(path.parent / a_name, A)
    write_matrix(path.parent / b_name, B)
    path.write_text(json.dumps({"a_path": a_name, "b_path": b_name}, indent=2) + "\n")
    return path
