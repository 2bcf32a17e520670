#!/usr/bin/env python3
"""Compare the algebraic rewritings of the pencil update on (G S, G).

With a random nonsingular G only the forms that use B^{-1} A (or its
transposed inverse) agree with the diagonal form; the B^T J^T A form needs
A itself to be symplectic, which the second block of output confirms.
"""

import sys

import numpy as np

from sympsurgery.pencil import SympPencil, pencil_select_update_pair, pencil_update_forms
from sympsurgery.spectral import normalize_X
from sympsurgery.surgery import canonical_R
from sympsurgery.sympcore import random_symplectic


def report(label, G, S):
    P = SympPencil(G @ S, G)
    lam = np.linalg.eigvals(S)[0]
    pair = pencil_select_update_pair(P, lam)
    forms = pencil_update_forms(P, normalize_X(pair), canonical_R(pair.lam, 1.7 - 0.2j, 1))
    ref = forms["diagonal"]
    print(label)
    for name, M in forms.items():
        print(f"  {name:18s} rel. distance to diagonal form {np.linalg.norm(M - ref) / np.linalg.norm(ref):.2e}")


def main():
    n = 10
    S = random_symplectic(n, seed=1).entries
    rng = np.random.default_rng(2)
    G = np.eye(2 * n) + 0.3 * (rng.standard_normal((2 * n, 2 * n)) + 1j * rng.standard_normal((2 * n, 2 * n))) / np.sqrt(2 * n)
    report("random G", G, S)
    report("symplectic G", random_symplectic(n, seed=3, spread=0.3).entries, S)
    return 0


if __name__ == "__main__":
    sys.exit(main())
