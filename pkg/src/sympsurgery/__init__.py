"""Structure-preserving eigenvalue surgery for complex symplectic matrices
and pencils."""

from .bounds import BoundsReport, bounds_report, coarse_bound, exact_distance, sharp_bounds
from .errors import *  # noqa: F401,F403
from .pencil import SympPencil, pencil_apply_update, pencil_eigs, pencil_residual, pencil_select_update_pair
from .spectral import (
    ReciprocalPair,
    SegreChar,
    eig_condition_number,
    eig_pairs,
    normalize_X,
    segre_characteristic,
    select_update_pair,
)
from .surgery import (
    Branch,
    UpdateCoeffs,
    apply_update,
    canonical_R,
    commutator_residual,
    eta_roots,
    gap_d,
    general_R,
    modify,
    omega,
)
from .sympcore import StructureJ, SympMatrix, random_symplectic, star, symplecticity_residual

__version__ = "0.1.0"
