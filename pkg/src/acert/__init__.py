"""Exact computations over Weyl algebras with commuting parameters
``D_n[s_1..s_r]``: Groebner bases, resolutions, Ext and grade, characteristic
varieties, acyclicity certificates for complexes, and logarithmic Spencer
complexes of free divisors."""

__version__ = "0.1.0"

from .charvar import ch_dim, char_dim_report, gr_presentation, grade_via_gr, ox_support_dim
from .certifier import certify_acyclic, check_complex, lemma_grade_report
from .errors import AcertError
from .homlib import (ChainComplex, PresentedModule, auslander_check, ext, grade, homology,
                     homology_is_zero, is_zero, pdim)
from .logspencer import (Divisor, FsElement, act_on_fs, log_derivations, mflog, saito_basis,
                         saito_check, spencer_complex, structure_constants, theta_generators)
from .orders import DegRevLex, EliminationOrder, Lex, WeightOrder
from .parsing import parse_element
from .polycore import (PolyRing, comm_gb, comm_lift, comm_nf, comm_syz, eliminate, exact_divide,
                       fitting0, ideal_dim, poly_ring)
from .weyl import (RingSignature, free_resolution, left_gb, left_lift, left_nf, left_syz, tau,
                   weyl_mul)
from ._engine import resource_guard

__all__ = [name for name in dir() if not name.startswith("_")]
