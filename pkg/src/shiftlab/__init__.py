"""Betti numbers, generic initial ideals and shifting of stable simplicial complexes."""
from .betti import BettiTable, betti_ahh, betti_ek, betti_koszul, hilbert_function
from .complexes import (
    Complex,
    enumerate_stable_complexes,
    face,
    face_vertices,
    is_stable_complex,
    min_nonfaces,
    parse_complex,
    random_stable_complex,
)
from .errors import ShiftlabError
from .exactlinalg import QQ, FieldSpec, Matrix, make_field, rank, rref
from .gin import GenericChange, compute_gin, gin_exterior, gin_symmetric
from .ideals import (
    Monomial,
    MonomialIdeal,
    classify,
    complex_of,
    parse_ideal,
    sigma_ideal,
    stanley_reisner,
)
from .shifting import (
    ShiftStep,
    ShiftTrace,
    combinatorial_shift,
    exterior_shift,
    s_kl,
    shift_kl,
    sigma_star,
    symmetric_shift,
    unique_split,
)
from .verify import VerificationReport, sweep_verify, verify_complex

__version__ = "0.1.0"
