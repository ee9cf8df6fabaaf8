"""Exact TQFT computation of summed Seiberg-Witten invariants of 3-manifolds."""

from .cobordism import (
    CobordismWord,
    MorseBottError,
    Move,
    SpincParams,
    WordError,
    check_transverse,
    compose_moves,
    compose_word,
    conjugate_word,
    rho_one_handle,
    rho_twist,
    rho_two_handle,
    rotate_word,
    vortex_degree,
)
from .engine import AlexanderCheck, IntegralityError, InvariantReport, alexander_check, sw_series, sw_sum
from .surface_algebra import (
    MultiVector,
    SpMatrix,
    Surface,
    contract,
    monomial_pairing,
    new_surface,
    random_symplectic,
    sp_apply,
    wedge,
)
from .symprod import (
    GradedOperator,
    SymCohClass,
    SymSpace,
    betti,
    enumerate_basis,
    euler_char,
    graded_trace,
    induced_map,
    macdonald_series,
)
from .wordfile import parse_word_file, serialize_word

__version__ = "0.1.0"
