"""Exact big-bracket computations for L-infinity algebras, r-infinity matrices
and triangular L-infinity bialgebras."""

from .bigbracket import PolyMap, apply, big_bracket, circle, differential, is_mc
from .fileformat import AlgebraSpec, load_fixture, parse_algebra, parse_text, serialize
from .graded import (
    BasisVec,
    Elem,
    GradedBasis,
    InvalidInputError,
    SymWord,
    elem_add,
    elem_scale,
    koszul_sign,
    normalize_word,
    reshift,
    shuffles,
    sym_product,
)
from .linfty import (
    LInftyAlg,
    SchoutenAlg,
    ce_differential,
    check_hamiltonian_morphism,
    check_higher_jacobi,
    check_schouten_linfty,
    schouten_bracket,
    schouten_extend,
)
from .policy import DEFAULT_POLICY, TruncationPolicy, VerificationReport, Witness
from .report import TOOL_VERSION as __version__
from .transfer import (
    BialgebraStructure,
    CanonicalMorphism,
    LambdaSeries,
    TransferError,
    canonical_phi,
    check_generalized_mc,
    check_linfty_morphism,
    n_map,
    transfer,
)

__all__ = [
    "AlgebraSpec", "BasisVec", "BialgebraStructure", "CanonicalMorphism", "DEFAULT_POLICY",
    "Elem", "GradedBasis", "InvalidInputError", "LInftyAlg", "LambdaSeries", "PolyMap",
    "SchoutenAlg", "SymWord", "TransferError", "TruncationPolicy", "VerificationReport",
    "Witness", "apply", "big_bracket", "canonical_phi", "ce_differential",
    "check_generalized_mc", "check_hamiltonian_morphism", "check_higher_jacobi",
    "check_linfty_morphism", "check_schouten_linfty", "circle", "differential", "elem_add",
    "elem_scale", "is_mc", "koszul_sign", "load_fixture", "n_map", "normalize_word",
    "parse_algebra", "parse_text", "reshift", "schouten_bracket", "schouten_extend",
    "serialize", "shuffles", "sym_product", "transfer",
]
