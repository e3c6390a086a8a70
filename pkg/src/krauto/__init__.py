"""Exact computations with deformed Koras-Russell threefolds."""
from .poly import MPoly, NotDivisible, exact_divide, format_poly, jac, partial, substitute
from .parse import ParseError, parse_poly
from .trunc import (
    MembershipCofactor,
    NotMember,
    TruncElem,
    ideal_membership,
    membership_with_parameter,
    truncate,
    unit_inverse,
)
from .jacobian import jacobian_preimage, preimage_of_polynomial, split
from .automorphism import (
    Derivation,
    PolyMap,
    TruncAut,
    apply,
    compose,
    exp_aut,
    extract_hamiltonian,
    filtration_level,
    invert,
    scaling_aut,
    verify_ga_action,
)
from .classify import AlphaMatrix, IsoWitness, iso_decide, iso_witness_check, normalize
from .threefold import (
    ThreefoldPresentation,
    build_section5_automorphism,
    extension_obstruction,
    induced_iso,
    lift_to_A4,
    orbit_classify,
)

__all__ = [
    "AlphaMatrix",
    "apply",
    "build_section5_automorphism",
    "compose",
    "Derivation",
    "exact_divide",
    "exp_aut",
    "extension_obstruction",
    "extract_hamiltonian",
    "filtration_level",
    "format_poly",
    "ideal_membership",
    "induced_iso",
    "invert",
    "iso_decide",
    "iso_witness_check",
    "IsoWitness",
    "jac",
    "jacobian_preimage",
    "lift_to_A4",
    "membership_with_parameter",
    "MembershipCofactor",
    "MPoly",
    "normalize",
    "NotDivisible",
    "NotMember",
    "orbit_classify",
    "parse_poly",
    "ParseError",
    "partial",
    "PolyMap",
    "preimage_of_polynomial",
    "scaling_aut",
    "split",
    "substitute",
    "ThreefoldPresentation",
    "truncate",
    "TruncAut",
    "TruncElem",
    "unit_inverse",
    "verify_ga_action",
]

__version__ = "0.1.0"
