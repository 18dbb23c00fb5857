"""Constructive checks of the polynomial-method bound for F-difference-free
sets in F_q[x], with exact extremal sizes at small parameters."""

from .bounds import BoundReport, bound_value, minimize, table
from .clpcore import build_mu, build_P, degree_audit, pointwise_identity_check
from .config import Config
from .errors import SarkozyError, TheoremViolation, ValidationError
from .extremal import bound_comparison, forbidden_set, max_free_set, verify_free
from .field import FieldElement, FieldSpec, field_create, field_of_order
from .parsing import parse_polynomial
from .phimap import build_phi, preimage_zero
from .pipeline import ProofTranscript, run_pipeline, sweep
from .polynomial import MultiPoly, UniPoly
from .rankcert import certify, count_monomials, half_degree_split, rank_over_Fq

__version__ = "0.1.0"

__all__ = [
    "bound_comparison",
    "bound_value",
    "BoundReport",
    "build_mu",
    "build_P",
    "build_phi",
    "certify",
    "Config",
    "count_monomials",
    "degree_audit",
    "field_create",
    "field_of_order",
    "FieldElement",
    "FieldSpec",
    "forbidden_set",
    "half_degree_split",
    "max_free_set",
    "minimize",
    "MultiPoly",
    "parse_polynomial",
    "pointwise_identity_check",
    "preimage_zero",
    "ProofTranscript",
    "rank_over_Fq",
    "run_pipeline",
    "SarkozyError",
    "sweep",
    "table",
    "TheoremViolation",
    "UniPoly",
    "ValidationError",
    "verify_free",
]
