"""Exact reduction of singularities of plane foliations and their multiplicity identities."""
from .algebra import Poly1, Poly2, X, Y
from .corpus import FamilyParams, corpus, corpus_by_name, dicritical_family
from .errors import (
    AttachmentConflict,
    DepthExceeded,
    FolresError,
    FormSyntaxError,
    InvalidParams,
    IsInvariant,
    NonRationalLiteral,
    NonRationalSingularity,
    NotASeparatrix,
    NotInvariant,
)
from .foliation import CurveGerm, OneForm, classify_at_origin, multiplicity
from .invariants import build_balanced_equation, invariant_report, obstruction_dimension
from .parsing import parse_form, parse_poly
from .reduction import ResolutionTree, reduce

__version__ = "0.1.0"
