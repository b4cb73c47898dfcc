"""Exact tools for deciding conjugacy of diffeomorphisms of the real line."""

from .diffeo import DiffeoSpec, SpecError, load_spec, parse_spec
from .dynamics import (
    SquareRootFamily,
    comp_square_root,
    is_involutive,
    koenigs_linearize,
    square_deviation,
)
from .engine import (
    CONJUGATE,
    NOT_CONJUGATE,
    UNDETERMINED,
    ConjugacyVerdict,
    ConjugatorCertificate,
    full_group_decide,
    reversing_decide,
)
from .expr import evaluate, parse_expression
from .jets import taylor_jet
from .series import (
    TruncatedSeries,
    comp_inverse,
    comp_power,
    compose,
    conjugate,
    deviation_index,
    equals_mod,
)
from .verify import brute_force_square_roots, check_conjugacy_numeric

__version__ = "0.1.0"

__all__ = [
    "CONJUGATE",
    "NOT_CONJUGATE",
    "UNDETERMINED",
    "ConjugacyVerdict",
    "ConjugatorCertificate",
    "DiffeoSpec",
    "SpecError",
    "SquareRootFamily",
    "TruncatedSeries",
    "brute_force_square_roots",
    "check_conjugacy_numeric",
    "comp_inverse",
    "comp_power",
    "comp_square_root",
    "compose",
    "conjugate",
    "deviation_index",
    "equals_mod",
    "evaluate",
    "full_group_decide",
    "is_involutive",
    "koenigs_linearize",
    "load_spec",
    "parse_expression",
    "parse_spec",
    "reversing_decide",
    "square_deviation",
    "taylor_jet",
]
