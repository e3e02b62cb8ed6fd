"""Finite skew trusses: verification, derived structure, constructions and enumeration."""

from .algebra import GroupTable, MagmaTable, group_by_name, validate_group, validate_semigroup
from .checks import Report, Verdict
from .errors import (
    AxiomError,
    BoundExceeded,
    MorphismError,
    TableError,
    TheoremViolation,
    TrussError,
    TrussLabError,
)
from .truss import LEFT, RIGHT, TWO_SIDED, SkewTruss, build_truss, translate_family

__version__ = "0.1.0"
