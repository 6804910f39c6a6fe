"""Exact point-line incidence analysis in the projective plane.

Counts the lines spanned by a finite point set, checks the bound
t(X) >= ceil(n/2), constructs an ordinary point for sets lying on three
concurrent lines, and builds the classical counterexample families.
"""

from .configuration import Configuration, euclideanize, transform
from .errors import *  # noqa: F403
from .generators import FamilyParams, aikn_fig1, aikn_fig2, random_concurrent, random_general
from .incidence import (
    IncidenceReport,
    detect_concurrent_structure,
    dirac_threshold,
    incidence_count,
    incidence_report,
    spanned_lines,
    verify_dirac,
)
from .kernel import (
    LINE_AT_INFINITY,
    ProjLine,
    ProjPoint,
    ProjTransform,
    affine_between,
    apply,
    apply_dual,
    canonicalize,
    collinear,
    half_line_side,
    incident,
    join,
    meet,
)
from .structure import ConcurrentStructure, HalfLine, build_structure
from .witness import WitnessResult, find_ordinary_point

__version__ = "0.1.0"
