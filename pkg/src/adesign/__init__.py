"""Constructions and exhaustive verification of t-adesigns, almost difference sets and their codes."""

from .constructions import ClaimRecord, Construction, verify, verify_construction
from .diffana import (
    AlmostDifferenceSet,
    DifferenceProfile,
    DifferenceSet,
    MultiLevel,
    difference_profile,
    is_paley_type,
    lift_to_z2,
    planar_extension_candidates,
)
from .errors import AdesignError
from .gf2codes import BitMatrix, incidence_matrix, min_distance, rank_gf2, self_orthogonality_report
from .groupalg import cyclotomic_number, field_context, gf, make_group, parse_group
from .incidence import (
    IncidenceStructure,
    LevelProfile,
    covering_rank_bound,
    development,
    dual,
    load_design,
    packing_bound,
    t_level_profile,
)

__version__ = "0.1.0"
