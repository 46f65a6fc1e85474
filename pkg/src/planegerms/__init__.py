"""Exact recognition of corank-one plane-to-plane map-germs.

The public entry points are re-exported here; see the submodules for the
details of each layer.
"""

from .errors import AssumptionViolated, GermError, InputError, InsufficientOrder
from .jets import CoordChangeJet, Jet2, PlaneGermJet
from .normal_forms import NORMAL_FORMS
from .normalize import reduce_to_specified_jet
from .projection import (
    MongeForm,
    Viewpoint,
    central_projection_germ,
    classify_view,
    constraint_check,
    focal_scan,
    parallel_projection_germ,
)
from .rational import rat
from .recognize import classify, classify_specified_jet, replay

__all__ = [
    "Jet2", "PlaneGermJet", "CoordChangeJet", "rat",
    "classify", "classify_specified_jet", "replay", "reduce_to_specified_jet", "NORMAL_FORMS",
    "MongeForm", "Viewpoint", "central_projection_germ", "parallel_projection_germ",
    "classify_view", "constraint_check", "focal_scan",
    "GermError", "InputError", "InsufficientOrder", "AssumptionViolated",
]
__version__ = "0.1.0"
