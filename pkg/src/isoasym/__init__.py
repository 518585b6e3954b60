"""Surface families through a common isoasymptotic curve in Minkowski 3-space."""

__version__ = "0.1.0"

from .curve import FrenetApparatus, ParamCurve, PrintedFrame, frenet_at, is_unit_speed
from .errors import IsoasymError, ParseError, UnknownPreset
from .marching import MarchingTriple, Type1Spec, Type2Spec, check_theorem_conditions
from .mlinalg import CausalClass, causal_classify, cross, inner, mvec
from .presets import get_preset, list_presets
from .surface import SurfaceFamily
from .verify import ToleranceSet, VerificationReport, verify_family, verify_preset

__all__ = [
    "CausalClass", "FrenetApparatus", "IsoasymError", "MarchingTriple", "ParamCurve", "ParseError",
    "PrintedFrame", "SurfaceFamily", "ToleranceSet", "Type1Spec", "Type2Spec", "UnknownPreset",
    "VerificationReport", "causal_classify", "check_theorem_conditions", "cross", "frenet_at",
    "get_preset", "inner", "is_unit_speed", "list_presets", "mvec", "verify_family", "verify_preset",
]
