"""Exact classification of canonical double points on quartic surfaces
and of the volume-preserving toric weighted blowups at them."""

from .field import GaussianRational, sqrt_if_exists
from .poly import Polynomial, parse, format_poly
from .quartic import NormalizedQuartic, normalize_at_point, normal_form
from .singclass import TypeTag, classify
from .vpanalyzer import analyze_weight, enumerate_vp, sarkisov_filter

__all__ = [
    "GaussianRational",
    "sqrt_if_exists",
    "Polynomial",
    "parse",
    "format_poly",
    "NormalizedQuartic",
    "normalize_at_point",
    "normal_form",
    "TypeTag",
    "classify",
    "analyze_weight",
    "enumerate_vp",
    "sarkisov_filter",
]
