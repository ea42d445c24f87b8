"""Graded supercommutative algebra: rings, Chern calculus, coproduct, series."""

from .chern import (
    KunnethClass,
    chchar_to_chern,
    chern_to_chchar,
    direct_sum,
    inverse_total,
    k_difference,
    kunneth_component,
    kunneth_total_chern,
    twist_class,
)
from .hopf import DegreeOverflowError, coproduct, counit, iterated_coproduct, whitney_map
from .hpoly import HPoly, hgen, hone, hpoly_mul, hring, parse_hpoly
from .rings import CurveZRing, FreeRing, RingHom, Tensor, XCohRing, swap
from .series import QSeries, poincare_coh_positive_rank, poincare_coh_torsion

__all__ = [
    "KunnethClass",
    "chchar_to_chern",
    "chern_to_chchar",
    "direct_sum",
    "inverse_total",
    "k_difference",
    "kunneth_component",
    "kunneth_total_chern",
    "twist_class",
    "DegreeOverflowError",
    "coproduct",
    "counit",
    "iterated_coproduct",
    "whitney_map",
    "HPoly",
    "hgen",
    "hone",
    "hpoly_mul",
    "hring",
    "parse_hpoly",
    "CurveZRing",
    "FreeRing",
    "RingHom",
    "Tensor",
    "XCohRing",
    "swap",
    "QSeries",
    "poincare_coh_positive_rank",
    "poincare_coh_torsion",
]
