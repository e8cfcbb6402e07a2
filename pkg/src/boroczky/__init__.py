"""Exact computer algebra for Böröczky line arrangements.

Builds the arrangements B_n over cyclotomic fields, the ideal of their
triple points, and decides whether I^(3) is contained in I^2.
"""
from .arrangement import boroczky_lines, dual_hesse, incidence, triple_points
from .exact import QQ, CyclotomicField
from .groebner import Ideal, buchberger, free_resolution
from .ideals import (bocci_harbourne, containment_direct, ghm_check, hilbert_burch, radical_ideal,
                     seceleanu_check, symbolic_power)
from .polyring import PolyRing

__version__ = "0.1.0"

__all__ = [
    "QQ", "CyclotomicField", "PolyRing", "Ideal", "buchberger", "free_resolution",
    "boroczky_lines", "dual_hesse", "incidence", "triple_points",
    "radical_ideal", "symbolic_power", "containment_direct", "bocci_harbourne",
    "hilbert_burch", "ghm_check", "seceleanu_check",
]
