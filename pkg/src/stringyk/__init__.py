"""Exact-arithmetic engine for stringy K-theory and stringy cohomology
of finite-group quotients, with discrete torsion.

Everything is computed over Q (or small cyclotomic extensions) with no
floating point anywhere; every structural identity the engine asserts is
checked, not assumed.
"""

from stringyk.cyclotomic import Cyclo, parse_cyclo, root_of_unity
from stringyk.groups import FiniteGroup, Subgroup, TwoCocycle

__all__ = [
    "Cyclo",
    "parse_cyclo",
    "root_of_unity",
    "FiniteGroup",
    "Subgroup",
    "TwoCocycle",
]

__version__ = "0.1.0"
