"""Verification toolkit for LCM-closed number sets and union-closed families."""
from .arith import (
    ExponentVector,
    PrimePower,
    divides,
    factorize,
    format_factored,
    gcd,
    lcm,
    nth_prime,
    parse_number,
    sigma_ppe,
    to_decimal,
)
from .bridge import PrimePowerSet, f_map, family_to_numset, g_map, numset_to_family
from .family import SetFamily, Universe
from .numset import EndoFunction, NumberSet

__all__ = [
    "EndoFunction",
    "ExponentVector",
    "NumberSet",
    "PrimePower",
    "PrimePowerSet",
    "SetFamily",
    "Universe",
    "divides",
    "f_map",
    "factorize",
    "family_to_numset",
    "format_factored",
    "g_map",
    "gcd",
    "lcm",
    "nth_prime",
    "numset_to_family",
    "parse_number",
    "sigma_ppe",
    "to_decimal",
]
__version__ = "0.1.0"
