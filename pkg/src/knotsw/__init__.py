"""Exact Alexander polynomials and Seiberg-Witten construction calculus."""

from .laurent import LaurentPoly, canonical_rep, divide_exact, parse_poly
from .diagram import LinkDiagram, parse, twist, whitehead
from .skein import alexander, conway
from .fox import alexander_multi

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "canonical_rep",
    "divide_exact",
    "parse_poly",
    "LinkDiagram",
    "parse",
    "twist",
    "whitehead",
    "alexander",
    "conway",
    "alexander_multi",
]
