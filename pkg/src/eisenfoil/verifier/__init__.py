"""Independent checks of the degree formula: exact geometry of the foliations
and a probabilistic extactic certifier over prime fields."""

from .extactic import Verdict, extactic_certifier, minimal_degree
from .foliation import Foliation, VectorField, reference_field
from .poly import Poly, X, Y, lie_derivative

__all__ = [
    "Foliation",
    "Poly",
    "Verdict",
    "VectorField",
    "X",
    "Y",
    "extactic_certifier",
    "lie_derivative",
    "minimal_degree",
    "reference_field",
]
