"""Degrees of rational first integrals for a pencil of degree-4 foliations
parametrised by Q(w), with exact Eisenstein arithmetic and independent checks."""

__version__ = "0.1.0"
