"""Exact tensor-space machinery for Birman-Murakami-Wenzl algebras.

Builds representations of the BMW algebra B_r on quantum-group tensor
space V**r for the symplectic and orthogonal families, realizes its
cell modules there, and computes decomposition matrices at roots of
unity with exact cyclotomic arithmetic.
"""

from .scalars import (LaurentPoly, RationalFunction, Cyclotomic, ScalarRing,
                      qint, qfactorial, qbinomial)

__version__ = '0.1.0'
