"""Exact computer algebra for double Hall algebras of cyclic quivers.

Subpackages build on each other roughly bottom-up:

* laurent     exact arithmetic in Z[v, v^-1] and Q(v)
* periodic    periodic matrices/vectors and their combinatorial statistics
* gf, quiver  finite-field oracle: representations, submodule and
              automorphism counts, interpolated counting polynomials
* hall        twisted Hall products on the positive/negative halves
* double_hall PBW normal form and the commutation engine
* modified    idempotented algebra, integral basis, completion windows
* heckeschur  affine q-Schur algebra via affine permutations and Hecke
              double cosets; the evaluation maps onto it
* classical   the v = 1 theory: loop algebra, Kostant-style Z-form
* cli         batch front end (`ahs`)
"""

from .laurent import (
    LaurentPoly,
    RationalFn,
    eval_at_prime_power,
    interpolate,
    specialize_v1,
)
from .periodic import E, PeriodicMat, PeriodicVec

__all__ = [
    "LaurentPoly",
    "RationalFn",
    "eval_at_prime_power",
    "interpolate",
    "specialize_v1",
    "E",
    "PeriodicMat",
    "PeriodicVec",
]

__version__ = "0.1.0"
