"""Scalar rings backing the two evaluation modes.

``exact`` scalars are :class:`Cyclotomic` elements of one fixed conductor;
``float`` scalars are Python complex numbers obtained by embedding.
"""
from __future__ import annotations

import cmath
from fractions import Fraction

from .cyclo import Cyclotomic

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

# residual tolerance for float-mode zero tests
FLOAT_TOL = 1e-12


class ExactRing:
    mode = EXACT

    def __init__(self, conductor: int):
        self.n = conductor
        self.zero = Cyclotomic.rational(conductor, 0)
        self.one = Cyclotomic.rational(conductor, 1)

    def __eq__(self, other):
        return isinstance(other, ExactRing) and other.n == self.n

    def __hash__(self):
        return hash((EXACT, self.n))

    def __repr__(self) -> str:
        return f"ExactRing({self.n})"

    def coerce(self, x) -> Cyclotomic:
        if isinstance(x, Cyclotomic):
            if x.n != self.n:
                if x.is_rational():
                    return Cyclotomic.rational(self.n, x.as_fraction())
                raise ValueError(f"element of Q(zeta_{x.n}) used in Q(zeta_{self.n})")
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(self.n, x)
        raise TypeError(f"cannot use {x!r} as an exact scalar")

    def is_zero(self, x) -> bool:
        return not x

    def negligible(self, x) -> bool:
        return not x

    def conj(self, x):
        return x.conjugate()

    def magnitude(self, x) -> float:
        return abs(x.embed())

    def sqrt(self, x):
        raise ValueError("square roots are not available in exact mode")


class FloatRing:
    mode = FLOAT

    def __init__(self, conductor: int, tol: float = FLOAT_TOL):
        self.n = conductor
        self.tol = tol
        self.zero = 0j
        self.one = 1 + 0j

    def __eq__(self, other):
        return isinstance(other, FloatRing) and other.n == self.n

    def __hash__(self):
        return hash((FLOAT, self.n))

    def __repr__(self) -> str:
        return f"FloatRing({self.n})"

    def coerce(self, x) -> complex:
        if isinstance(x, Cyclotomic):
            return x.embed()
        return complex(x)

    def is_zero(self, x) -> bool:
        return x == 0

    def negligible(self, x) -> bool:
        return abs(x) <= self.tol

    def conj(self, x):
        return x.conjugate()

    def magnitude(self, x) -> float:
        return abs(x)

    def sqrt(self, x):
        # principal branch
        return cmath.sqrt(x)


def make_ring(mode: str, conductor: int):
    if mode == EXACT:
        return ExactRing(conductor)
    if mode == FLOAT:
        return FloatRing(conductor)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
