"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored as integer polynomials in ``zeta`` of degree below
``phi(N)`` together with one positive common denominator, reduced modulo the
N-th cyclotomic polynomial (which is monic with integer coefficients, so the
reduction never leaves the integers).
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "Cyclotomic",
    "CyclotomicError",
    "ConductorMismatchError",
    "InvalidConductorError",
    "cyclotomic_polynomial",
    "totient",
    "zeta",
]


class CyclotomicError(ArithmeticError):
    pass


class InvalidConductorError(CyclotomicError, ValueError):
    pass


class ConductorMismatchError(CyclotomicError, ValueError):
    pass


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _int_poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    # both ascending-order coefficient lists, den monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        out[i - dn] = c
        if c:
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise CyclotomicError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n in ascending order."""
    if n < 1:
        raise InvalidConductorError(f"conductor must be >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_exact_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coefficients of zeta^e for e in 0..n-1."""
    phi = len(cyclotomic_polynomial(n)) - 1
    rows = []
    for e in range(n):
        v = [0] * (e + 1)
        v[e] = 1
        rows.append(tuple(_reduce(v, n, phi)))
    return tuple(rows)


def _reduce(poly: list[int], n: int, phi: int) -> list[int]:
    mod = cyclotomic_polynomial(n)
    poly = list(poly)
    for i in range(len(poly) - 1, phi - 1, -1):
        c = poly[i]
        if c:
            base = i - phi
            for j in range(phi):
                poly[base + j] -= c * mod[j]
    if len(poly) < phi:
        poly.extend([0] * (phi - len(poly)))
    return poly[:phi]


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                break
    if not any(num):
        return tuple(0 for _ in num), 1
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


# -- rational polynomial helpers for the extended-gcd inverse ---------------

def _frac_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _frac_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_frac_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
    return _frac_trim(q), a


def _frac_sub_mul(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qc in enumerate(q):
        if qc:
            for j, bc in enumerate(b):
                out[i + j] -= qc * bc
    return _frac_trim(out)


class Cyclotomic:
    """An element of Q(zeta_N), immutable."""

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, n: int, coeffs=None, den: int = 1):
        if n < 1:
            raise InvalidConductorError(f"conductor must be >= 1, got {n}")
        phi = len(cyclotomic_polynomial(n)) - 1
        if coeffs is None:
            coeffs = [0] * phi
        fracs = [Fraction(c) for c in coeffs]
        common = den
        for f in fracs:
            common = common * f.denominator // math.gcd(common, f.denominator)
        ints = [int(f * common) for f in fracs]
        if len(ints) > phi:
            ints = _reduce(ints, n, phi)
        elif len(ints) < phi:
            ints = ints + [0] * (phi - len(ints))
        self.n = n
        self.num, self.den = _normalize(ints, common)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, num: tuple[int, ...], den: int) -> Cyclotomic:
        obj = object.__new__(cls)
        obj.n = n
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, n: int, value) -> Cyclotomic:
        f = Fraction(value)
        phi = len(cyclotomic_polynomial(n)) - 1
        return cls._raw(n, (f.numerator,) + (0,) * (phi - 1), f.denominator)

    @classmethod
    def zeta_power(cls, n: int, e: int) -> Cyclotomic:
        row = _power_table(n)[e % n]
        return cls._raw(n, row, 1)

    @property
    def degree(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                raise ConductorMismatchError(
                    f"cannot combine elements of Q(zeta_{self.n}) and Q(zeta_{other.n})"
                )
            return other
        if isinstance(other, (int, Rational)):
            return Cyclotomic.rational(self.n, other)
        return None

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.den == self.den:
            num = [a + b for a, b in zip(self.num, o.num)]
            num, den = _normalize(num, self.den)
        else:
            num = [a * o.den + b * self.den for a, b in zip(self.num, o.num)]
            num, den = _normalize(num, self.den * o.den)
        return Cyclotomic._raw(self.n, num, den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.n, tuple(-c for c in self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not any(self.num) or not any(o.num):
            return Cyclotomic._raw(self.n, (0,) * len(self.num), 1)
        a, b = self.num, o.num
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        num = _reduce(prod, self.n, len(a))
        num, den = _normalize(num, self.den * o.den)
        return Cyclotomic._raw(self.n, num, den)

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return Cyclotomic.rational(self.n, 1 / self.as_fraction())
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        r0, r1 = mod, _frac_trim([Fraction(c, self.den) for c in self.num])
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            quo, rem = _frac_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _frac_sub_mul(s0, quo, s1)
        # r1 is a nonzero constant since Phi_N is irreducible
        c = r1[0]
        return Cyclotomic(self.n, [x / c for x in s1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = Cyclotomic.rational(self.n, 1)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- automorphisms ------------------------------------------------------

    def galois(self, a: int) -> Cyclotomic:
        """Apply the automorphism zeta -> zeta^a (gcd(a, N) = 1)."""
        if math.gcd(a, self.n) != 1:
            raise CyclotomicError(f"{a} is not a unit modulo {self.n}")
        table = _power_table(self.n)
        out = [0] * len(self.num)
        for i, c in enumerate(self.num):
            if c:
                row = table[(i * a) % self.n]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return Cyclotomic._raw(self.n, tuple(out), self.den)

    def conjugate(self) -> Cyclotomic:
        return self.galois(self.n - 1) if self.n > 2 else self

    def norm(self) -> Fraction:
        """Field norm down to Q: the product of all Galois conjugates."""
        prod = Cyclotomic.rational(self.n, 1)
        for a in range(1, self.n + 1):
            if math.gcd(a, self.n) == 1:
                prod = prod * self.galois(a)
        return prod.as_fraction()

    # -- numerics -----------------------------------------------------------

    def embed(self) -> complex:
        w = cmath.exp(2j * math.pi / self.n)
        total = 0j
        for i, c in enumerate(self.num):
            if c:
                total += c * w**i
        return total / self.den

    def __complex__(self) -> complex:
        return self.embed()

    def __abs__(self) -> float:
        return abs(self.embed())

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                if self.is_rational() and other.is_rational():
                    return self.as_fraction() == other.as_fraction()
                return False
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.n, self.num, self.den))
        return self._hash

    # -- printing -----------------------------------------------------------

    def format(self, var: str = "zeta") -> str:
        """Render as a polynomial in ``var`` (the field generator)."""
        parts = []
        for i, f in enumerate(self.coeffs):
            if f == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(f)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if f < 0 else "+", body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format(f"z{self.n}")

    def __repr__(self) -> str:
        coeffs = ", ".join(str(c) for c in self.coeffs)
        return f"Cyclotomic({self.n}, [{coeffs}])"


def zeta(k: int) -> Cyclotomic:
    """The primitive k-th root of unity exp(2 pi i / k) in Q(zeta_k)."""
    if not isinstance(k, int) or k < 1:
        raise InvalidConductorError(f"conductor must be a positive integer, got {k!r}")
    return Cyclotomic.zeta_power(k, 1)
