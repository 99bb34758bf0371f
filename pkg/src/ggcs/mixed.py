"""Grassmann variables tensored with oscillator operators.

Every element is kept in the canonical form ``sum c theta^i thetabar^j E_mn``
with the Grassmann part on the left and operators reduced to matrix units
``E_mn = |m><n|`` of a chosen Fock representation.

The vacuum projector ``E_00`` is grade 0 (it commutes with theta and
thetabar), and ``E_mn`` is read as ``(a+)^m E_00 a^n``.  Hence a generator g
with ``g a+ = q^u a+ g`` and ``g a = q^v a g`` satisfies
``g E_mn = q^(m u + n v) E_mn g``.  For majid rules this is ``q^(m-n)`` for
theta and ``q^(n-m)`` for thetabar.
"""
from __future__ import annotations

import random
from collections import defaultdict

from .fock import FockRep, operator_word
from .grassmann import GrassmannAlgebra, GrassmannElement, MissingRuleError, RuleSet, VariantMismatchError
from .scalars import EXACT

__all__ = [
    "MixedAlgebra",
    "MixedElement",
    "dagger",
    "engine_laws",
    "inject_operator",
    "m_mul",
]


class MixedAlgebra:
    def __init__(self, rules: RuleSet, mode: str = EXACT, rep: FockRep | None = None):
        if not rules.complete:
            missing = [
                f"{rules.names[g]}-{op}"
                for g in (0, 1)
                for slot, op in ((0, "a+"), (1, "a"))
                if rules.ops[g][slot] is None
            ]
            raise MissingRuleError("rule set lacks exchange rules for " + ", ".join(missing))
        if rep is not None and (rep.k != rules.k or rep.mode != mode):
            raise VariantMismatchError("representation and rule set disagree on k or mode")
        self.rules = rules
        self.mode = mode
        self.k = rules.k
        self.rep = rep
        self.grassmann = GrassmannAlgebra(rules, mode)
        self.ring = self.grassmann.ring
        k = self.k
        # exch[g][m][n]: exponent e with g E_mn = q^e E_mn g
        self.exch = [
            [[(m * rules.ops[g][0] + n * rules.ops[g][1]) % k for n in range(k)] for m in range(k)]
            for g in (0, 1)
        ]

    def __eq__(self, other):
        return (
            isinstance(other, MixedAlgebra)
            and other.rules == self.rules
            and other.mode == self.mode
        )

    def __hash__(self):
        return hash((self.rules.variant, self.k, self.mode))

    def phase(self, e: int):
        return self.grassmann.phase(e)

    # -- constructors ---------------------------------------------------------

    def element(self, terms: dict) -> MixedElement:
        return MixedElement(self, terms)

    def zero(self) -> MixedElement:
        return MixedElement(self, {})

    def identity(self) -> MixedElement:
        one = self.ring.one
        return MixedElement(self, {(0, 0, m, m): one for m in range(self.k)})

    def scalar(self, c) -> MixedElement:
        c = self.ring.coerce(c)
        return MixedElement(self, {(0, 0, m, m): c for m in range(self.k)})

    def unit(self, m: int, n: int, c=1) -> MixedElement:
        self._check_index(m, n)
        return MixedElement(self, {(0, 0, m, n): self.ring.coerce(c)})

    def ket(self, m: int) -> MixedElement:
        return self.unit(m, 0)

    def bra(self, n: int) -> MixedElement:
        return self.unit(0, n)

    def term(self, c, i: int, j: int, m: int, n: int) -> MixedElement:
        self._check_index(m, n)
        return MixedElement(self, {(i, j, m, n): self.ring.coerce(c)})

    def grassmann_monomial(self, i: int, j: int, c=1) -> MixedElement:
        c = self.ring.coerce(c)
        return MixedElement(self, {(i, j, m, m): c for m in range(self.k)})

    def theta(self, power: int = 1) -> MixedElement:
        return self.grassmann_monomial(power, 0)

    def thetabar(self, power: int = 1) -> MixedElement:
        return self.grassmann_monomial(0, power)

    def lift(self, g: GrassmannElement) -> MixedElement:
        """A pure Grassmann element times the identity operator."""
        if g.alg.rules.variant != self.rules.variant or g.alg.k != self.k:
            raise VariantMismatchError("Grassmann element from a different algebra")
        return MixedElement(
            self, {(i, j, m, m): c for (i, j), c in g.terms.items() for m in range(self.k)}
        )

    def operator(self, word) -> MixedElement:
        if self.rep is None:
            raise ValueError("no Fock representation attached to this algebra")
        return inject_operator(word, self.rep, self)

    def _check_index(self, m: int, n: int):
        if not (0 <= m < self.k and 0 <= n < self.k):
            raise IndexError(f"matrix unit E_{m}{n} outside 0..{self.k - 1}")


class MixedElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: MixedAlgebra, terms: dict):
        self.alg = alg
        k = alg.k
        ring = alg.ring
        self.terms = {
            key: c for key, c in terms.items() if key[0] < k and key[1] < k and not ring.is_zero(c)
        }

    def _lift(self, other):
        if isinstance(other, MixedElement):
            if other.alg != self.alg:
                raise VariantMismatchError("mixed elements from different algebras")
            return other
        if isinstance(other, GrassmannElement):
            return self.alg.lift(other)
        try:
            return self.alg.scalar(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for key, c in o.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return MixedElement(self.alg, terms)

    __radd__ = __add__

    def __neg__(self):
        return MixedElement(self.alg, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> MixedElement:
        c = self.alg.ring.coerce(c)
        return MixedElement(self.alg, {key: v * c for key, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (MixedElement, GrassmannElement)):
            return m_mul(self, self._lift(other))
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, GrassmannElement):
            return m_mul(self.alg.lift(other), self)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        c = self.alg.ring.coerce(other)
        if self.alg.ring.is_zero(c):
            raise ZeroDivisionError("division of a mixed element by zero")
        return self.scale(1 / c)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("mixed elements only support non-negative integer powers")
        out = self.alg.identity()
        for _ in range(e):
            out = m_mul(out, self)
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def max_abs(self) -> float:
        ring = self.alg.ring
        return max((ring.magnitude(c) for c in self.terms.values()), default=0.0)

    def coefficient(self, i: int, j: int, m: int, n: int):
        return self.terms.get((i, j, m, n), self.alg.ring.zero)

    def grassmann_part(self, m: int, n: int) -> GrassmannElement:
        """The Grassmann coefficient of ``E_mn``."""
        return GrassmannElement(
            self.alg.grassmann, {(i, j): c for (i, j, mm, nn), c in self.terms.items() if (mm, nn) == (m, n)}
        )

    def dagger(self) -> MixedElement:
        return dagger(self)

    def __repr__(self) -> str:
        from .dsl import format_element

        return format_element(self)


def m_mul(x: MixedElement, y: MixedElement) -> MixedElement:
    """Canonical product.

    ``E_mn theta^i thetabar^j = q^-(i e0 + j e1) theta^i thetabar^j E_mn``
    where ``e0, e1`` are the exchange exponents of theta and thetabar with
    ``E_mn``; afterwards ``E_mn E_pr = delta_np E_mr`` and the Grassmann
    factors are multiplied as in :func:`g_mul`.
    """
    if x.alg != y.alg:
        raise VariantMismatchError("mixed elements from different algebras")
    alg = x.alg
    k = alg.k
    swap = alg.rules.swap
    ex0, ex1 = alg.exch
    by_row = defaultdict(list)
    for (i2, j2, m2, n2), c2 in y.terms.items():
        by_row[m2].append((i2, j2, n2, c2))
    out: dict = {}
    for (i1, j1, m1, n1), c1 in x.terms.items():
        row = by_row.get(n1)
        if not row:
            continue
        e0, e1 = ex0[m1][n1], ex1[m1][n1]
        for i2, j2, n2, c2 in row:
            i, j = i1 + i2, j1 + j2
            if i >= k or j >= k:
                continue
            e = (swap * j1 * i2 - i2 * e0 - j2 * e1) % k
            c = c1 * c2
            if e:
                c = c * alg.phase(e)
            key = (i, j, m1, n2)
            out[key] = out[key] + c if key in out else c
    return MixedElement(alg, out)


def dagger(x: MixedElement) -> MixedElement:
    """Antilinear anti-involution: ``(c theta^i thetabar^j E_mn)^dagger = conj(c) E_nm theta^j thetabar^i``,
    then re-canonicalized."""
    alg = x.alg
    k = alg.k
    ring = alg.ring
    ex0, ex1 = alg.exch
    out = {}
    for (i, j, m, n), c in x.terms.items():
        # move E_nm right past theta^j thetabar^i
        e = (-(j * ex0[n][m] + i * ex1[n][m])) % k
        cc = ring.conj(c)
        if e:
            cc = cc * alg.phase(e)
        out[(j, i, n, m)] = cc
    return MixedElement(alg, out)


def inject_operator(word, rep: FockRep, alg: MixedAlgebra | RuleSet) -> MixedElement:
    """Expand the matrix of an operator word (names 'a', 'ad') over matrix units."""
    if isinstance(alg, RuleSet):
        alg = MixedAlgebra(alg, rep.mode, rep)
    if rep.k != alg.k or rep.mode != alg.mode:
        raise VariantMismatchError("representation and algebra disagree on k or mode")
    names = []
    for w in word:
        if w in ("a", "annihilation"):
            names.append("a")
        elif w in ("ad", "a+", "adag", "creation"):
            names.append("ad")
        else:
            raise ValueError(f"unknown operator {w!r} in word")
    mat = operator_word(rep, names)
    terms = {}
    for m in range(rep.k):
        for n in range(rep.k):
            c = mat[m, n]
            if not alg.ring.is_zero(c):
                terms[(0, 0, m, n)] = c
    return MixedElement(alg, terms)


def random_element(alg: MixedAlgebra, rnd: random.Random, terms: int = 3, spread: int = 3) -> MixedElement:
    """A short random element with small exact coefficients (exact mode) or complex ones (float)."""
    from .cyclo import Cyclotomic

    k = alg.k
    n = alg.rules.q.n
    deg = Cyclotomic.rational(n, 0).degree
    out = {}
    for _ in range(terms):
        key = tuple(rnd.randrange(k) for _ in range(4))
        c = Cyclotomic(n, [rnd.randint(-spread, spread) for _ in range(deg)], rnd.randint(1, spread))
        out[key] = alg.ring.coerce(c)
    return MixedElement(alg, out)


def engine_laws(alg: MixedAlgebra, samples: int = 100, seed: int = 0) -> list[tuple[str, bool, str]]:
    """Sampled checks of the algebra laws: unit, associativity, dagger involution and anti-multiplicativity."""
    rnd = random.Random(seed)
    ident = alg.identity()
    results = {"identity-unit": 0, "m_mul-associativity": 0, "dagger-involution": 0, "dagger-antimultiplicative": 0}
    for _ in range(samples):
        x, y, z = (random_element(alg, rnd) for _ in range(3))
        if not (m_mul(ident, x) == x and m_mul(x, ident) == x):
            results["identity-unit"] += 1
        if not m_mul(m_mul(x, y), z) == m_mul(x, m_mul(y, z)):
            results["m_mul-associativity"] += 1
        if not dagger(dagger(x)) == x:
            results["dagger-involution"] += 1
        if not dagger(m_mul(x, y)) == m_mul(dagger(y), dagger(x)):
            results["dagger-antimultiplicative"] += 1
    return [
        (name, bad == 0, f"{bad} of {samples} random samples violate the law")
        for name, bad in results.items()
    ]
