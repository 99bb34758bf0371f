"""One-mode generalized Grassmann algebra with nilpotency degree k.

Two rule sets are supported.  ``majid`` uses q-commuting variables
``theta, thetabar``; ``kerner`` uses Z_k-graded variables ``xi, xibar`` whose
single-mode content reduces to nilpotency plus one binary relation.  Every
phase is stored as an exponent of ``q`` modulo ``k``.

Canonical monomials are ``theta^i thetabar^j`` (all theta left).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cyclo import Cyclotomic
from .scalars import EXACT, make_ring

__all__ = [
    "GrassmannAlgebra",
    "GrassmannElement",
    "MissingRuleError",
    "RuleSet",
    "VariantMismatchError",
    "berezin",
    "berezin_double",
    "conjugation_consistency",
    "g_mul",
    "kerner_cyclic_nilpotency",
]

VARIANTS = ("majid", "kerner")
THETA, THETABAR = 0, 1


class VariantMismatchError(ValueError):
    pass


class MissingRuleError(ValueError):
    pass


@dataclass(frozen=True)
class RuleSet:
    """Exchange phases for one Grassmann variant.

    ``swap``: ``thetabar theta = q^swap theta thetabar``.
    ``ops[g] = (e_plus, e_minus)``: ``g a+ = q^e_plus a+ g`` and
    ``g a = q^e_minus a g``, for g = theta (0) and thetabar (1).  A ``None``
    entry means no rule is given and none was adopted.
    """

    variant: str
    k: int
    q: Cyclotomic
    swap: int
    ops: tuple[tuple[int | None, int | None], tuple[int | None, int | None]]
    adopted: frozenset = field(default_factory=frozenset)

    @classmethod
    def majid(cls, k: int, q: Cyclotomic) -> RuleSet:
        # theta thetabar = qbar thetabar theta; theta a+ = q a+ theta, theta a = qbar a theta,
        # thetabar a+ = qbar a+ thetabar, thetabar a = q a thetabar
        return cls("majid", k, q, 1 % k, ((1 % k, -1 % k), (-1 % k, 1 % k)))

    @classmethod
    def kerner(
        cls,
        k: int,
        q: Cyclotomic,
        adopt: bool = True,
        adopted_exponent: int = 1,
        dual: str = "graded",
    ) -> RuleSet:
        """Kerner rules with ``j -> q``.

        Given rules: ``xi xibar = q xibar xi``, ``xi a+ = q a+ xi``,
        ``xibar a = q^(k-1) a xibar``.  Two rules are missing.  With ``adopt``
        we use ``a xi = q^e xi a`` (e = ``adopted_exponent``, default 1) and
        a xibar-a+ rule chosen by ``dual``:

        * ``"graded"`` (default): ``xibar a+ = q a+ xibar``, the unique choice
          for which xibar commutes with ``a+ a``; matrix-unit phases are then
          independent of how ``E_mn`` is written as an operator word.
        * ``"dagger"``: ``xibar a+ = q^-e a+ xibar``, the dagger image of the
          adopted a-xi rule.  Combined with the given xibar-a rule this makes
          xibar pick up ``q^-2`` past ``a+ a``.
        """
        if dual not in ("graded", "dagger"):
            raise ValueError(f"unknown dual convention {dual!r}; expected 'graded' or 'dagger'")
        if not adopt:
            return cls("kerner", k, q, -1 % k, ((1 % k, None), (None, (k - 1) % k)))
        e_xi_a = (-adopted_exponent) % k
        e_bar_ad = 1 % k if dual == "graded" else (-adopted_exponent) % k
        adopted = frozenset({
            f"a xi = q^{adopted_exponent % k} xi a",
            f"xibar a+ = q^{e_bar_ad} a+ xibar",
        })
        return cls("kerner", k, q, -1 % k, ((1 % k, e_xi_a), (e_bar_ad, (k - 1) % k)), adopted)

    @classmethod
    def for_variant(cls, variant: str, k: int, q: Cyclotomic, **kw) -> RuleSet:
        if variant == "majid":
            return cls.majid(k, q)
        if variant == "kerner":
            return cls.kerner(k, q, **kw)
        raise VariantMismatchError(f"unknown variant {variant!r}; expected one of {VARIANTS}")

    @property
    def names(self) -> tuple[str, str]:
        return ("theta", "thetabar") if self.variant == "majid" else ("xi", "xibar")

    @property
    def complete(self) -> bool:
        return all(e is not None for pair in self.ops for e in pair)

    def op_phase(self, g: int, op: str) -> int:
        """Exponent e with ``g op = q^e op g`` for op in {'ad', 'a'}."""
        e = self.ops[g][0 if op == "ad" else 1]
        if e is None:
            raise MissingRuleError(f"no exchange rule between {self.names[g]} and {op} in the {self.variant} rule set")
        return e

    def phase_table(self) -> dict[tuple[str, str], int | None]:
        """Both directions of every exchange: ``(g, h) -> e`` with ``g h = q^e h g``."""
        th, tb = self.names
        table: dict[tuple[str, str], int | None] = {
            (tb, th): self.swap,
            (th, tb): (-self.swap) % self.k,
        }
        for g, gname in ((THETA, th), (THETABAR, tb)):
            for slot, op in ((0, "ad"), (1, "a")):
                e = self.ops[g][slot]
                table[(gname, op)] = e
                table[(op, gname)] = None if e is None else (-e) % self.k
        return table

    def is_internally_consistent(self) -> bool:
        t = self.phase_table()
        for (g, h), e in t.items():
            back = t.get((h, g))
            if e is not None and back is not None and (e + back) % self.k:
                return False
        return True


def conjugation_consistency(rules: RuleSet) -> list[tuple[str, bool, str]]:
    """Check each rule against its image under the dagger anti-involution."""
    k = rules.k
    th, tb = rules.names
    entries = []
    # (tb th = q^s th tb)^dagger => tb th = q^-s th tb
    ok = (2 * rules.swap) % k == 0
    entries.append((
        f"{th}-{tb} relation",
        ok,
        f"{tb} {th} = q^{rules.swap} {th} {tb}; its dagger gives q^{(-rules.swap) % k}",
    ))
    # g a+ = q^e a+ g  =>  g^dagger a = q^e a g^dagger
    for g, gd, gname, gdname in ((THETA, THETABAR, th, tb), (THETABAR, THETA, tb, th)):
        e_plus = rules.ops[g][0]
        e_minus_dual = rules.ops[gd][1]
        if e_plus is None or e_minus_dual is None:
            entries.append((f"{gname} a+ vs {gdname} a", False, "rule missing"))
            continue
        ok = e_plus == e_minus_dual
        entries.append((
            f"{gname} a+ vs {gdname} a",
            ok,
            f"{gname} a+ = q^{e_plus} a+ {gname} requires {gdname} a = q^{e_plus} a {gdname}; "
            f"rule set has q^{e_minus_dual}",
        ))
    for g, gname in ((THETA, th), (THETABAR, tb)):
        e_plus, e_minus = rules.ops[g]
        if e_plus is None or e_minus is None:
            continue
        ok = (e_plus + e_minus) % k == 0
        entries.append((
            f"{gname} grading of a+ a",
            ok,
            f"{gname} picks up q^{(e_plus + e_minus) % k} past a+ a; matrix-unit phases are "
            + ("well defined" if ok else "word dependent"),
        ))
    return entries


def kerner_cyclic_nilpotency(rules: RuleSet) -> tuple[Cyclotomic, bool]:
    """Single-variable content of the k-nary cyclic relation.

    A cyclic shift of ``xi xi ... xi`` (k factors) is the same word, so the
    relation reads ``xi^k = q xi^k``; since ``1 - q`` is invertible this
    forces ``xi^k = 0``.  Returns ``(1 - q, invertible)``.
    """
    factor = 1 - rules.q
    invertible = not factor.is_zero()
    if invertible:
        assert factor * factor.inverse() == 1
    return factor, invertible


class GrassmannAlgebra:
    def __init__(self, rules: RuleSet, mode: str = EXACT):
        self.rules = rules
        self.k = rules.k
        self.mode = mode
        self.ring = make_ring(mode, rules.q.n)
        q = rules.q
        self._phases = [self.ring.coerce(q**e) for e in range(self.k)]

    def __eq__(self, other):
        return isinstance(other, GrassmannAlgebra) and other.rules == self.rules and other.mode == self.mode

    def __hash__(self):
        return hash((self.rules.variant, self.k, self.mode))

    def phase(self, e: int):
        return self._phases[e % self.k]

    def element(self, terms: dict) -> GrassmannElement:
        return GrassmannElement(self, terms)

    def scalar(self, c) -> GrassmannElement:
        return GrassmannElement(self, {(0, 0): self.ring.coerce(c)})

    def one(self) -> GrassmannElement:
        return self.scalar(1)

    def zero(self) -> GrassmannElement:
        return GrassmannElement(self, {})

    def monomial(self, i: int, j: int, c=1) -> GrassmannElement:
        if i >= self.k or j >= self.k:
            return self.zero()
        return GrassmannElement(self, {(i, j): self.ring.coerce(c)})

    def theta(self, power: int = 1) -> GrassmannElement:
        return self.monomial(power, 0)

    def thetabar(self, power: int = 1) -> GrassmannElement:
        return self.monomial(0, power)


class GrassmannElement:
    """``sum c_ij theta^i thetabar^j``; zero coefficients are never stored."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: GrassmannAlgebra, terms: dict):
        self.alg = alg
        ring = alg.ring
        k = alg.k
        self.terms = {
            key: c for key, c in terms.items() if key[0] < k and key[1] < k and not ring.is_zero(c)
        }

    def _check(self, other: GrassmannElement):
        if other.alg.rules.variant != self.alg.rules.variant or other.alg.k != self.alg.k:
            raise VariantMismatchError("Grassmann elements from different algebras")

    def _lift(self, other):
        if isinstance(other, GrassmannElement):
            self._check(other)
            return other
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
        return GrassmannElement(self.alg, terms)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self.alg, {key: -c for key, c in self.terms.items()})

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

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return g_mul(self, o)

    def __rmul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return g_mul(o, self)

    def __pow__(self, e: int):
        out = self.alg.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, i: int, j: int):
        return self.terms.get((i, j), self.alg.ring.zero)

    def __repr__(self) -> str:
        th, tb = self.alg.rules.names
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items()):
            mono = "*".join(
                p for p in (f"{th}^{i}" if i else "", f"{tb}^{j}" if j else "") if p
            )
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def g_mul(x: GrassmannElement, y: GrassmannElement) -> GrassmannElement:
    """Normal-ordered product: ``thetabar^j1 theta^i2 = q^(swap j1 i2) theta^i2 thetabar^j1``."""
    x._check(y)
    alg = x.alg
    k = alg.k
    swap = alg.rules.swap
    out: dict = {}
    for (i1, j1), c1 in x.terms.items():
        for (i2, j2), c2 in y.terms.items():
            i, j = i1 + i2, j1 + j2
            if i >= k or j >= k:
                continue
            c = c1 * c2
            e = (swap * j1 * i2) % k
            if e:
                c = c * alg.phase(e)
            out[(i, j)] = out[(i, j)] + c if (i, j) in out else c
    return GrassmannElement(alg, out)


def berezin(x: GrassmannElement, var: str = "theta") -> GrassmannElement:
    """Integrate over one variable: ``int d alpha alpha^n = delta_{n,k-1}``."""
    top = x.alg.k - 1
    if var in ("theta", "xi"):
        terms = {(0, j): c for (i, j), c in x.terms.items() if i == top}
    elif var in ("thetabar", "xibar"):
        terms = {(i, 0): c for (i, j), c in x.terms.items() if j == top}
    else:
        raise ValueError(f"unknown integration variable {var!r}")
    return GrassmannElement(x.alg, terms)


def berezin_double(x: GrassmannElement, convention_phase=1):
    """``int int dthetabar dtheta``: convention_phase times the top coefficient."""
    top = x.alg.k - 1
    ring = x.alg.ring
    return ring.coerce(convention_phase) * x.coefficient(top, top)
