"""Structure functions rho_n encoding a k-fermionic deformation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import expr as _expr
from .cyclo import Cyclotomic

__all__ = [
    "PRESETS",
    "StructureError",
    "StructureFunction",
    "ValidationReport",
    "make_structure",
    "parse_rho_expression",
    "rho",
    "rho_factorial",
    "validate",
]

PRESETS = ("ordinary", "arik-coon", "biedenharn-macfarlane", "chung")


class StructureError(ValueError):
    pass


class _RhoEvaluator(_expr.Evaluator):
    def __init__(self, n: int, q: Cyclotomic):
        self.n = n
        self.q = q

    def number(self, value, node):
        return Cyclotomic.rational(self.q.n, value)

    def symbol(self, name, node):
        if name == "n":
            return Cyclotomic.rational(self.q.n, self.n)
        if name == "q":
            return self.q
        return super().symbol(name, node)

    def call(self, name, args, node):
        if name == "sinsq":
            if len(args) != 1:
                raise _expr.EvaluationError("sinsq takes one argument", node.line, node.column)
            m = self.to_int(args[0], node)
            return (2 - self.q**m - self.q ** (-m)) / 4
        return super().call(name, args, node)

    def to_int(self, value, node):
        if value.is_rational():
            f = value.as_fraction()
            if f.denominator == 1:
                return int(f)
        raise _expr.EvaluationError("exponent must be an integer", node.line, node.column)


def parse_rho_expression(text: str) -> _expr.Node:
    """Parse a custom rho expression; raises ParseError with line/column."""
    return _expr.parse(text)


@dataclass(frozen=True)
class StructureFunction:
    """A deformation: rho_0 .. rho_k over the nilpotency degree ``k``.

    ``q`` is the primitive k-th root of unity used by the algebra.  For the
    Biedenharn-Macfarlane preset ``bm_param`` is the parameter inside the
    symmetric q-number; it equals ``q`` for odd ``k`` and is the square root
    ``exp(i pi r / k)`` of ``q`` for even ``k`` (where ``q`` itself would put
    a zero inside the tower).
    """

    k: int
    kind: str
    q: Cyclotomic
    q_exponent: int = 1
    expression: str | None = None
    bm_param: Cyclotomic | None = field(default=None, compare=False)
    _values: tuple = field(default=(), compare=False, repr=False)

    @property
    def conductor(self) -> int:
        return self.q.n

    def rho(self, n: int) -> Cyclotomic:
        if not 0 <= n <= self.k:
            raise StructureError(f"rho index {n} outside 0..{self.k}")
        return self._values[n]

    def rho_factorial(self, n: int) -> Cyclotomic:
        if not 0 <= n <= self.k - 1:
            raise StructureError(f"rho factorial index {n} outside 0..{self.k - 1}")
        out = Cyclotomic.rational(self.conductor, 1)
        for j in range(1, n + 1):
            out = out * self._values[j]
        return out

    def values(self) -> tuple[Cyclotomic, ...]:
        return self._values

    def describe(self) -> str:
        if self.kind == "custom":
            return f"custom({self.expression})"
        return self.kind


def _compute(kind: str, k: int, q: Cyclotomic, p: Cyclotomic | None, node) -> list[Cyclotomic]:
    n_field = q.n
    zero = Cyclotomic.rational(n_field, 0)
    out = []
    for n in range(k + 1):
        if kind == "ordinary":
            val = Cyclotomic.rational(n_field, n) if n < k else zero
        elif kind == "arik-coon":
            val = (1 - q**n) / (1 - q)
        elif kind == "biedenharn-macfarlane":
            val = (p**n - p ** (-n)) / (p - p ** (-1))
        elif kind == "chung":
            val = q ** (n - 1) * (2 - q**n - q ** (-n)) / 4
        elif kind == "custom":
            try:
                val = _RhoEvaluator(n, q).evaluate(node)
            except ZeroDivisionError:
                raise _expr.EvaluationError(f"division by zero at n = {n}") from None
        else:
            raise StructureError(f"unknown deformation {kind!r}")
        out.append(val)
    return out


def make_structure(
    k: int,
    deformation: str = "arik-coon",
    q_exponent: int = 1,
    expression: str | None = None,
) -> StructureFunction:
    """Build a structure function for a preset name or a custom expression.

    ``q = exp(2 pi i r / k)`` with ``r = q_exponent`` coprime to ``k``.
    """
    if not isinstance(k, int) or k < 2:
        raise StructureError(f"nilpotency degree must be an integer >= 2, got {k!r}")
    if math.gcd(q_exponent, k) != 1:
        raise StructureError(f"q exponent {q_exponent} is not coprime to k = {k}; q would not be primitive")
    if expression is not None and deformation in (None, "custom"):
        deformation = "custom"
    if deformation not in PRESETS and deformation != "custom":
        raise StructureError(f"unknown deformation {deformation!r}")
    if deformation == "ordinary" and k != 2:
        raise StructureError("the ordinary fermion preset requires k = 2")
    if deformation == "custom" and not expression:
        raise StructureError("custom deformation needs an expression")

    bm_param = None
    if deformation == "biedenharn-macfarlane" and k % 2 == 0:
        conductor = 2 * k
        bm_param = Cyclotomic.zeta_power(conductor, q_exponent)
        q = bm_param * bm_param
    else:
        conductor = k
        q = Cyclotomic.zeta_power(conductor, q_exponent)
        if deformation == "biedenharn-macfarlane":
            bm_param = q

    node = parse_rho_expression(expression) if deformation == "custom" else None
    values = _compute(deformation, k, q, bm_param, node)
    return StructureFunction(
        k=k,
        kind=deformation,
        q=q,
        q_exponent=q_exponent,
        expression=expression if deformation == "custom" else None,
        bm_param=bm_param,
        _values=tuple(values),
    )


def rho(sf: StructureFunction, n: int) -> Cyclotomic:
    return sf.rho(n)


def rho_factorial(sf: StructureFunction, n: int) -> Cyclotomic:
    return sf.rho_factorial(n)


@dataclass
class ValidationReport:
    entries: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.entries)

    def failures(self) -> list[str]:
        return [name for name, passed, _ in self.entries if not passed]


def validate(sf: StructureFunction) -> ValidationReport:
    vals = sf.values()
    entries = [
        ("rho_0 = 0", vals[0].is_zero(), f"rho_0 = {vals[0]}"),
        (f"rho_{sf.k} = 0", vals[sf.k].is_zero(), f"rho_{sf.k} = {vals[sf.k]}"),
    ]
    zeros = [n for n in range(1, sf.k) if vals[n].is_zero()]
    detail = "none" if not zeros else "zero at n = " + ", ".join(map(str, zeros))
    entries.append(("rho_n != 0 for 0 < n < k", not zeros, detail))
    return ValidationReport(entries)


def rho_table(sf: StructureFunction) -> list[str]:
    """Pretty rho values as polynomials in ``q`` when q generates the field."""
    from .dsl import format_scalar

    return [format_scalar(v, sf.q) for v in sf.values()]

