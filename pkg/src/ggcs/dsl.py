"""Expression language over the mixed algebra, plus its pretty-printer.

Grammar and lexer are shared with custom structure functions (see
:mod:`ggcs.expr`); only the symbol table differs.  Recognised names:

* generators ``theta``, ``thetabar`` (majid) and ``xi``, ``xibar`` (kerner);
  the other variant's spelling is accepted and mapped, with a note
* operators ``a``, ``ad`` and matrix units ``ket(m) = E_m0``, ``bra(n) = E_0n``
* scalars ``q``, ``zeta`` (the field generator), ``j`` (a primitive cube
  root of unity, when the field contains one) and rational literals

Division is only allowed by scalars.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cyclo import Cyclotomic
from .expr import EvaluationError, Evaluator, Node, parse
from .mixed import MixedAlgebra, MixedElement

__all__ = [
    "ParsedExpression",
    "evaluate_expression",
    "format_element",
    "format_scalar",
    "parse_expression",
]


def _generator_exponent(q: Cyclotomic) -> int | None:
    """r with ``q = zeta_N^r`` and gcd(r, N) = 1, if any."""
    n = q.n
    for r in range(1, n + 1):
        if math.gcd(r, n) == 1 and q == Cyclotomic.zeta_power(n, r):
            return r
    return None


def format_scalar(c, q: Cyclotomic | None = None) -> str:
    """Exact scalars print as polynomials in ``q`` when q generates the field, else in ``zeta``."""
    if not isinstance(c, Cyclotomic):
        return repr(complex(c))
    if c.is_rational():
        return str(c.as_fraction())
    if q is not None and q.n == c.n:
        r = _generator_exponent(q)
        if r is not None:
            # c = sum b_i q^i = sigma_r(sum b_i zeta^i)
            return c.galois(pow(r, -1, c.n)).format("q")
    return c.format("zeta")


def _coefficient_text(c, q) -> str:
    text = format_scalar(c, q)
    if isinstance(c, Cyclotomic):
        if text == "1":
            return ""
        if text == "-1":
            return "-"
        if any(ch in text[1:] for ch in "+-/* "):
            return f"({text})"
        return text
    return text


def format_element(x: MixedElement) -> str:
    """Canonical text ``coef * theta^i * thetabar^j * ket(m) * bra(n) + ...``."""
    if x.is_zero():
        return "0"
    th, tb = x.alg.rules.names
    q = x.alg.rules.q
    pieces = []
    for (i, j, m, n) in sorted(x.terms):
        factors = []
        if i:
            factors.append(th if i == 1 else f"{th}^{i}")
        if j:
            factors.append(tb if j == 1 else f"{tb}^{j}")
        factors.append(f"ket({m}) * bra({n})")
        coef = _coefficient_text(x.terms[(i, j, m, n)], q)
        body = " * ".join(factors)
        if coef == "-":
            pieces.append(("-", body))
        elif coef.startswith("-") and not coef.startswith("(") and x.alg.mode == "exact":
            pieces.append(("-", f"{coef[1:]} * {body}"))
        else:
            pieces.append(("+", f"{coef} * {body}" if coef else body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_ALIASES = {
    "majid": {"xi": "theta", "xibar": "thetabar"},
    "kerner": {"theta": "xi", "thetabar": "xibar"},
}


@dataclass
class ParsedExpression:
    element: MixedElement
    notes: list[str] = field(default_factory=list)


class _AlgebraEvaluator(Evaluator):
    def __init__(self, alg: MixedAlgebra):
        self.alg = alg
        self.n = alg.rules.q.n
        self.notes: list[str] = []

    def _err(self, msg: str, node: Node):
        return EvaluationError(msg, node.line, node.column)

    def number(self, value: int, node: Node):
        return Cyclotomic.rational(self.n, value)

    def symbol(self, name: str, node: Node):
        alg = self.alg
        if name == "q":
            return alg.rules.q
        if name == "zeta":
            return Cyclotomic.zeta_power(self.n, 1)
        if name == "j":
            if self.n % 3:
                raise self._err(f"j is not in the field Q(zeta_{self.n}); use k divisible by 3", node)
            return Cyclotomic.zeta_power(self.n, self.n // 3)
        variant = alg.rules.variant
        if name in _ALIASES[variant]:
            mapped = _ALIASES[variant][name]
            self.notes.append(f"{name} read as {mapped} under {variant} rules")
            name = mapped
        th, tb = alg.rules.names
        if name == th:
            return alg.theta()
        if name == tb:
            return alg.thetabar()
        if name in ("a", "ad"):
            if alg.rep is None:
                raise self._err(f"operator {name} needs a Fock representation", node)
            return alg.operator([name])
        raise self._err(f"unknown generator {name!r}", node)

    def call(self, name: str, args: list, node: Node):
        if name not in ("ket", "bra"):
            raise self._err(f"unknown function {name!r}", node)
        if len(args) != 1:
            raise self._err(f"{name} takes one argument", node)
        idx = self.to_int(args[0], node)
        if not 0 <= idx < self.alg.k:
            raise self._err(f"{name}({idx}) outside 0..{self.alg.k - 1}", node)
        return self.alg.ket(idx) if name == "ket" else self.alg.bra(idx)

    def to_int(self, value, node: Node) -> int:
        if isinstance(value, Cyclotomic) and value.is_rational():
            f = value.as_fraction()
            if f.denominator == 1:
                return int(f)
        raise self._err("expected an integer", node)

    def divide(self, left, right, node: Node):
        if isinstance(right, MixedElement):
            raise self._err("division is only defined by scalars", node)
        if right.is_zero():
            raise self._err("division by zero", node)
        return left / right

    def power(self, base, e: int, node: Node):
        if isinstance(base, MixedElement):
            if e < 0:
                raise self._err("negative powers of algebra elements are undefined", node)
            return base**e
        return super().power(base, e, node)


def evaluate_expression(text: str, alg: MixedAlgebra) -> ParsedExpression:
    ev = _AlgebraEvaluator(alg)
    value = ev.evaluate(parse(text))
    if not isinstance(value, MixedElement):
        value = alg.scalar(value)
    return ParsedExpression(value, ev.notes)


def parse_expression(text: str, alg: MixedAlgebra) -> MixedElement:
    return evaluate_expression(text, alg).element
