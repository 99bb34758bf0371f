"""Generalized Grassmann coherent states and their resolution of unity."""
from __future__ import annotations

from dataclasses import dataclass, field

from .fock import build_rep
from .grassmann import GrassmannAlgebra, MissingRuleError, RuleSet, berezin_double
from .mixed import MixedAlgebra, MixedElement, dagger
from .cyclo import Cyclotomic
from .scalars import EXACT, FLOAT, FLOAT_TOL, ExactRing
from .structure import StructureFunction

__all__ = [
    "CoherentState",
    "Comparison",
    "Residual",
    "UnsolvableWeightError",
    "WeightFunction",
    "build_coherent",
    "closed_form_weight",
    "closed_form_weights",
    "compare_weights",
    "qexp",
    "solve_unity_weight",
    "unity_integral",
    "verify_eigenstate",
    "verify_exp_form",
    "verify_unity",
]

# float-mode tolerance when comparing two weights
WEIGHT_TOL = 1e-10


class UnsolvableWeightError(ArithmeticError):
    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass
class Residual:
    name: str
    passed: bool
    max_residual: float
    mode: str
    detail: str = ""
    exact_zero: bool = False
    element: object = field(default=None, repr=False)


def _residual(name: str, diff: MixedElement, detail: str = "") -> Residual:
    alg = diff.alg
    if alg.mode == EXACT:
        zero = diff.is_zero()
        return Residual(name, zero, diff.max_abs(), EXACT, detail, exact_zero=zero, element=diff)
    worst = diff.max_abs()
    return Residual(name, worst <= FLOAT_TOL, worst, FLOAT, detail, element=diff)


@dataclass
class CoherentState:
    variant: str
    k: int
    sf: StructureFunction
    mode: str
    rules: RuleSet
    alg: MixedAlgebra
    alpha: tuple
    state: MixedElement = field(repr=False)

    @property
    def q(self):
        return self.alg.ring.coerce(self.sf.q)


def _make_algebra(sf: StructureFunction, variant: str, mode: str, rules: RuleSet | None) -> MixedAlgebra:
    if rules is None:
        rules = RuleSet.for_variant(variant, sf.k, sf.q)
    if rules.variant != variant or rules.k != sf.k:
        raise ValueError("rule set does not match the requested variant / k")
    if not rules.complete:
        raise MissingRuleError(
            f"the {variant} rule set has no a-{rules.names[0]} rule; enable the adopted rule to build states"
        )
    return MixedAlgebra(rules, mode, build_rep(sf, mode))


def build_coherent(
    sf: StructureFunction, variant: str = "majid", mode: str = EXACT, rules: RuleSet | None = None
) -> CoherentState:
    """``|theta> = sum_n alpha_n theta^n |n>`` with alpha_0 = 1 and
    ``alpha_n = alpha_(n+1) q^(n+1) s_(n+1)`` where ``s = sqrt(rho)`` (float,
    normalized basis) or ``s = rho`` (exact, unnormalized basis).

    ``rules`` overrides the variant's default rule set; the coefficients are
    always those of the recurrence, so a perturbed rule set shows up as a
    nonzero eigenstate residual.
    """
    alg = _make_algebra(sf, variant, mode, rules)
    ring = alg.ring
    q = ring.coerce(sf.q)
    alpha = [ring.one]
    for n in range(sf.k - 1):
        rho = ring.coerce(sf.rho(n + 1))
        step = rho if mode == EXACT else ring.sqrt(rho)
        alpha.append(alpha[-1] / (q ** (n + 1) * step))
    terms = {(n, 0, n, 0): c for n, c in enumerate(alpha)}
    return CoherentState(variant, sf.k, sf, mode, alg.rules, alg, tuple(alpha), alg.element(terms))


def qexp(arg: MixedElement, sf: StructureFunction) -> MixedElement:
    """``exp_q(x) = sum_{n<k} x^n / rho_n!``."""
    alg = arg.alg
    ring = alg.ring
    total = alg.zero()
    power = alg.identity()
    for n in range(sf.k):
        total = total + power.scale(1 / ring.coerce(sf.rho_factorial(n)))
        power = power * arg
    return total


def verify_eigenstate(state: CoherentState) -> Residual:
    alg = state.alg
    a = alg.operator(["a"])
    lhs = a * state.state
    rhs = alg.theta() * state.state
    th = alg.rules.names[0]
    return _residual("eigenstate", lhs - rhs, f"a|{th}> - {th}|{th}>")


def verify_exp_form(state: CoherentState) -> list[Residual]:
    """Phase identity ``theta^n (a+)^n = q^(n(n+1)/2) (a+ theta)^n`` for each n,
    then ``exp_q(a+ theta)|0> == sum_n alpha_n theta^n |n>``."""
    alg = state.alg
    q = state.q
    th = alg.rules.names[0]
    ad = alg.operator(["ad"])
    theta = alg.theta()
    ad_theta = ad * theta
    out = []
    for n in range(state.k):
        lhs = theta**n * ad**n
        rhs = (ad_theta**n).scale(q ** (n * (n + 1) // 2))
        out.append(_residual(f"phase-identity-n{n}", lhs - rhs, f"{th}^{n}(a+)^{n} - q^{n * (n + 1) // 2}(a+{th})^{n}"))
    vac = alg.ket(0)
    from_exp = qexp(ad_theta, state.sf) * vac
    out.append(_residual("qexp-form", from_exp - state.state, f"exp_q(a+{th})|0> - state"))
    return out


@dataclass
class WeightFunction:
    """Coefficients of ``omega = sum_n c_n theta^n thetabar^n`` (canonical order)."""

    k: int
    coeffs: tuple
    provenance: str
    mode: str
    label: str = ""
    literal: tuple | None = None
    diagnostics: dict = field(default_factory=dict, repr=False)

    def element(self, alg: MixedAlgebra) -> MixedElement:
        terms = {}
        for n, c in enumerate(self.coeffs):
            c = alg.ring.coerce(c)
            for m in range(alg.k):
                terms[(n, n, m, m)] = c
        return alg.element(terms)


def _integrate(x: MixedElement, convention_phase=1) -> list[list]:
    k = x.alg.k
    return [
        [berezin_double(x.grassmann_part(l, p), convention_phase) for p in range(k)]
        for l in range(k)
    ]


def _solve(columns: list[list], rhs: list, ring) -> list:
    """Solve ``sum_n c_n columns[n] = rhs`` (overdetermined) by elimination."""
    nvar = len(columns)
    rows = [[columns[n][r] for n in range(nvar)] + [rhs[r]] for r in range(len(rhs))]
    exact = ring.mode == EXACT
    pivots = []
    r0 = 0
    for col in range(nvar):
        if exact:
            cand = next((r for r in range(r0, len(rows)) if rows[r][col]), None)
        else:
            best = max(range(r0, len(rows)), key=lambda r: abs(rows[r][col]), default=None)
            cand = best if best is not None and abs(rows[best][col]) > FLOAT_TOL else None
        if cand is None:
            raise UnsolvableWeightError(
                f"weight coefficient c_{col} is undetermined (its integral vanished)", {"column": col}
            )
        rows[r0], rows[cand] = rows[cand], rows[r0]
        piv = rows[r0][col]
        rows[r0] = [v / piv for v in rows[r0]]
        for r in range(len(rows)):
            if r != r0 and not ring.is_zero(rows[r][col]):
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[r0])]
        pivots.append(r0)
        r0 += 1
    for r in range(r0, len(rows)):
        if not ring.negligible(rows[r][-1]):
            raise UnsolvableWeightError("no weight reproduces the identity", {"row": r})
    return [rows[p][-1] for p in pivots]


def unity_integral(state: CoherentState, weight_element: MixedElement, convention_phase=1) -> list[list]:
    """``int int dthetabar dtheta omega |theta><theta|`` as a k x k matrix."""
    bra = dagger(state.state)
    return _integrate((weight_element * state.state) * bra, convention_phase)


def solve_unity_weight(
    sf: StructureFunction,
    variant: str = "majid",
    mode: str = EXACT,
    state: CoherentState | None = None,
    convention_phase=1,
) -> WeightFunction:
    """Find c_n with ``int int omega |theta><theta| = I``.

    Each c_n multiplies the integrated matrix of ``theta^n thetabar^n
    |theta><theta|``; the k^2 matrix entries give an overdetermined linear
    system that is solved exactly (or by pivoted elimination in float mode).
    """
    if state is None:
        state = build_coherent(sf, variant, mode)
    alg = state.alg
    ring = alg.ring
    k = state.k
    projector = state.state * dagger(state.state)
    matrices = [_integrate(alg.grassmann_monomial(n, n) * projector, convention_phase) for n in range(k)]

    # structural diagnostics: entry (l, p) of M_n can only survive when l = p = k-1-n
    stray = []
    for n, mat in enumerate(matrices):
        for l in range(k):
            for p in range(k):
                expected = l == p == k - 1 - n
                if not expected and not ring.negligible(mat[l][p]):
                    stray.append((n, l, p))
    diagonal = not stray
    columns = [[mat[l][p] for l in range(k) for p in range(k)] for mat in matrices]
    rhs = [ring.one if l == p else ring.zero for l in range(k) for p in range(k)]
    try:
        coeffs = _solve(columns, rhs, ring)
    except UnsolvableWeightError as err:
        err.diagnostics.update({"diagonal": diagonal, "stray_entries": stray})
        raise
    return WeightFunction(
        k,
        tuple(coeffs),
        "solved",
        mode,
        label=f"solved ({variant})",
        diagnostics={"diagonal": diagonal, "stray_entries": stray, "pairing": "n + l = k - 1"},
    )


def verify_unity(weight: WeightFunction, state: CoherentState, convention_phase=1) -> Residual:
    """Re-evaluate the resolution of unity with the weight; residual = result - I."""
    alg = state.alg
    ring = alg.ring
    mat = unity_integral(state, weight.element(alg), convention_phase)
    terms = {}
    for l in range(state.k):
        for p in range(state.k):
            v = mat[l][p] - (ring.one if l == p else ring.zero)
            terms[(0, 0, l, p)] = v
    return _residual("resolution-of-unity", alg.element(terms), f"weight: {weight.label or weight.provenance}")


def _abs_factorial(sf: StructureFunction, n: int, ring):
    """|rho_n|! as prod_{j<=n} |rho_j| (float) or rho_n! conj(rho_n!) (exact, squared)."""
    if ring.mode == EXACT:
        f = sf.rho_factorial(n)
        return f * f.conjugate()
    out = 1.0
    for j in range(1, n + 1):
        out *= abs(sf.rho(j).embed())
    return complex(out)


def _reordered_power_coefficient(alg: GrassmannAlgebra, n: int):
    """Coefficient c with ``(thetabar theta)^n = c theta^n thetabar^n``."""
    word = alg.thetabar() * alg.theta()
    return (word**n).coefficient(n, n)


def closed_form_weight(sf: StructureFunction, variant: str = "majid", mode: str = EXACT, reading: str = "derived") -> WeightFunction:
    """Published closed-form weights, converted to canonical order.

    majid readings:
      ``derived``   c_n = q^(n(n+1)) |rho_(k-n-1)|!
      ``display``   c_n = q^(n(n+1)/2) |rho_(k-n-1)|!, taken as theta^n thetabar^n coefficients
      ``display-reordered``  the display taken literally in (thetabar theta)^n monomials
    kerner (k = 3 only): ``omega = -q + xibar xi + xibar xi xibar xi``.
    """
    rules = RuleSet.for_variant(variant, sf.k, sf.q)
    galg = GrassmannAlgebra(rules, mode)
    ring = galg.ring
    q = ring.coerce(sf.q)
    k = sf.k
    if variant == "majid":
        coeffs = []
        literal = None
        for n in range(k):
            mag = _abs_factorial(sf, k - n - 1, ring)
            if reading == "derived":
                coeffs.append(q ** (n * (n + 1)) * mag)
            elif reading == "display":
                coeffs.append(q ** (n * (n + 1) // 2) * mag)
            elif reading == "display-reordered":
                coeffs.append(q ** (n * (n + 1) // 2) * mag * _reordered_power_coefficient(galg, n))
            else:
                raise ValueError(f"unknown majid reading {reading!r}")
        if reading == "display-reordered":
            literal = tuple(q ** (n * (n + 1) // 2) * _abs_factorial(sf, k - n - 1, ring) for n in range(k))
        return WeightFunction(k, tuple(coeffs), "closed-form-majid", mode, label=f"majid {reading}", literal=literal)
    if variant == "kerner":
        if k != 3:
            raise ValueError("the kerner closed-form weight is only given for k = 3")
        if reading not in ("derived", "display", "literal"):
            raise ValueError(f"unknown kerner reading {reading!r}")
        literal = (-q, ring.one, ring.one)
        coeffs = tuple(c * _reordered_power_coefficient(galg, n) for n, c in enumerate(literal))
        return WeightFunction(k, coeffs, "closed-form-kerner", mode, label="kerner display", literal=literal)
    raise ValueError(f"unknown variant {variant!r}")


def closed_form_weights(sf: StructureFunction, variant: str, mode: str) -> list[WeightFunction]:
    if variant == "majid":
        return [closed_form_weight(sf, "majid", mode, r) for r in ("derived", "display", "display-reordered")]
    if sf.k == 3:
        return [closed_form_weight(sf, "kerner", mode)]
    return []


@dataclass
class Comparison:
    closed_label: str
    ratios: tuple
    verdict: str  # exact-equality | global-scalar | structural-disagreement
    scalar: object = None
    matching: tuple = ()


def compare_weights(solved: WeightFunction, closed: WeightFunction) -> Comparison:
    """Per-n ratios closed/solved and a verdict; never raises on disagreement."""
    if solved.k != closed.k:
        raise ValueError("weights have different k")
    exact = solved.mode == EXACT and closed.mode == EXACT

    def same(x, y) -> bool:
        return x == y if exact else abs(complex(x) - complex(y)) <= WEIGHT_TOL

    solved_c, closed_c = solved.coeffs, closed.coeffs
    if exact:
        n = next((c.n for c in solved_c + closed_c if isinstance(c, Cyclotomic)), 1)
        ring = ExactRing(n)
        solved_c = tuple(ring.coerce(c) for c in solved_c)
        closed_c = tuple(ring.coerce(c) for c in closed_c)
    ratios = []
    for s, c in zip(solved_c, closed_c):
        if exact:
            ratios.append(c / s if s else None)
        else:
            ratios.append(complex(c) / complex(s) if abs(complex(s)) > FLOAT_TOL else None)
    matching = tuple(n for n, r in enumerate(ratios) if r is not None and same(r, 1))
    if len(matching) == solved.k:
        verdict, scalar = "exact-equality", 1
    elif all(r is not None for r in ratios) and all(same(r, ratios[0]) for r in ratios):
        verdict, scalar = "global-scalar", ratios[0]
    else:
        verdict, scalar = "structural-disagreement", None
    return Comparison(closed.label or closed.provenance, tuple(ratios), verdict, scalar, matching)
