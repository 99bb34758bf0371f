"""Finite Fock representations of the deformed fermionic algebra.

Matrix layout: kets are columns, so ``|n>`` is the n-th standard basis
column and ``E_mn = |m><n|`` has its single nonzero entry at ``(m, n)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .scalars import EXACT, FLOAT, make_ring
from .structure import StructureFunction, validate

__all__ = [
    "FockRep",
    "InvalidStructureError",
    "RelationReport",
    "build_rep",
    "check_relations",
    "mode_conjugation_residual",
    "operator_word",
]


class InvalidStructureError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FockRep:
    k: int
    mode: str
    sf: StructureFunction
    a: np.ndarray
    ad: np.ndarray
    delta: np.ndarray
    delta_prime: np.ndarray
    ring: object = field(repr=False)

    @property
    def q(self):
        return self.ring.coerce(self.sf.q)

    def identity(self) -> np.ndarray:
        m = _zeros(self.ring, self.k)
        for i in range(self.k):
            m[i, i] = self.ring.one
        return m

    def matrix(self, name: str) -> np.ndarray:
        try:
            return {"a": self.a, "ad": self.ad, "delta": self.delta, "delta_prime": self.delta_prime}[name]
        except KeyError:
            raise KeyError(f"unknown operator {name!r}") from None


def _zeros(ring, k: int) -> np.ndarray:
    if ring.mode == EXACT:
        m = np.empty((k, k), dtype=object)
        m.fill(ring.zero)
        return m
    return np.zeros((k, k), dtype=complex)


def build_rep(sf: StructureFunction, mode: str = EXACT) -> FockRep:
    """Build ``a``, ``a+``, Delta and Delta' as k x k matrices.

    exact mode uses the unnormalized basis ``|n) = (a+)^n |0>`` (no square
    roots); float mode uses the orthonormal basis with principal-branch
    square roots of rho_n.
    """
    report = validate(sf)
    if not report.ok:
        raise InvalidStructureError(
            f"structure function {sf.describe()} (k={sf.k}) fails: {', '.join(report.failures())}"
        )
    ring = make_ring(mode, sf.conductor)
    k = sf.k
    rhos = [ring.coerce(v) for v in sf.values()]
    q = ring.coerce(sf.q)
    a, ad = _zeros(ring, k), _zeros(ring, k)
    delta, delta_prime = _zeros(ring, k), _zeros(ring, k)
    for n in range(k):
        delta[n, n] = rhos[n]
        delta_prime[n, n] = rhos[n + 1] - q * rhos[n]
        if n >= 1:
            a[n - 1, n] = rhos[n] if mode == EXACT else ring.sqrt(rhos[n])
        if n + 1 < k:
            ad[n + 1, n] = ring.one if mode == EXACT else ring.sqrt(rhos[n + 1])
    return FockRep(k, mode, sf, a, ad, delta, delta_prime, ring)


def operator_word(rep: FockRep, word) -> np.ndarray:
    """Matrix of a product of operator names, e.g. ``["a", "ad"]`` = a a+."""
    out = rep.identity()
    for name in word:
        out = out @ rep.matrix(name)
    return out


def _max_residual(ring, m: np.ndarray) -> float:
    if ring.mode == FLOAT:
        return float(np.max(np.abs(m))) if m.size else 0.0
    return max((ring.magnitude(x) for x in m.flat), default=0.0)


def _is_zero_matrix(ring, m: np.ndarray) -> bool:
    return all(ring.negligible(x) for x in m.flat)


@dataclass
class RelationResult:
    name: str
    relation: str
    passed: bool
    max_residual: float
    residual: np.ndarray = field(repr=False)


@dataclass
class RelationReport:
    mode: str
    results: list[RelationResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> RelationResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def _power(m: np.ndarray, e: int, ident: np.ndarray) -> np.ndarray:
    out = ident
    for _ in range(e):
        out = out @ m
    return out


def check_relations(rep: FockRep) -> RelationReport:
    a, ad, d, dp = rep.a, rep.ad, rep.delta, rep.delta_prime
    q = rep.q
    ident = rep.identity()
    residuals = [
        ("q-commutator", "a a+ - q a+ a - D'", a @ ad - q * (ad @ a) - dp),
        ("a-delta", "a D - q D a - D' a", a @ d - q * (d @ a) - dp @ a),
        ("delta-ad", "D a+ - q a+ D - a+ D'", d @ ad - q * (ad @ d) - ad @ dp),
        ("nilpotency-a", f"a^{rep.k}", _power(a, rep.k, ident)),
        ("nilpotency-ad", f"(a+)^{rep.k}", _power(ad, rep.k, ident)),
        ("delta-commute", "D D' - D' D", d @ dp - dp @ d),
    ]
    results = [
        RelationResult(name, rel, _is_zero_matrix(rep.ring, m), _max_residual(rep.ring, m), m)
        for name, rel, m in residuals
    ]
    return RelationReport(rep.mode, results)


def mode_conjugation_residual(exact: FockRep, normalized: FockRep) -> float:
    """Max deviation of ``D X_exact D^-1`` from ``X_float`` for a, a+, Delta, Delta'.

    ``D = diag(prod_{j<=n} sqrt(rho_j))`` maps unnormalized to normalized
    coordinates.
    """
    if exact.mode != EXACT or normalized.mode != FLOAT:
        raise ValueError("expected an exact and a float representation")
    k = exact.k
    diag = [1 + 0j]
    for n in range(1, k):
        diag.append(diag[-1] * normalized.ring.sqrt(exact.sf.rho(n).embed()))
    dmat = np.diag(diag)
    dinv = np.diag([1 / x for x in diag])
    worst = 0.0
    for name in ("a", "ad", "delta", "delta_prime"):
        ex = np.array([[x.embed() for x in row] for row in exact.matrix(name)], dtype=complex)
        worst = max(worst, float(np.max(np.abs(dmat @ ex @ dinv - normalized.matrix(name)))))
    return worst
