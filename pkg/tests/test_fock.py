from __future__ import annotations

import cmath
import dataclasses
import math
import time

import numpy as np
import pytest

from ggcs.fock import (
    InvalidStructureError,
    build_rep,
    check_relations,
    mode_conjugation_residual,
    operator_word,
)
from ggcs.scalars import EXACT, FLOAT
from ggcs.structure import make_structure

CASES = [("ordinary", 2)] + [(d, k) for d in ("arik-coon", "biedenharn-macfarlane", "chung") for k in range(2, 9)]


def test_ordinary_float_matrices():
    rep = build_rep(make_structure(2, "ordinary"), FLOAT)
    assert np.array_equal(rep.a, [[0, 1], [0, 0]])
    assert np.array_equal(rep.ad, [[0, 0], [1, 0]])
    assert np.array_equal(rep.a @ rep.ad + rep.ad @ rep.a, np.eye(2))
    assert np.array_equal(rep.delta_prime, np.eye(2))


def test_arik_coon_exact_layout():
    sf = make_structure(3, "arik-coon")
    rep = build_rep(sf, EXACT)
    # a|n) = rho_n |n-1): entry (n-1, n); ad|n) = |n+1): entry (n+1, n)
    assert rep.a[0, 1] == 1 and rep.a[1, 2] == 1 + sf.q
    assert rep.ad[1, 0] == 1 and rep.ad[2, 1] == 1
    nonzero_a = {(i, j) for i in range(3) for j in range(3) if rep.a[i, j]}
    assert nonzero_a == {(0, 1), (1, 2)}


@pytest.mark.parametrize("deformation,k", CASES)
@pytest.mark.parametrize("mode", [EXACT, FLOAT])
def test_relations_hold(deformation, k, mode):
    report = check_relations(build_rep(make_structure(k, deformation), mode))
    assert [r.name for r in report.results] == [
        "q-commutator",
        "a-delta",
        "delta-ad",
        "nilpotency-a",
        "nilpotency-ad",
        "delta-commute",
    ]
    assert report.ok
    if mode == EXACT:
        assert all(r.max_residual == 0 for r in report.results)
    else:
        assert all(r.max_residual <= 1e-12 for r in report.results)


def test_all_relation_checks_are_fast():
    start = time.perf_counter()
    for deformation, k in CASES:
        for mode in (EXACT, FLOAT):
            assert check_relations(build_rep(make_structure(k, deformation), mode)).ok
    assert time.perf_counter() - start < 5


def _independent_chung(k):
    # normalized rep assembled from the trigonometric definition, outside the package
    q = cmath.exp(2j * math.pi / k)
    rho = [q ** (n - 1) * math.sin(n * math.pi / k) ** 2 for n in range(k + 1)]
    a = np.zeros((k, k), complex)
    ad = np.zeros((k, k), complex)
    for n in range(1, k):
        a[n - 1, n] = cmath.sqrt(rho[n])
        ad[n, n - 1] = cmath.sqrt(rho[n])
    dp = np.diag([rho[n + 1] - q * rho[n] for n in range(k)])
    return q, a, ad, dp


@pytest.mark.parametrize("k", range(2, 9))
def test_chung_float_against_independent_construction(k):
    q, a, ad, dp = _independent_chung(k)
    rep = build_rep(make_structure(k, "chung"), FLOAT)
    assert np.max(np.abs(rep.a - a)) <= 1e-12
    assert np.max(np.abs(rep.ad - ad)) <= 1e-12
    assert np.max(np.abs(a @ ad - q * ad @ a - dp)) <= 1e-12


@pytest.mark.parametrize("k", range(2, 9))
def test_top_state_consistency(k):
    sf = make_structure(k, "arik-coon")
    rep = build_rep(sf, EXACT)
    comm = rep.a @ rep.ad - sf.q * (rep.ad @ rep.a)
    assert comm[k - 1, k - 1] == -sf.q * sf.rho(k - 1)
    assert rep.delta_prime[k - 1, k - 1] == comm[k - 1, k - 1]


@pytest.mark.parametrize("deformation,k", CASES)
def test_modes_are_conjugate(deformation, k):
    sf = make_structure(k, deformation)
    assert mode_conjugation_residual(build_rep(sf, EXACT), build_rep(sf, FLOAT)) <= 1e-10


def test_principal_branch():
    rep = build_rep(make_structure(3, "biedenharn-macfarlane"), FLOAT)
    # rho_2 = -1 has principal root i
    assert rep.a[1, 2] == pytest.approx(1j)


def test_operator_word():
    rep = build_rep(make_structure(2, "ordinary"), FLOAT)
    assert np.array_equal(operator_word(rep, ["a", "ad"]), [[1, 0], [0, 0]])
    assert not operator_word(rep, ["a", "a"]).any()


def test_invalid_structure_rejected():
    with pytest.raises(InvalidStructureError):
        build_rep(make_structure(3, "custom", expression="n*(n-1)"))


def test_broken_delta_prime_is_caught():
    rep = build_rep(make_structure(4, "arik-coon"), EXACT)
    broken = dataclasses.replace(rep, delta_prime=rep.delta)
    report = check_relations(broken)
    assert not report.ok
    assert not report["q-commutator"].passed
    assert report["nilpotency-a"].passed
