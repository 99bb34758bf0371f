from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ggcs.cyclo import Cyclotomic, zeta
from ggcs.dsl import evaluate_expression, format_element, format_scalar, parse_expression
from ggcs.expr import EvaluationError, ParseError
from ggcs.fock import build_rep
from ggcs.grassmann import RuleSet
from ggcs.mixed import MixedAlgebra, random_element
from ggcs.scalars import EXACT, FLOAT
from ggcs.structure import make_structure


def make(variant="majid", k=3, deformation="arik-coon", mode=EXACT, r=1):
    sf = make_structure(k, deformation, q_exponent=r)
    return MixedAlgebra(RuleSet.for_variant(variant, k, sf.q), mode, build_rep(sf, mode))


def test_theta_ad_phase():
    alg = make()
    x = parse_expression("theta * ad", alg)
    assert x == parse_expression("q * ad * theta", alg)
    assert x == alg.theta() * alg.operator(["ad"])


def test_nilpotency():
    alg = make()
    assert parse_expression("theta^3", alg).is_zero()
    assert parse_expression("ad^3", alg).is_zero()
    assert not parse_expression("theta^2", alg).is_zero()


def test_scalars_and_units():
    alg = make()
    assert parse_expression("ket(1) * bra(2)", alg) == alg.unit(1, 2)
    assert parse_expression("1/2 + q", alg) == alg.scalar(Cyclotomic.rational(3, 1) / 2 + zeta(3))
    assert parse_expression("j", alg) == alg.scalar(zeta(3))
    assert parse_expression("q^-1", alg) == alg.scalar(zeta(3) ** 2)
    assert parse_expression("(theta + thetabar) / 2", alg) == (alg.theta() + alg.thetabar()).scale(
        Cyclotomic.rational(3, 1) / 2
    )


def test_variant_aliases_produce_notes():
    kerner = make("kerner")
    parsed = evaluate_expression("theta * xibar", kerner)
    assert parsed.element == kerner.theta() * kerner.thetabar()
    assert parsed.notes == ["theta read as xi under kerner rules"]
    assert evaluate_expression("xi", make()).notes == ["xi read as theta under majid rules"]


def test_errors():
    alg = make()
    with pytest.raises(ParseError) as info:
        parse_expression("theta *\n * ad", alg)
    assert (info.value.line, info.value.column) == (2, 2)
    with pytest.raises(EvaluationError, match="unknown generator"):
        parse_expression("phi", alg)
    with pytest.raises(EvaluationError, match="only defined by scalars"):
        parse_expression("1 / theta", alg)
    with pytest.raises(EvaluationError):
        parse_expression("theta^-1", alg)
    with pytest.raises(EvaluationError):
        parse_expression("ket(3)", alg)
    with pytest.raises(EvaluationError):
        parse_expression("j", make(k=4))
    with pytest.raises(EvaluationError):
        parse_expression("1/(q - q)", alg)


def test_format_scalar():
    q5 = zeta(5) ** 2
    assert format_scalar(q5, q5) == "q"
    assert format_scalar(q5 * q5 + 1, q5) == "1 + q^2"
    assert format_scalar(Cyclotomic.rational(5, 3) / 4, q5) == "3/4"
    sf = make_structure(4, "biedenharn-macfarlane")
    # the field is Q(zeta_8) and q = zeta_8^2 does not generate it
    assert format_scalar(sf.rho(2), sf.q) == "zeta - zeta^3"
    assert format_scalar(0.5 + 0.25j) == "(0.5+0.25j)"


def test_format_element():
    alg = make()
    assert format_element(alg.zero()) == "0"
    assert format_element(alg.unit(1, 0)) == "ket(1) * bra(0)"
    x = alg.term(zeta(3), 2, 1, 0, 2) - alg.unit(0, 0, 2)
    assert format_element(x) == "-2 * ket(0) * bra(0) + q * theta^2 * thetabar * ket(0) * bra(2)"
    assert repr(x) == format_element(x)


def test_zeta_symbol_roundtrips_even_biedenharn_macfarlane():
    alg = make("majid", 4, "biedenharn-macfarlane")
    x = parse_expression("zeta * theta * ket(1) * bra(0) + a", alg)
    assert parse_expression(format_element(x), alg) == x


def test_float_mode_evaluates():
    alg = make(mode=FLOAT)
    x = parse_expression("a * ad", alg)
    assert abs(x.coefficient(0, 0, 0, 0) - 1) <= 1e-12


configs = st.sampled_from(
    [
        ("majid", 2, "ordinary", 1),
        ("majid", 3, "arik-coon", 1),
        ("kerner", 3, "chung", 2),
        ("majid", 4, "biedenharn-macfarlane", 1),
        ("kerner", 5, "arik-coon", 3),
    ]
)


@settings(max_examples=300)
@given(configs, st.integers(0, 2**32 - 1), st.integers(0, 5))
def test_print_parse_roundtrip(cfg, seed, terms):
    variant, k, deformation, r = cfg
    alg = make(variant, k, deformation, r=r)
    x = random_element(alg, random.Random(seed), terms=terms, spread=5)
    assert parse_expression(format_element(x), alg) == x
