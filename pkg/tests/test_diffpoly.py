import random
from fractions import Fraction

import pytest

from pvext.diffpoly import DiffPoly, JetVar, parse, structure
from pvext.errors import MissingAssignment


def test_addition_cancels():
    assert parse("n1 + n2") + parse("0 - n2") == parse("n1")


def test_product_monomial():
    p = DiffPoly.eta(1) * DiffPoly.eta(2, 1)
    assert list(p.terms) == [((JetVar(1, 0), 1), (JetVar(2, 1), 1))]
    assert p.terms[((JetVar(1, 0), 1), (JetVar(2, 1), 1))] == 1


def test_cancellation_to_zero():
    p = parse("n1'") ** 2 - parse("n1'") ** 2
    assert p.is_zero()
    assert p.terms == {}


def test_derive_basics():
    assert parse("n1").derive() == parse("n1'")
    assert (parse("n1") * parse("n2")).derive() == parse("n1' n2 + n1 n2'")
    assert parse("n1^2 + n1'").derive() == parse("2 n1 n1' + n1''")


def test_substitute_differential():
    # eta_4' with eta_4 -> eta_1' + eta_1^2
    got = parse("n4'").substitute({4: parse("n1' + n1^2")})
    assert got == parse("n1'' + 2 n1 n1'")


def test_substitute_identity():
    p = parse("n1'' n2 - 3 n1 n3'")
    sigma = {i: DiffPoly.eta(i) for i in (1, 2, 3)}
    assert p.substitute(sigma) == p


def test_substitute_verbatim():
    target = parse("n1'' + 3 n1 n1' + n1^3 - n3 n1' - n3 n1^2")
    got = parse("n6").substitute({6: target})
    assert got == target


def test_substitute_missing():
    with pytest.raises(MissingAssignment):
        parse("n1 + n2").substitute({1: parse("n1")})


def test_structure_queries():
    order, degree, lin, nonlin, comps = structure(parse("n1'' + 3 n1 n1'"))
    assert order == 2 and degree == 2
    assert lin == parse("n1''")
    assert nonlin == parse("3 n1 n1'")
    assert set(comps) == {1, 2}


def test_structure_zero_convention():
    order, degree, lin, nonlin, _ = structure(DiffPoly.zero())
    assert order == 0 and degree == 0
    assert lin.is_zero() and nonlin.is_zero()


def test_linear_part_mixed():
    p = parse("n2' + n1' + n1^2 + n2(n2 - n1)")
    assert p.linear_part() == parse("n2' + n1'")


def _random_poly(rng, nvars=3, max_order=2, nterms=4):
    p = DiffPoly.zero()
    for _ in range(rng.randint(1, nterms)):
        mono = DiffPoly.rational(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
        for _ in range(rng.randint(0, 3)):
            mono = mono * DiffPoly.eta(
                rng.randint(1, nvars), rng.randint(0, max_order)
            )
        p = p + mono
    return p


def test_leibniz_randomized():
    rng = random.Random(42)
    for _ in range(200):
        p = _random_poly(rng)
        q = _random_poly(rng)
        assert (p * q).derive() == p.derive() * q + p * q.derive()


def test_substitution_prolongation_randomized():
    rng = random.Random(43)
    for _ in range(200):
        p = _random_poly(rng)
        sigma = {i: _random_poly(rng, nvars=2, max_order=1, nterms=2) for i in (1, 2, 3)}
        assert p.derive().substitute(sigma) == p.substitute(sigma).derive()


def test_canonical_equality_via_serialization():
    rng = random.Random(44)
    for _ in range(50):
        p = _random_poly(rng)
        q = _random_poly(rng)
        same = (p - q).is_zero()
        assert same == (p.to_json_obj() == q.to_json_obj())


def test_json_round_trip():
    rng = random.Random(45)
    for _ in range(50):
        p = _random_poly(rng)
        assert DiffPoly.from_json_obj(p.to_json_obj()) == p


def test_json_format():
    # -eta_2' * eta_1 serializes with the higher jet first
    p = DiffPoly.monomial([(2, 1, 1), (1, 0, 1)], -1)
    assert p.to_json_obj() == {"terms": [{"c": "-1/1", "m": [[2, 1, 1], [1, 0, 1]]}]}


def test_parse_rationals_and_powers():
    assert parse("1/2 n1^2 - n2[4]") == (
        DiffPoly.monomial([(1, 0, 2)], Fraction(1, 2)) - DiffPoly.eta(2, 4)
    )


def test_pow():
    p = parse("n1 + 1")
    assert p ** 3 == p * p * p
    assert p ** 0 == DiffPoly.rational(1)
