"""Semiring axioms on seeded random triples, plus parsing, formatting and instance tagging."""

import math
import random

import pytest

from incremental_grammar import semiring
from incremental_grammar.core import SemiringMismatchError
from incremental_grammar.semiring import SemiringName, SemiringValue, get_semiring

TRIPLES = 1000


def _draw(rng: random.Random, name: SemiringName):
    instance = get_semiring(name)
    if name == SemiringName.bool:
        return instance.value(rng.random() < 0.5)
    if name == SemiringName.real:
        return instance.value(rng.uniform(0.0, 10.0))
    return instance.value(rng.random())


def _same(a: SemiringValue, b: SemiringValue) -> bool:
    if a.semiring != b.semiring:
        return False
    if isinstance(a.value, bool):
        return a.value == b.value
    return math.isclose(float(a.value), float(b.value), rel_tol=1e-9, abs_tol=1e-12)


@pytest.mark.parametrize("name", list(SemiringName))
def test_semiring_axioms_hold_on_random_triples(name):
    rng = random.Random(20240611)
    s = get_semiring(name)
    zero, one = s.zero(), s.one()
    for _ in range(TRIPLES):
        a, b, c = (_draw(rng, name) for _ in range(3))
        assert _same(s.add(s.add(a, b), c), s.add(a, s.add(b, c)))
        assert _same(s.mul(s.mul(a, b), c), s.mul(a, s.mul(b, c)))
        assert _same(s.add(a, b), s.add(b, a))
        assert _same(s.mul(a, b), s.mul(b, a))
        assert _same(s.add(a, zero), a)
        assert _same(s.mul(a, one), a)
        assert _same(s.mul(one, a), a)
        assert _same(s.mul(a, zero), zero)
        assert _same(s.mul(zero, a), zero)
        assert _same(s.mul(a, s.add(b, c)), s.add(s.mul(a, b), s.mul(a, c)))
        assert _same(s.mul(s.add(a, b), c), s.add(s.mul(a, c), s.mul(b, c)))


def test_operators_dispatch_to_the_tagged_instance():
    real = get_semiring("real")
    assert (real.value(2.0) + real.value(3.0)).value == 5.0
    assert (real.value(2.0) * real.value(3.0)).value == 6.0
    viterbi = get_semiring("viterbi")
    assert (viterbi.value(0.2) + viterbi.value(0.7)).value == 0.7


def test_sum_and_product_of_nothing_are_the_units():
    for name in SemiringName:
        s = get_semiring(name)
        assert s.sum([]) == s.zero()
        assert s.product([]) == s.one()


def test_mixing_instances_raises():
    real = get_semiring("real")
    boolean = get_semiring("bool")
    with pytest.raises(SemiringMismatchError):
        real.add(real.one(), boolean.one())
    with pytest.raises(SemiringMismatchError):
        boolean.one() * real.one()
    with pytest.raises(SemiringMismatchError):
        semiring.add(real.one(), boolean.one())
    with pytest.raises(SemiringMismatchError):
        semiring.approx_eq(real.one(), boolean.one(), 0.0)


def test_carrier_ranges_are_enforced():
    with pytest.raises(ValueError):
        get_semiring("real").value(-1.0)
    with pytest.raises(ValueError):
        get_semiring("real").value(math.inf)
    with pytest.raises(ValueError):
        get_semiring("viterbi").value(1.5)
    with pytest.raises(ValueError):
        get_semiring("bool").value(0.5)


def test_real_overflow_raises_instead_of_reaching_inf():
    real = get_semiring("real")
    big = real.value(1e308)
    with pytest.raises(ValueError, match="non-negative real"):
        real.mul(big, real.value(10.0))
    with pytest.raises(ValueError, match="non-negative real"):
        real.add(big, big)
    assert real.mul(big, real.one()) == big


def test_unknown_semiring_name():
    with pytest.raises(ValueError, match="tropical"):
        get_semiring("tropical")


def test_parse_weight_annotations():
    boolean = get_semiring("bool")
    assert boolean.parse("true") == boolean.one()
    assert boolean.parse("False") == boolean.zero()
    assert boolean.parse("0.3") == boolean.one()
    assert boolean.parse("0") == boolean.zero()
    with pytest.raises(ValueError):
        boolean.parse("-1")
    with pytest.raises(ValueError):
        boolean.parse("maybe")
    assert get_semiring("real").parse("0.25").value == 0.25
    with pytest.raises(ValueError):
        get_semiring("real").parse("abc")


def test_format_uses_seventeen_significant_digits():
    real = get_semiring("real")
    assert str(real.value(0.5)) == "0.5"
    assert str(real.value(1.0)) == "1"
    assert float(str(real.value(0.1))) == 0.1
    assert str(get_semiring("bool").one()) == "true"


def test_approx_eq_tolerance():
    real = get_semiring("real")
    assert real.approx_eq(real.value(1.0), real.value(1.0 + 1e-12), 1e-9)
    assert not real.approx_eq(real.value(1.0), real.value(1.1), 1e-9)
    with pytest.raises(ValueError):
        real.approx_eq(real.one(), real.one(), -1.0)
