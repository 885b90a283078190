import random

import pytest

from conftest import G, P
from leibniz.errors import DomainGap, NotADerivation, SpecError, UnsupportedScalar
from leibniz.gaussian import GaussianInteger as GI
from leibniz.generators import random_gaussian, random_map, random_pairs, random_poly, random_scalar
from leibniz.maps import (
    Derivation,
    LinCombMap,
    PrimeLog,
    SampledMap,
    ZeroMap,
    chain_rule_check,
    coeff_lift,
    lmap_check_additive,
    lmap_check_leibniz,
    lmap_eval,
)
from leibniz.poly import Poly
from leibniz.scalars import ZERO, ScalarElem

t1 = ScalarElem.t(1)
LOG_1PI = PrimeLog({GI(1, 1): 1})
D1 = Derivation([1])


def test_prime_log_at_two():
    assert lmap_eval(LOG_1PI, 2) == G(4)
    # Leibniz on 4 = 2 * 2 agrees with direct evaluation
    assert lmap_eval(LOG_1PI, 4) == G(2) * 4 + G(2) * 4 == G(16)


def test_prime_log_fractions_and_units():
    assert lmap_eval(LOG_1PI, G(1) / 2) == -(G(1) / 2) * 2
    assert lmap_eval(LOG_1PI, G(0, 1)) == ZERO
    assert lmap_eval(PrimeLog({GI(2, 1): 3}), G(5)) == G(15)


def test_prime_log_rejects_bad_tables():
    for table in ({GI(0, 1): 1}, {GI(-1, 1): 1}, {GI(3, 0): 1, GI(2, 0): 1}):
        with pytest.raises(SpecError):
            PrimeLog(table)
    with pytest.raises(SpecError):
        PrimeLog([(GI(1, 1), 1), (GI(1, 1), 2)])


def test_prime_log_on_transcendental_is_error():
    with pytest.raises(UnsupportedScalar):
        lmap_eval(LOG_1PI, t1)


def test_derivation():
    assert lmap_eval(D1, t1 * t1) == t1 * 2
    assert lmap_eval(D1, G(3, 4)) == ZERO
    assert lmap_eval(D1, ScalarElem.of(1) / t1) == -(ScalarElem.of(1) / (t1 * t1))
    with pytest.raises(UnsupportedScalar):
        lmap_eval(D1, ScalarElem.t(2))


def test_sampled_map_gap():
    s = SampledMap({G(2): G(5)})
    assert lmap_eval(s, 2) == G(5)
    with pytest.raises(DomainGap):
        lmap_eval(s, 3)


@pytest.mark.parametrize("spec", [ZeroMap(), LOG_1PI, D1, LinCombMap([(2, D1), (G(0, 1), LOG_1PI)])])
def test_vanishes_at_zero_and_units(spec):
    for x in (0, 1, -1):
        assert lmap_eval(spec, x) == ZERO


def test_random_maps_vanish_at_zero_and_units():
    rng = random.Random(1)
    for _ in range(200):
        spec = random_map(rng, m=2, depth=2)
        for x in (0, 1, -1):
            assert lmap_eval(spec, x) == ZERO


def test_additivity_witness():
    report = lmap_check_additive(LOG_1PI, [(G(2), G(3))])
    assert not report.ok
    w = report.counterexamples[0]
    assert w.lhs == ZERO and w.rhs == G(4)


def test_leibniz_1000_pairs_each_family():
    rng = random.Random(2)
    q_pairs = random_pairs(rng, 1000, constants_only=True)
    t_pairs = random_pairs(rng, 1000, m=2)
    assert lmap_check_leibniz(LOG_1PI, q_pairs).passed == 1000
    assert lmap_check_leibniz(ZeroMap(), t_pairs).passed == 1000
    assert lmap_check_leibniz(Derivation([1, t1]), t_pairs).passed == 1000


def test_lincomb_is_leibniz():
    rng = random.Random(4)
    for _ in range(30):
        spec = random_map(rng, m=1, depth=2)
        n = 0
        pairs = []
        while n < 30:
            a = random_scalar(rng, 1) if rng.random() < 0.5 else random_gaussian(rng)
            b = random_gaussian(rng)
            try:
                lmap_eval(spec, a * b)
                lmap_eval(spec, a)
            except UnsupportedScalar:
                continue
            pairs.append((a, b))
            n += 1
        assert lmap_check_leibniz(spec, pairs).ok


def test_derivation_additive_1000():
    rng = random.Random(6)
    assert lmap_check_additive(D1, random_pairs(rng, 1000)).passed == 1000


def test_coeff_lift():
    assert coeff_lift(D1, P("t1*z^2 + t1^2")) == P("z^2 + 2*t1")
    assert coeff_lift(D1, P("z^2 + 1")) == Poly()
    assert coeff_lift(ZeroMap(), P("t1*z")) == Poly()


def test_chain_rule_examples():
    assert chain_rule_check(D1, P("t1*z^2"), t1).ok
    assert chain_rule_check(D1, P("z^2"), t1).ok
    assert chain_rule_check(Derivation([0]), P("z^3 + t1"), G(2)).ok


def test_chain_rule_100_random():
    rng = random.Random(8)
    spec = Derivation([1, t1 + 1])
    for _ in range(100):
        report = chain_rule_check(spec, random_poly(rng, 4, m=2), random_scalar(rng, 2))
        assert report.ok


def test_chain_rule_rejects_nonadditive():
    with pytest.raises(NotADerivation):
        chain_rule_check(LOG_1PI, P("z"), G(2))
