"""Exact power-product arithmetic sanity checks."""

import math
import random
from fractions import Fraction

import pytest

from zarank.exactnum import (
    PowerProduct,
    PowerSum,
    factorize,
    product_from_pairs,
)


def test_factorize_roundtrip():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 10**6)
        f = factorize(n)
        assert math.prod(p**e for p, e in f.items()) == n


def test_known_surd_comparison():
    # 2^(1/2) vs 3^(1/3): cleared to 2^3 = 8 vs 3^2 = 9, so sqrt(2) < cbrt(3)
    a = PowerProduct.from_base_exp(2, Fraction(1, 2))
    b = PowerProduct.from_base_exp(3, Fraction(1, 3))
    assert a.compare(b) == -1
    assert b.compare(a) == 1
    assert a.compare(a) == 0


def test_rational_powers_evaluate_exactly():
    # 8^(2/3) = 4, 32^(4/5) = 16
    assert PowerProduct.from_base_exp(8, Fraction(2, 3)).as_rational() == 4
    assert PowerProduct.from_base_exp(32, Fraction(4, 5)).as_rational() == 16
    v = product_from_pairs([(8, Fraction(2, 3)), (8, Fraction(2, 3))])
    assert v.as_rational() == 16


def test_rational_base_handling():
    v = PowerProduct.from_base_exp(Fraction(9, 4), Fraction(1, 2))
    assert v.as_rational() == Fraction(3, 2)
    with pytest.raises(ValueError):
        PowerProduct.from_rational(0)


def test_float_approximation_tight():
    v = product_from_pairs([(10, Fraction(4, 5))])
    assert float(v) == pytest.approx(10 ** 0.8, rel=1e-12)


def test_sum_merges_commensurable_terms():
    # 2*sqrt(2) + 8^(1/2) = 2*sqrt(2) + 2*sqrt(2) = 4*sqrt(2)
    s = PowerSum.from_product(PowerProduct.from_base_exp(2, Fraction(1, 2)), 2)
    s = s + PowerSum.from_product(PowerProduct.from_base_exp(8, Fraction(1, 2)))
    assert len(s.terms) == 1
    t = PowerSum.from_product(PowerProduct.from_base_exp(2, Fraction(1, 2)), 4)
    assert s == t
    assert s.compare(t) == 0


def test_sum_comparison_escalates():
    # sqrt(2) + sqrt(3) vs sqrt(5 + 2 sqrt(6)): equal mathematically, but we
    # only ever compare sums that differ by a rational margin; check a close
    # unequal pair instead: 1 + sqrt(2) vs sqrt(2) + 10001/10000.
    a = PowerSum.from_product(PowerProduct.one()) + \
        PowerSum.from_product(PowerProduct.from_base_exp(2, Fraction(1, 2)))
    b = PowerSum.from_product(PowerProduct.one(), Fraction(10001, 10000)) + \
        PowerSum.from_product(PowerProduct.from_base_exp(2, Fraction(1, 2)))
    assert a.compare(b) == -1
    assert b.compare(a) == 1


def test_sum_rational_fast_path():
    a = PowerSum.from_product(PowerProduct.from_rational(Fraction(1, 3)))
    b = PowerSum.from_product(PowerProduct.from_rational(Fraction(2, 3)))
    assert a.compare(b) == -1
    assert (a + a + a).as_rational() == 1


def test_random_product_comparisons_against_floats():
    rng = random.Random(11)
    for _ in range(300):
        a = product_from_pairs([(rng.randint(2, 50), Fraction(rng.randint(-6, 6), rng.randint(1, 5)))])
        b = product_from_pairs([(rng.randint(2, 50), Fraction(rng.randint(-6, 6), rng.randint(1, 5)))])
        fa, fb = float(a), float(b)
        if abs(fa - fb) > 1e-9 * max(abs(fa), abs(fb)):
            want = -1 if fa < fb else 1
            assert a.compare(b) == want
