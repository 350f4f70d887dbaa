import decimal
from fractions import Fraction
import random

import pytest

from complength import bounds, errors
from complength.bounds import BoundExpr


@pytest.mark.parametrize("theorem, kwargs, value",
    [('T12', {'n': 16, 'r': 1}, 20),
     ('T12', {'n': 4, 'r': 1}, 4),
     ('T12', {'n': 9, 'r': 3}, 8),
     ('T13', {'n': 256}, 20),
     ('T13', {'n': 4}, 4),
     ('T15', {'n': 625}, 12),
     ('T15', {'n': 5}, 2),
     ('T16b', {'n': 512}, 21),
     ('T16b', {'n': 8}, 5),
     ('T14', {'d': 8, 'p': 2, 'f': 1, 'r': 1}, 12),
     ('T14', {'d': 3, 'p': 2, 'f': 2, 'r': 3}, 3),
     ('T14', {'d': 2, 'p': 2, 'f': 1, 'r': 1}, 2)])
def test_rational_bound_values(theorem, kwargs, value):
    bound = bounds.bound_value(theorem, **kwargs)
    assert bound.is_rational()
    assert bound.rational_value() == value
    assert bound.compare(value) == 0
    assert bounds.verdict(bound, value) == 'equal'
    assert bounds.verdict(bound, value - 1) == 'strict'
    assert bounds.verdict(bound, value + 1) == 'VIOLATION'

@pytest.mark.parametrize("theorem, n, below, above",
    [('T13', 5, 4, 5),
     ('T13', 100, 16, 17),
     ('T15', 6, 2, 3),
     ('T16a', 16875, 17, 18),
     ('T16b', 6, 3, 4)])
def test_irrational_bounds(theorem, n, below, above):
    bound = bounds.bound_value(theorem, n=n)
    assert not bound.is_rational()
    assert bound.rational_value() is None
    assert bound.compare(below) == 1
    assert bound.compare(above) == -1
    assert bounds.approximate_agrees(bound, below)
    assert bounds.approximate_agrees(bound, above)

def test_nearly_equal_comparison_is_exact():
    # 8/3 log2(2^30 + 1) exceeds 80 by far less than any float can see
    bound = BoundExpr(Fraction(0), ((Fraction(8, 3), 2 ** 30 + 1),), 2)
    assert bound.compare(80) == 1
    bound = BoundExpr(Fraction(0), ((Fraction(8, 3), 2 ** 30 - 1),), 2)
    assert bound.compare(80) == -1

def test_quasiprimitive_example_is_strict():
    bound = bounds.bound_value('T16a', n=16875)
    assert bounds.verdict(bound, 9) == 'strict'

@pytest.mark.parametrize("theorem, kwargs",
    [('T99', {'n': 4}),
     ('T12', {'n': 4, 'r': 5}),
     ('T12', {'n': 0}),
     ('T13', {}),
     ('T14', {'d': 2, 'p': 4, 'f': 1, 'r': 1}),
     ('T14', {'d': 2, 'p': 2, 'f': 1, 'r': 3}),
     ('T14', {'d': 0, 'p': 2, 'f': 1, 'r': 1})])
def test_bound_value_rejects_bad_parameters(theorem, kwargs):
    with pytest.raises(errors.RangeError):
        bounds.bound_value(theorem, **kwargs)

def test_bound_expr_rejects_bad_logarithms():
    with pytest.raises(errors.RangeError):
        BoundExpr(Fraction(0), ((Fraction(1), 0),), 2)
    with pytest.raises(errors.RangeError):
        BoundExpr(Fraction(0), (), 1)

def test_slack():
    assert bounds.bound_value('T12', n=5, r=1).slack(2) == Fraction(10, 3)
    slack = bounds.bound_value('T13', n=5).slack(2)
    assert isinstance(slack, decimal.Decimal)
    assert decimal.Decimal('2.85') < slack < decimal.Decimal('2.86')

def test_str_and_record():
    bound = bounds.bound_value('T13', n=256)
    assert str(bound) == '-4/3 + 8/3*log2(256)'
    record = bound.to_record()
    assert record['bound_numerator'] == 20
    assert record['bound_denominator'] == 1
    assert str(bounds.bound_value('T12', n=16)) == '20'
    assert 'bound_numerator' not in bounds.bound_value('T13', n=5).to_record()

def test_approximate():
    value = bounds.bound_value('T13', n=5).approximate(30)
    assert str(value).startswith('4.858')
    assert float(bounds.bound_value('T15', n=625)) == pytest.approx(12)

@pytest.mark.parametrize("order, c, result",
    [(16, 4, 'equal'),
     (24, 4, 'strict'),
     (24, 5, 'VIOLATION'),
     (60, 1, 'strict')])
def test_log2_envelope(order, c, result):
    assert bounds.verdict(bounds.log2_envelope(order), c) == result

def test_ratio_to_log2():
    assert float(bounds.ratio_to_log2(20, 256)) == pytest.approx(2.5)
    assert bounds.ratio_to_log2(3, 1) is None

def _random_bound(rng):
    terms = tuple((Fraction(rng.randint(-20, 20), rng.randint(1, 6)), rng.randint(1, 10 ** 6))
                  for _ in range(rng.randint(1, 3)))
    return BoundExpr(Fraction(rng.randint(-60, 60), rng.randint(1, 6)), terms, rng.choice([2, 3, 5]))

def test_exact_comparison_matches_decimal_value():
    rng = random.Random(20)
    tie = decimal.Decimal(10) ** -30
    checked = 0
    for _ in range(1000):
        bound = _random_bound(rng)
        t = rng.randint(-40, 80)
        difference = bound.approximate() - t
        assert bounds.approximate_agrees(bound, t)
        if abs(difference) <= tie:
            continue
        assert bound.compare(t) == (1 if difference > 0 else -1)
        checked += 1
    assert checked > 900

def test_exact_comparison_on_rational_ties():
    rng = random.Random(7)
    for _ in range(200):
        base = rng.choice([2, 3, 5])
        c, e = Fraction(rng.randint(-12, 12), 3), rng.randint(0, 10)
        bound = BoundExpr(Fraction(rng.randint(-9, 9), 3), ((c, base ** e),), base)
        value = bound.rational_value()
        assert bound.compare(value) == 0
        assert bound.compare(value + Fraction(1, 9)) == -1
        assert bounds.approximate_agrees(bound, value)
