'''
Exact arithmetic for bounds of the form a + sum_i b_i log_base(m_i).

Comparisons never go through floating point: after clearing denominators the
sign of the difference is read off a comparison of two big integers.
'''
from dataclasses import dataclass
import decimal
from fractions import Fraction
import logging
from typing import Tuple

from complength import errors
from complength.helpers import utils

logger = logging.getLogger(__name__)

THEOREMS = {
    'T12': 'c(G) <= 4/3 (n - r) for any permutation group with r orbits',
    'T13': 'c(G) <= 8/3 log2 n - 4/3 for primitive G',
    'T14': 'c(G) <= (8/3 log2 p - 1) d f - r (log2 f + 4/3) for completely reducible G <= GL(d, p^f) with r constituents',
    'T15': 'c(G) <= 10/3 log5 n - 4/3 for primitive G of non-affine type',
    'T16a': 'c(G) <= 10/3 log5 n - 10/3 log5 2 - 4/3 for quasiprimitive imprimitive G',
    'T16b': 'c(G) <= 8/3 log2 n - 3 for semiprimitive G that is not quasiprimitive',
}

DECIMAL_DIGITS = 60


@dataclass(frozen=True)
class BoundExpr:
    a: Fraction
    # (coefficient, argument) pairs, each a term coefficient * log_base(argument)
    terms: Tuple[Tuple[Fraction, int], ...] = ()
    base: int = 2

    def __post_init__(self):
        object.__setattr__(self, 'a', Fraction(self.a))
        terms = tuple((Fraction(c), int(m)) for c, m in self.terms)
        for _, m in terms:
            if m < 1:
                raise errors.RangeError(f"logarithm of {m} is undefined")
        if self.base < 2:
            raise errors.RangeError(f"logarithm base {self.base} is not at least 2")
        object.__setattr__(self, 'terms', terms)

    def _scaled(self, t):
        '''
        Integers (A, [(C_i, m_i)]) with D (value - t) = A + sum C_i log_base(m_i) for some D > 0.
        '''
        shift = self.a - Fraction(t)
        denominator = utils.lcm(shift.denominator, *(c.denominator for c, _ in self.terms))
        scaled_terms = [(int(c * denominator), m) for c, m in self.terms]
        return int(shift * denominator), scaled_terms

    def compare(self, t):
        '''
        Sign of value - t as -1, 0 or 1.
        '''
        shift, terms = self._scaled(t)
        # sign of log_base(base^A prod m_i^C_i) is the sign of the big-integer ratio against 1
        numerator = self.base ** max(shift, 0)
        denominator = self.base ** max(-shift, 0)
        for c, m in terms:
            if c > 0:
                numerator *= m ** c
            elif c < 0:
                denominator *= m ** -c
        return (numerator > denominator) - (numerator < denominator)

    def is_rational(self):
        return all(c == 0 or utils.is_power_of(m, self.base) for c, m in self.terms)

    def rational_value(self):
        '''
        The exact value when every logarithm is an integer, else None.
        '''
        if not self.is_rational():
            return None
        value = self.a
        for c, m in self.terms:
            if c:
                value += c * utils.integer_log(m, self.base)
        return value

    def approximate(self, digits=DECIMAL_DIGITS):
        '''
        Decimal value to the given number of significant digits, for display and cross-checks only.
        '''
        with decimal.localcontext() as context:
            context.prec = digits + 10
            log_base = decimal.Decimal(self.base).ln()
            value = decimal.Decimal(self.a.numerator) / decimal.Decimal(self.a.denominator)
            for c, m in self.terms:
                if c == 0 or m == 1:
                    continue
                coefficient = decimal.Decimal(c.numerator) / decimal.Decimal(c.denominator)
                value += coefficient * decimal.Decimal(m).ln() / log_base
            context.prec = digits
            return +value

    def minus(self, t):
        return BoundExpr(self.a - Fraction(t), self.terms, self.base)

    def slack(self, c):
        '''
        value - c, exact when rational, else as a decimal.
        '''
        exact = self.minus(c).rational_value()
        if exact is not None:
            return exact
        return self.minus(c).approximate()

    def __float__(self):
        return float(self.approximate(20))

    def __str__(self):
        parts = []
        if self.a or not self.terms:
            parts.append(str(self.a))
        for c, m in self.terms:
            if c == 0:
                continue
            if parts:
                parts.append('+' if c > 0 else '-')
                c = abs(c)
            coefficient = {1: '', -1: '-'}.get(c, f"{c}*")
            parts.append(f"{coefficient}log{self.base}({m})")
        return ' '.join(parts)

    def to_record(self):
        record = {'bound': str(self), 'bound_approx': str(self.approximate(20))}
        exact = self.rational_value()
        if exact is not None:
            record.update({f"bound_{key}": value for key, value in utils.fraction_to_record(exact).items()})
        return record


def _require(condition, message):
    if not condition:
        raise errors.RangeError(message)


def bound_value(theorem, n=None, r=1, d=None, p=None, f=None):
    '''
    The right-hand side of the named bound as an exact expression.
    '''
    if theorem not in THEOREMS:
        raise errors.RangeError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    if theorem == 'T14':
        _require(d is not None and d >= 1, f"T14 needs a dimension d >= 1, got {d}")
        _require(f is not None and f >= 1, f"T14 needs a field degree f >= 1, got {f}")
        _require(p is not None and utils.is_prime(p), f"T14 needs a prime characteristic, got {p}")
        _require(r is not None and 1 <= r <= d, f"T14 needs 1 <= r <= d, got r = {r}")
        a = -Fraction(d * f) - Fraction(4 * r, 3)
        return BoundExpr(a, ((Fraction(8 * d * f, 3), p), (Fraction(-r), f)), 2)

    _require(n is not None and n >= 1, f"{theorem} needs a degree n >= 1, got {n}")
    if theorem == 'T12':
        _require(r is not None and 1 <= r <= n, f"T12 needs 1 <= r <= n, got r = {r}")
        return BoundExpr(Fraction(4, 3) * (n - r), (), 2)
    if theorem == 'T13':
        return BoundExpr(Fraction(-4, 3), ((Fraction(8, 3), n),), 2)
    if theorem == 'T15':
        return BoundExpr(Fraction(-4, 3), ((Fraction(10, 3), n),), 5)
    if theorem == 'T16a':
        return BoundExpr(Fraction(-4, 3), ((Fraction(10, 3), n), (Fraction(-10, 3), 2)), 5)
    return BoundExpr(Fraction(-3), ((Fraction(8, 3), n),), 2)


def log2_envelope(order):
    '''
    log2 |G|, the elementary upper bound on composition length.
    '''
    return BoundExpr(Fraction(0), ((Fraction(1), order),), 2)


def ratio_to_log2(c, n, digits=20):
    '''
    c / log2 n as a decimal.
    '''
    if n < 2:
        return None
    with decimal.localcontext() as context:
        context.prec = digits
        return decimal.Decimal(c) * decimal.Decimal(2).ln() / decimal.Decimal(n).ln()


def verdict(bound, c):
    '''
    'strict', 'equal' or 'VIOLATION' for the claim c <= bound.
    '''
    sign = bound.compare(c)
    if sign > 0:
        return 'strict'
    if sign == 0:
        return 'equal'
    logger.warning('bound %s violated by c = %d', bound, c)
    return 'VIOLATION'


def approximate_agrees(bound, t, digits=DECIMAL_DIGITS):
    '''
    Cross-check of the exact comparison against the decimal value.
    '''
    exact = bound.compare(t)
    difference = bound.approximate(digits) - decimal.Decimal(Fraction(t).numerator) / decimal.Decimal(Fraction(t).denominator)
    tolerance = decimal.Decimal(10) ** (-(digits // 2))
    if abs(difference) <= tolerance:
        return True
    return exact == (1 if difference > 0 else -1)

