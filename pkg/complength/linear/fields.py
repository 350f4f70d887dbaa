import functools
import itertools
import logging
import random

import numpy as np

from complength import config, errors
from complength.helpers import utils

logger = logging.getLogger(__name__)

# Conway polynomials, coefficients listed from the constant term up (monic).
CONWAY_POLYNOMIALS = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}

ELEMENT_DTYPE = np.uint8


class FieldTable:
    '''
    GF(p^f) with q <= 256. Elements are the integers 0..q-1; element e stands for
    the polynomial whose coefficient of x^i is the i-th base-p digit of e.
    '''

    def __init__(self, p, f):
        q = p ** f
        if q > config.LARGEST_FIELD:
            raise errors.RangeError(f"fields are limited to q <= {config.LARGEST_FIELD}, got {q}")
        if not utils.is_prime(p) or f < 1:
            raise errors.RangeError(f"GF({p}^{f}) is not a field")
        self.p = p
        self.f = f
        self.q = q
        self.is_prime = f == 1
        self.polynomial = None
        if self.is_prime:
            elements = np.arange(q, dtype=np.int64)
            self.add_table = (np.add.outer(elements, elements) % p).astype(ELEMENT_DTYPE)
            self.mul_table = (np.multiply.outer(elements, elements) % p).astype(ELEMENT_DTYPE)
            self.primitive_element = self._smallest_generator()
        else:
            self.polynomial = CONWAY_POLYNOMIALS.get((p, f)) or self._search_primitive_polynomial()
            exp = self._powers_of_x(self.polynomial)
            if exp is None:
                raise ValueError(f"polynomial {self.polynomial} is not primitive over GF({p})")
            self.add_table = self._digit_addition()
            self.mul_table = self._multiplication_from_logs(exp)
            # the class of x, whose encoding is p
            self.primitive_element = p
        self.neg_table = np.array([int(np.nonzero(self.add_table[a] == 0)[0][0]) for a in range(q)], dtype=ELEMENT_DTYPE)
        inv = np.zeros(q, dtype=ELEMENT_DTYPE)
        for a in range(1, q):
            inv[a] = int(np.nonzero(self.mul_table[a] == 1)[0][0])
        self.inv_table = inv
        self._check_axioms()

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, FieldTable) and other.q == self.q

    def __hash__(self):
        return hash(self.q)

    def __reduce__(self):
        return (get_field, (self.q,))

    def _smallest_generator(self):
        p = self.p
        if p == 2:
            return 1
        for g in range(2, p):
            if all(pow(g, (p - 1) // r, p) != 1 for r in utils.prime_divisors(p - 1)):
                return g
        raise ValueError(f"no generator found for GF({p})")

    def encode(self, coefficients):
        value = 0
        for c in reversed(list(coefficients)):
            value = value * self.p + int(c)
        return value

    def digits(self, element):
        coefficients = []
        for _ in range(self.f):
            element, c = divmod(element, self.p)
            coefficients.append(c)
        return coefficients

    def _powers_of_x(self, polynomial):
        '''
        Encodings of x^0, ..., x^(q-2) modulo the polynomial, or None when x
        does not generate the multiplicative group.
        '''
        p, f, q = self.p, self.f, self.q
        current = [1] + [0] * (f - 1)
        exp = []
        seen = set()
        for _ in range(q - 1):
            value = self.encode(current)
            if value in seen:
                return None
            seen.add(value)
            exp.append(value)
            top = current[-1]
            current = [0] + current[:-1]
            current = [(c - top * polynomial[i]) % p for i, c in enumerate(current)]
        if self.encode(current) != 1:
            return None
        return exp

    def _search_primitive_polynomial(self):
        logger.info('no stored polynomial for GF(%d^%d), searching', self.p, self.f)
        for tail in itertools.product(range(self.p), repeat=self.f):
            polynomial = tuple(tail) + (1,)
            if polynomial[0] == 0:
                continue
            if self._powers_of_x(polynomial) is not None:
                return polynomial
        raise ValueError(f"no primitive polynomial of degree {self.f} over GF({self.p})")

    def _digit_addition(self):
        q, p = self.q, self.p
        digits = np.array([self.digits(a) for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(self.f, dtype=np.int64)
        sums = (digits[:, None, :] + digits[None, :, :]) % p
        return (sums @ weights).astype(ELEMENT_DTYPE)

    def _multiplication_from_logs(self, exp):
        q = self.q
        exp = np.array(exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        logs = (log[:, None] + log[None, :]) % (q - 1)
        table = exp[logs]
        table[0, :] = 0
        table[:, 0] = 0
        return table.astype(ELEMENT_DTYPE)

    def _check_axioms(self):
        q = self.q
        add, mul = self.add_table.astype(np.int64), self.mul_table.astype(np.int64)
        if q <= 16:
            a, b, c = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing='ij')
        else:
            rng = random.Random(q)
            triples = np.array([[rng.randrange(q) for _ in range(3)] for _ in range(2000)])
            a, b, c = triples.T
        ok = (np.array_equal(add[add[a, b], c], add[a, add[b, c]])
              and np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]])
              and np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]])
              and np.array_equal(add, add.T) and np.array_equal(mul, mul.T))
        if not ok:
            raise ValueError(f"field tables for GF({q}) violate the field axioms")

    # elementwise arithmetic on arrays of field elements

    def add(self, a, b):
        if self.is_prime:
            return ((np.asarray(a, dtype=np.int64) + b) % self.p).astype(ELEMENT_DTYPE)
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def mul(self, a, b):
        if self.is_prime:
            return ((np.asarray(a, dtype=np.int64) * b) % self.p).astype(ELEMENT_DTYPE)
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError('zero has no inverse')
        return self.inv_table[a]

    def matmul(self, a, b):
        '''
        Product of arrays of shape (r, k) and (k, c) over the field.
        '''
        if self.is_prime:
            return ((a.astype(np.int64) @ b.astype(np.int64)) % self.p).astype(ELEMENT_DTYPE)
        result = np.zeros((a.shape[0], b.shape[1]), dtype=ELEMENT_DTYPE)
        for k in range(a.shape[1]):
            result = self.add_table[result, self.mul_table[a[:, k][:, None], b[k][None, :]]]
        return result

    def elements(self):
        return np.arange(self.q, dtype=ELEMENT_DTYPE)


@functools.lru_cache(maxsize=None)
def get_field(q):
    split = utils.prime_power(q)
    if split is None:
        raise errors.RangeError(f"{q} is not a prime power")
    return FieldTable(*split)
