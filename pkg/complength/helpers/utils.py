from fractions import Fraction
import functools
import math


@functools.lru_cache(maxsize=4096)
def factorint(n):
    '''
    Prime factorisation by trial division, as a dict prime -> multiplicity.
    Only ever called on numbers bounded by a degree or a field size.
    '''
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def omega(n):
    '''
    Number of prime factors of n counted with multiplicity.
    '''
    return sum(factorint(n).values())


def prime_divisors(n):
    return sorted(factorint(n))


def is_prime(n):
    return n >= 2 and factorint(n) == {n: 1}


def prime_power(q):
    '''
    Returns (p, f) with q = p**f, or None when q is not a prime power.
    '''
    if q < 2:
        return None
    factors = factorint(q)
    if len(factors) != 1:
        return None
    (p, f), = factors.items()
    return p, f


def integer_log(n, base):
    '''
    Returns k with base**k == n, or None.
    '''
    if n < 1 or base < 2:
        return None
    k = 0
    while n % base == 0:
        n //= base
        k += 1
    return k if n == 1 else None


def is_power_of(n, base):
    return integer_log(n, base) is not None


def omega_of_ratio(numerator, denominator):
    ratio = Fraction(numerator, denominator)
    if ratio.denominator != 1:
        raise ValueError(f"{numerator} is not divisible by {denominator}")
    return omega(ratio.numerator)


def lcm(*values):
    return functools.reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def prime_divisors_of_order(orbit_lengths):
    '''
    Primes dividing a group order, from its fundamental orbit lengths.
    '''
    primes = set()
    for length in orbit_lengths:
        primes.update(factorint(length))
    return sorted(primes)


def fraction_to_record(value):
    value = Fraction(value)
    return {'numerator': value.numerator, 'denominator': value.denominator}
