'''
Orders of the nonabelian finite simple groups below ORDER_BOUND, used to corroborate
simple leaves of the composition length engine.
'''
import functools
import logging
import math

import numpy as np

logger = logging.getLogger(__name__)

ORDER_BOUND = 10 ** 18

CORROBORATED = 'corroborated'
UNKNOWN = 'unknown'

SPORADIC_ORDERS = {
    'M11': 7920,
    'M12': 95040,
    'M22': 443520,
    'M23': 10200960,
    'M24': 244823040,
    'J1': 175560,
    'J2': 604800,
    'J3': 50232960,
    'J4': 86775571046077562880,
    'HS': 44352000,
    'McL': 898128000,
    'Suz': 448345497600,
    'Co3': 495766656000,
    'Co2': 42305421312000,
    'Co1': 4157776806543360000,
    'He': 4030387200,
    'Fi22': 64561751654400,
    'Fi23': 4089470473293004800,
    "Fi24'": 1255205709190661721292800,
    'HN': 273030912000000,
    'Ly': 51765179004000000,
    'Th': 90745943887872000,
    "O'N": 460815505920,
    'Ru': 145926144000,
    'B': 4154781481226426191177580544000000,
    'M': 808017424794512875886459904961710757005754368000000000,
}

TITS_GROUP_ORDER = 17971200


def _prime_powers(limit):
    '''
    Prime powers q <= limit in increasing order, as (q, p) pairs.
    '''
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    powers = []
    for p in np.nonzero(sieve)[0].tolist():
        q = p
        while q <= limit:
            powers.append((q, p))
            q *= p
    powers.sort()
    return powers


def _psl(n, q):
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q ** i - 1
    return order // math.gcd(n, q - 1)


def _psu(n, q):
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q ** i - (-1) ** i
    return order // math.gcd(n, q + 1)


def _psp(n, q):
    # also the order of the odd-dimensional orthogonal groups B_n(q)
    order = q ** (n * n)
    for i in range(1, n + 1):
        order *= q ** (2 * i) - 1
    return order // math.gcd(2, q - 1)


def _omega_plus(n, q):
    order = q ** (n * (n - 1)) * (q ** n - 1)
    for i in range(1, n):
        order *= q ** (2 * i) - 1
    return order // math.gcd(4, q ** n - 1)


def _omega_minus(n, q):
    order = q ** (n * (n - 1)) * (q ** n + 1)
    for i in range(1, n):
        order *= q ** (2 * i) - 1
    return order // math.gcd(4, q ** n + 1)


def _exceptional(name, q):
    if name == 'G2':
        return q ** 6 * (q ** 6 - 1) * (q ** 2 - 1)
    if name == '3D4':
        return q ** 12 * (q ** 8 + q ** 4 + 1) * (q ** 6 - 1) * (q ** 2 - 1)
    if name == 'F4':
        return q ** 24 * (q ** 12 - 1) * (q ** 8 - 1) * (q ** 6 - 1) * (q ** 2 - 1)
    if name == 'E6':
        return q ** 36 * (q ** 12 - 1) * (q ** 9 - 1) * (q ** 8 - 1) * (q ** 6 - 1) * (q ** 5 - 1) * (q ** 2 - 1) // math.gcd(3, q - 1)
    if name == '2E6':
        return q ** 36 * (q ** 12 - 1) * (q ** 9 + 1) * (q ** 8 - 1) * (q ** 6 - 1) * (q ** 5 + 1) * (q ** 2 - 1) // math.gcd(3, q + 1)
    raise ValueError(f"unknown exceptional family {name}")


# (name, smallest rank, order function, excluded (rank, q) pairs that are not simple)
CLASSICAL_FAMILIES = [
    ('L', 2, _psl, {(2, 2), (2, 3)}),
    ('U', 3, _psu, {(3, 2)}),
    ('S', 4, lambda n, q: _psp(n // 2, q), {(4, 2)}),
    ('O', 7, lambda n, q: _psp((n - 1) // 2, q), set()),
    ('O+', 8, lambda n, q: _omega_plus(n // 2, q), set()),
    ('O-', 8, lambda n, q: _omega_minus(n // 2, q), set()),
]


# Suzuki and Ree groups: (name, characteristic, smallest q, order)
TWISTED_FAMILIES = [
    ('2B2', 2, 8, lambda q: q ** 2 * (q ** 2 + 1) * (q - 1)),
    ('2G2', 3, 27, lambda q: q ** 3 * (q ** 3 + 1) * (q - 1)),
    ('2F4', 2, 8, lambda q: q ** 12 * (q ** 6 + 1) * (q ** 4 - 1) * (q ** 3 + 1) * (q - 1)),
]


def _add(table, order, name):
    if order < ORDER_BOUND:
        table.setdefault(order, []).append(name)


@functools.lru_cache(maxsize=1)
def simple_order_table():
    '''
    Map from order to the names of the nonabelian simple groups of that order.
    Orthogonal groups in odd dimension are listed for odd q only.
    '''
    table = {}
    for n in range(5, 40):
        order = math.factorial(n) // 2
        if order >= ORDER_BOUND:
            break
        _add(table, order, f"A{n}")

    limit = int(round(2 * ORDER_BOUND ** (1 / 3))) + 2
    powers = _prime_powers(limit)
    for symbol, low, order_of, excluded in CLASSICAL_FAMILIES:
        step = 2 if symbol in ('S', 'O', 'O+', 'O-') else 1
        n = low
        while True:
            found = False
            for q, p in powers:
                if symbol == 'O' and p == 2:
                    continue
                order = order_of(n, q)
                if order >= ORDER_BOUND:
                    break
                found = True
                if (n, q) not in excluded:
                    _add(table, order, f"{symbol}{n}({q})")
            if not found:
                break
            n += step

    for name in ('G2', '3D4', 'F4', 'E6', '2E6'):
        for q, p in powers:
            order = _exceptional(name, q)
            if order >= ORDER_BOUND:
                break
            if (name, q) != ('G2', 2):
                _add(table, order, f"{name}({q})")

    for label, p, q, formula in TWISTED_FAMILIES:
        while formula(q) < ORDER_BOUND:
            _add(table, formula(q), f"{label}({q})")
            q *= p * p
    _add(table, TITS_GROUP_ORDER, "2F4(2)'")

    for name, order in SPORADIC_ORDERS.items():
        _add(table, order, name)
    logger.debug('simple order table holds %d orders', len(table))
    return table


def simple_groups_of_order(order):
    return list(simple_order_table().get(order, []))


def simple_order_table_check(order):
    if order in simple_order_table():
        return CORROBORATED
    return UNKNOWN
