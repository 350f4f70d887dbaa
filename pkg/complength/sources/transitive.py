'''
Transitive permutation groups of small degree, up to conjugacy in Sym(n),
found by brute force.

Subgroups are built by cyclic extension: every subgroup is reached from the
trivial group by adjoining elements of prime power order one at a time, so
closing the conjugacy class representatives under such extensions finds every
class. Permutations are plain tuples here; the groups involved are tiny.
'''
import collections
import functools
import itertools
import logging

from complength import errors
from complength.helpers import utils
from complength.perms import Permutation, PermGroup

logger = logging.getLogger(__name__)

MAX_DEGREE = 6

# number of transitive groups of degree 1..6 up to conjugacy
KNOWN_COUNTS = {1: 1, 2: 1, 3: 2, 4: 5, 5: 5, 6: 16}


def _compose(a, b):
    return tuple(b[i] for i in a)


def _conjugate(x, g):
    out = [0] * len(x)
    for i, image in enumerate(x):
        out[g[i]] = g[image]
    return tuple(out)


def _closure(gens, n):
    identity = tuple(range(n))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elements)


def _cycle_type(x):
    seen = [False] * len(x)
    lengths = []
    for start in range(len(x)):
        if seen[start]:
            continue
        length = 0
        point = start
        while not seen[point]:
            seen[point] = True
            point = x[point]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def _orbit_lengths(gens, n):
    labels = list(range(n))

    def find(a):
        while labels[a] != a:
            labels[a] = labels[labels[a]]
            a = labels[a]
        return a

    for g in gens:
        for i, j in enumerate(g):
            ri, rj = find(i), find(j)
            if ri != rj:
                labels[max(ri, rj)] = min(ri, rj)
    return tuple(sorted(collections.Counter(find(i) for i in range(n)).values()))


def _invariant(gens, elements, n):
    types = collections.Counter(_cycle_type(x) for x in elements)
    return len(elements), _orbit_lengths(gens, n), tuple(sorted(types.items()))


class _SubgroupClass:
    def __init__(self, gens, elements, invariant):
        self.gens = gens
        self.elements = elements
        self.invariant = invariant


def _conjugate_into(gens, target, symmetric):
    return any(all(_conjugate(x, g) in target.elements for x in gens) for g in symmetric)


def _prime_power_cyclic_generators(symmetric, n):
    '''
    One generator for each cyclic subgroup of prime power order.
    '''
    seen = set()
    out = []
    for x in symmetric:
        key = _closure([x], n)
        if len(key) == 1 or utils.prime_power(len(key)) is None:
            continue
        if key in seen:
            continue
        seen.add(key)
        out.append(x)
    return out


@functools.lru_cache(maxsize=None)
def _subgroup_classes(n):
    symmetric = list(itertools.permutations(range(n)))
    extenders = _prime_power_cyclic_generators(symmetric, n)
    trivial_elements = _closure([], n)
    classes = [_SubgroupClass((), trivial_elements, _invariant((), trivial_elements, n))]
    by_invariant = collections.defaultdict(list)
    by_invariant[classes[0].invariant].append(classes[0])
    seen = {trivial_elements}
    queue = [classes[0]]
    while queue:
        sub = queue.pop()
        for x in extenders:
            if x in sub.elements:
                continue
            gens = sub.gens + (x,)
            elements = _closure(gens, n)
            if elements in seen:
                continue
            seen.add(elements)
            invariant = _invariant(gens, elements, n)
            if any(_conjugate_into(gens, other, symmetric) for other in by_invariant[invariant]):
                continue
            found = _SubgroupClass(gens, elements, invariant)
            classes.append(found)
            by_invariant[invariant].append(found)
            queue.append(found)
    logger.debug('Sym(%d) has %d conjugacy classes of subgroups', n, len(classes))
    return classes


def enumerate_transitive_small(n):
    '''
    The transitive subgroups of Sym(n) up to conjugacy, as PermGroups sorted by order.
    '''
    if not 1 <= n <= MAX_DEGREE:
        raise errors.RangeError(f"transitive groups are enumerated for 1 <= n <= {MAX_DEGREE}, got {n}")
    transitive = [c for c in _subgroup_classes(n) if c.invariant[1] == (n,)]
    transitive.sort(key=lambda c: (c.invariant[0], c.invariant[2]))
    groups = []
    for i, c in enumerate(transitive, start=1):
        gens = [Permutation(g) for g in c.gens]
        groups.append(PermGroup(n, gens, name=f"TG({n},{i})", known_order=c.invariant[0]))
    if len(groups) != KNOWN_COUNTS[n]:
        logger.warning('found %d transitive groups of degree %d, expected %d', len(groups), n, KNOWN_COUNTS[n])
    return groups
