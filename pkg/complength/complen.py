from dataclasses import dataclass, field
import logging
import math
import random
from typing import List, Optional

import numpy as np

from complength import actions, config, errors, perms
from complength.helpers import simple_orders, utils
from complength.perms import Permutation

logger = logging.getLogger(__name__)

CERTIFIED = 'certified'
PROBABLE = 'probable'

TRIVIAL = 'trivial'
ORBIT_SPLIT = 'orbit-split'
BLOCK_SPLIT = 'block-split'
DERIVED_SPLIT = 'derived-split'
NORMAL_SPLIT = 'normal-split'
SIMPLE_LEAF = 'simple-leaf'
ABELIAN_LEAF = 'abelian-leaf'


@dataclass
class TraceStep:
    kind: str
    degree: int
    order: int
    length: int
    children: List['TraceStep'] = field(default_factory=list)
    # simple leaves only: whether the order is that of a known simple group
    corroborated: Optional[bool] = None

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def signed_leaves(self, sign=1):
        if not self.children:
            yield sign, self
            return
        for i, child in enumerate(self.children):
            child_sign = -sign if self.kind == NORMAL_SPLIT and i == 2 else sign
            yield from child.signed_leaves(child_sign)

    def to_record(self):
        record = {'kind': self.kind, 'degree': self.degree, 'order': str(self.order), 'length': self.length}
        if self.corroborated is not None:
            record['corroborated'] = self.corroborated
        if self.children:
            record['children'] = [c.to_record() for c in self.children]
        return record


@dataclass
class LengthResult:
    length: int
    certainty: str
    root: TraceStep

    @property
    def trace(self):
        return list(self.root.walk())

    def to_record(self):
        return {'length': self.length, 'certainty': self.certainty, 'trace': self.root.to_record()}


@dataclass
class ProbeBudget:
    random_elements: int = config.PROBE_RANDOM_ELEMENTS
    seed: int = config.DEFAULT_SEED

    @classmethod
    def of(cls, budget=None, seed=None):
        if isinstance(budget, ProbeBudget):
            return budget
        return cls(config.PROBE_RANDOM_ELEMENTS if budget is None else budget,
                   config.DEFAULT_SEED if seed is None else seed)


def _power_candidates(x):
    '''
    x^p and x^(ord/p) for every prime p dividing the order of x.
    '''
    order = x.order()
    out = []
    for p in utils.prime_divisors(order):
        out.append(x ** p)
        out.append(x ** (order // p))
    return out


def candidate_elements(group, budget):
    gens = [g for g in group.generators if not g.is_identity()]
    candidates = list(gens)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            candidates.append(perms.commutator(gens[i], gens[j]))
    sampler = perms.RandomSampler(group.degree, group.generator_arrays(), seed=budget.seed)
    for _ in range(budget.random_elements):
        x = sampler.next()
        candidates.append(x)
        candidates.extend(_power_candidates(x))
    rng = random.Random(budget.seed)
    # conjugates of generators by random elements reach other classes cheaply
    for _ in range(min(8, budget.random_elements)):
        if not gens:
            break
        candidates.append(perms.conjugate(rng.choice(gens), sampler.next()))
    seen = set()
    for c in candidates:
        if c.is_identity() or c in seen:
            continue
        seen.add(c)
        yield c


def probe_normal_subgroup(group, budget=None, seed=None):
    '''
    A proper nontrivial normal subgroup found as the normal closure of a candidate
    element, preferring the smallest order, or None.
    '''
    budget = ProbeBudget.of(budget, seed)
    full = group.order()
    if full == 1:
        raise ValueError('probing the trivial group')
    best = None
    tried = 0
    for x in candidate_elements(group, budget):
        closure = perms.normal_closure(group, [x], stop_order=full)
        tried += 1
        size = closure.order()
        if size < full and (best is None or size < best.order()):
            best = closure
    if best is None:
        logger.debug('probe found no proper normal subgroup among %d candidates (order %d)', tried, full)
    else:
        logger.debug('probe found a normal subgroup of order %d in a group of order %d', best.order(), full)
    return best


class _Engine:
    def __init__(self, budget, degree_cap):
        self.budget = budget
        self.degree_cap = degree_cap
        self.probable = False

    def length(self, group):
        group, _ = perms.on_support(group)
        order = group.order()
        degree = group.degree
        if order == 1:
            return TraceStep(TRIVIAL, degree, 1, 0)

        if not perms.is_transitive(group):
            orbit = perms.orbits(group)[0]
            split = actions.restrict_to_orbit(group, orbit, degree_cap=self.degree_cap)
            logger.debug('orbit split of degree %d at an orbit of length %d', degree, len(orbit))
            return self._combine(ORBIT_SPLIT, group, [self.length(split.image), self.length(split.kernel)])

        system = actions.find_minimal_block_system(group)
        if system is not None:
            split = actions.block_action(group, system, degree_cap=self.degree_cap)
            logger.debug('block split of degree %d into %d blocks of size %d', degree, system.num_blocks, system.block_size)
            return self._combine(BLOCK_SPLIT, group, [self.length(split.image), self.length(split.kernel)])

        derived = perms.derived_subgroup(group)
        derived_order = derived.order()
        if derived_order == 1:
            return TraceStep(ABELIAN_LEAF, degree, order, perms.omega_order(group))
        if derived_order < order:
            quotient = perms.omega_order(group) - perms.omega_order(derived)
            logger.debug('derived split of a primitive group of degree %d, index %d', degree, order // derived_order)
            children = [self.length(derived), TraceStep(ABELIAN_LEAF, 0, order // derived_order, quotient)]
            return self._combine(DERIVED_SPLIT, group, children)

        normal = probe_normal_subgroup(group, self.budget)
        if normal is not None:
            stabilizer = perms.point_stabilizer(group, 0)
            normal_stabilizer = perms.point_stabilizer(normal, 0)
            logger.debug('normal split of a perfect primitive group of degree %d by a subgroup of order %d', degree, normal.order())
            children = [self.length(normal), self.length(stabilizer), self.length(normal_stabilizer)]
            return self._combine(NORMAL_SPLIT, group, children)

        corroborated = simple_orders.simple_order_table_check(order) == simple_orders.CORROBORATED
        if not corroborated:
            logger.info('simple leaf of order %d is not a known simple group order', order)
            self.probable = True
        return TraceStep(SIMPLE_LEAF, degree, order, 1, corroborated=corroborated)

    def _combine(self, kind, group, children):
        if kind == NORMAL_SPLIT:
            length = children[0].length + children[1].length - children[2].length
        else:
            length = sum(c.length for c in children)
        return TraceStep(kind, group.degree, group.order(), length, children)


def composition_length(group, budget=None, degree_cap=None, seed=None):
    cap = config.DEGREE_CAP if degree_cap is None else degree_cap
    if group.degree > cap:
        raise errors.DegreeCapExceeded(group.degree, cap)
    engine = _Engine(ProbeBudget.of(budget, seed), cap)
    root = engine.length(group)
    certainty = PROBABLE if engine.probable else CERTIFIED
    logger.debug('composition length %d (%s) for degree %d', root.length, certainty, group.degree)
    return LengthResult(root.length, certainty, root)


def audit_trace(result):
    '''
    Check that every step of a trace adds up, in lengths and in orders.
    Returns the list of offending steps (empty when the trace is consistent).
    '''
    bad = []
    for step in result.root.walk():
        children = step.children
        if not children:
            expected = {TRIVIAL: 0, SIMPLE_LEAF: 1}.get(step.kind)
            if step.kind == ABELIAN_LEAF:
                expected = utils.omega(step.order)
            if expected is None or expected != step.length:
                bad.append(step)
            continue
        if step.kind == NORMAL_SPLIT:
            n, s, ns = children
            ok = (step.length == n.length + s.length - ns.length
                  and step.order * ns.order == n.order * s.order)
        else:
            ok = (step.length == sum(c.length for c in children)
                  and step.order == math.prod(c.order for c in children))
        if not ok:
            bad.append(step)
    if sum(sign * leaf.length for sign, leaf in result.root.signed_leaves()) != result.length:
        bad.append(result.root)
    return bad


def group_elements(group, cap=None):
    cap = config.ORACLE_CAP if cap is None else cap
    order = group.order()
    if order > cap:
        raise errors.OracleCapExceeded(order, cap)
    start = perms.identity_array(group.degree)
    seen = {start.tobytes(): start}
    frontier = [start]
    gens = group.generator_arrays()
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                key = y.tobytes()
                if key not in seen:
                    seen[key] = y
                    nxt.append(y)
        frontier = nxt
    return [Permutation._wrap(np.array(x)) for x in seen.values()]


def conjugacy_class_representatives(group, elements):
    inverses = [perms.invert_array(g) for g in group.generator_arrays()]
    assigned = set()
    representatives = []
    for x in elements:
        key = x.images.tobytes()
        if key in assigned:
            continue
        representatives.append(x)
        assigned.add(key)
        frontier = [x.images]
        while frontier:
            nxt = []
            for y in frontier:
                for g, g_inv in zip(group.generator_arrays(), inverses):
                    # g^-1 y g
                    z = g[y[g_inv]]
                    k = z.tobytes()
                    if k not in assigned:
                        assigned.add(k)
                        nxt.append(z)
            frontier = nxt
    return representatives


def composition_length_oracle(group, cap=None):
    '''
    Exact composition length by brute force: split off a minimal normal subgroup
    (the smallest normal closure of a single element) and recurse on it and on the
    quotient, realised as the action on its cosets.
    '''
    cap = config.ORACLE_CAP if cap is None else cap
    group, _ = perms.on_support(group)
    order = group.order()
    if order > cap:
        raise errors.OracleCapExceeded(order, cap)
    if order == 1:
        return 0
    elements = group_elements(group, cap)
    minimal = None
    for x in conjugacy_class_representatives(group, elements):
        if x.is_identity():
            continue
        closure = perms.normal_closure(group, [x])
        if minimal is None or closure.order() < minimal.order():
            minimal = closure
    if minimal.order() == order:
        # no proper nontrivial normal subgroup
        return 1
    quotient = actions.coset_action(group, minimal).image
    return composition_length_oracle(minimal, cap) + composition_length_oracle(quotient, cap)


def c_symmetric(n):
    return {1: 0, 2: 1, 3: 2, 4: 4}.get(n, 2)


def c_alternating(n):
    if n <= 2:
        return 0
    return {3: 1, 4: 3}.get(n, 1)


def c_general_linear(d, q):
    '''
    GL(d,q) has factors C_(q-1) on top, the scalars of SL(d,q) and PSL(d,q).
    '''
    if d == 1:
        return utils.omega(q - 1)
    if (d, q) == (2, 2):
        return 2
    if (d, q) == (2, 3):
        return 5
    return utils.omega(q - 1) + utils.omega(math.gcd(d, q - 1)) + 1


def c_T(k):
    return 4 * (4 ** k - 1) // 3


def c_semiprimitive_example(k):
    return (16 * 4 ** k - 1) // 3


def c_quasiprimitive_example(k):
    if k < 1:
        raise errors.RangeError('the quasiprimitive family starts at k = 1')
    return (31 * 4 ** k - 16) // 12


def composition_length_analytic(spec):
    '''
    Composition length from closed forms, valid for any parameter size since nothing is built.
    Wreath products are full, so c(bottom wr top) = b c(bottom) + c(top).
    '''
    from complength import constructions
    if isinstance(spec, str):
        spec = constructions.ConstructionSpec.parse(spec)
    kind, params = spec.kind, spec.parameters
    if kind == 'symmetric':
        return c_symmetric(params[0])
    if kind == 'alternating':
        return c_alternating(params[0])
    if kind == 'cyclic':
        return utils.omega(params[0])
    if kind == 'dihedral':
        return utils.omega(2 * params[0])
    if kind == 'T':
        return c_T(params[0])
    if kind == 'P':
        return c_T(params[0] + 1)
    if kind == 'L':
        return 2 * 4 ** params[0] + c_T(params[0])
    if kind == 'gl_on_nonzero_vectors':
        return c_general_linear(*params)
    if kind == 'gl1_power':
        d, q = params
        return d * utils.omega(q - 1)
    if kind == 'semiprimitive_example':
        return c_semiprimitive_example(params[0])
    if kind == 'quasiprimitive_example':
        return c_quasiprimitive_example(params[0])
    if kind in ('wreath_imprimitive', 'wreath_product_action'):
        bottom, top = spec.children
        return top.degree() * composition_length_analytic(bottom) + composition_length_analytic(top)
    if kind == 'direct_product':
        return sum(composition_length_analytic(c) for c in spec.children)
    raise errors.SpecParseError(f"no closed form for {spec}")
