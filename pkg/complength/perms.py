from collections import deque
import functools
import logging
import math
import random

import numpy as np

from complength import config, errors
from complength.helpers import utils

logger = logging.getLogger(__name__)

POINT_DTYPE = np.int32


@functools.lru_cache(maxsize=128)
def identity_array(degree):
    arr = np.arange(degree, dtype=POINT_DTYPE)
    arr.setflags(write=False)
    return arr


def invert_array(arr):
    inv = np.empty_like(arr)
    inv[arr] = identity_array(arr.size)
    return inv


def is_identity_array(arr):
    return np.array_equal(arr, identity_array(arr.size))


class Permutation:
    '''
    A permutation of the points 0..n-1 stored as its image array.

    Products act left to right, so (p * q)(x) == q(p(x)).
    '''
    __slots__ = ('_images', '_hash')

    def __init__(self, images):
        arr = np.array(images, dtype=POINT_DTYPE)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError('a permutation needs a one dimensional image array of at least one point')
        if arr.min() < 0 or arr.max() >= arr.size:
            raise ValueError('permutation images out of range')
        seen = np.zeros(arr.size, dtype=bool)
        seen[arr] = True
        if not seen.all():
            raise ValueError('permutation images are not a bijection')
        arr.setflags(write=False)
        self._images = arr
        self._hash = None

    @classmethod
    def _wrap(cls, arr):
        perm = cls.__new__(cls)
        if arr.flags.writeable:
            arr.setflags(write=False)
        perm._images = arr
        perm._hash = None
        return perm

    @classmethod
    def identity(cls, degree):
        return cls._wrap(identity_array(degree))

    @classmethod
    def from_cycles(cls, degree, cycles):
        arr = np.arange(degree, dtype=POINT_DTYPE)
        for cycle in cycles:
            cycle = list(cycle)
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated point in cycle {cycle}")
            for i, point in enumerate(cycle):
                if not 0 <= point < degree:
                    raise ValueError(f"point {point} out of range for degree {degree}")
                if arr[point] != point:
                    raise ValueError(f"cycles are not disjoint at point {point}")
                arr[point] = cycle[(i + 1) % len(cycle)]
        return cls._wrap(arr)

    @property
    def images(self):
        return self._images

    @property
    def degree(self):
        return self._images.size

    def __call__(self, point):
        return int(self._images[point])

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return self.inverse()

    def inverse(self):
        return Permutation._wrap(invert_array(self._images))

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = identity_array(self.degree)
        base = self._images
        while exponent:
            if exponent & 1:
                result = base[result]
            base = base[base]
            exponent >>= 1
        return Permutation._wrap(np.array(result))

    def is_identity(self):
        return is_identity_array(self._images)

    def support(self):
        return np.nonzero(self._images != identity_array(self.degree))[0]

    def cycles(self):
        images = self._images.tolist()
        seen = [False] * len(images)
        cycles = []
        for start in range(len(images)):
            if seen[start] or images[start] == start:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point)
                point = images[point]
            cycles.append(tuple(cycle))
        return cycles

    def order(self):
        return utils.lcm(*(len(c) for c in self.cycles()))

    def tolist(self):
        return self._images.tolist()

    def to_cycle_string(self, one_based=True):
        shift = 1 if one_based else 0
        cycles = self.cycles()
        if not cycles:
            return '()'
        return ''.join('(' + ','.join(str(p + shift) for p in c) + ')' for c in cycles)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self._images, other._images)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._images.tobytes())
        return self._hash

    def __repr__(self):
        return f"Permutation({self.degree}, {self.to_cycle_string(one_based=False)})"

    def __getstate__(self):
        return self._images

    def __setstate__(self, state):
        state = np.array(state, dtype=POINT_DTYPE)
        state.setflags(write=False)
        self._images = state
        self._hash = None


def compose(p, q):
    '''
    The product p * q, mapping x to q(p(x)).
    '''
    if p.degree != q.degree:
        raise errors.DegreeMismatchError(f"cannot compose permutations of degree {p.degree} and {q.degree}")
    return Permutation._wrap(q.images[p.images])


def commutator(a, b):
    return a.inverse() * b.inverse() * a * b


def conjugate(x, g):
    '''
    x^g = g^-1 x g
    '''
    return g.inverse() * x * g


def orbit_labels(degree, gen_arrays):
    '''
    Label every point with the smallest point of its orbit.
    '''
    labels = np.arange(degree, dtype=POINT_DTYPE)
    if not gen_arrays:
        return labels
    pairs = [(g, invert_array(g)) for g in gen_arrays]
    while True:
        new = labels.copy()
        for g, g_inv in pairs:
            np.minimum(new, labels[g], out=new)
            np.minimum(new, labels[g_inv], out=new)
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


class Transversal:
    '''
    Orbit of a base point with a Schreier tree over the level generators.

    The representative u_beta of an orbit point beta maps the base point to beta.
    Small levels memoise every representative; large ones recompute along the tree.
    '''

    def __init__(self, base_point, degree, gen_arrays, gen_lists):
        self.base_point = base_point
        self.degree = degree
        self._gen_arrays = gen_arrays
        self._gen_lists = gen_lists
        self.orbit = [base_point]
        self._tree = {base_point: None}
        self._reps = {base_point: identity_array(degree)}
        self._inverses = {base_point: identity_array(degree)}
        self._explicit = True
        self.extend(0)

    def __len__(self):
        return len(self.orbit)

    def __contains__(self, point):
        return point in self._tree

    def tree_edge(self, point):
        return self._tree[point]

    def extend(self, first_new):
        '''
        Grow the orbit after generators from index first_new on were appended.
        '''
        tree = self._tree
        gen_lists = self._gen_lists
        queue = deque()
        if first_new > 0:
            new_indices = range(first_new, len(gen_lists))
            for beta in list(self.orbit):
                for s in new_indices:
                    gamma = gen_lists[s][beta]
                    if gamma not in tree:
                        tree[gamma] = (beta, s)
                        self.orbit.append(gamma)
                        queue.append(gamma)
        else:
            queue.extend(self.orbit)
        while queue:
            beta = queue.popleft()
            for s, images in enumerate(gen_lists):
                gamma = images[beta]
                if gamma not in tree:
                    tree[gamma] = (beta, s)
                    self.orbit.append(gamma)
                    queue.append(gamma)
        explicit = len(self.orbit) * self.degree <= config.EXPLICIT_TRANSVERSAL_BUDGET
        if self._explicit and not explicit:
            logger.debug('level at %d switches to a Schreier vector (orbit %d)', self.base_point, len(self.orbit))
            self._reps = {self.base_point: identity_array(self.degree)}
            self._inverses = {self.base_point: identity_array(self.degree)}
        self._explicit = explicit

    def rep(self, beta):
        cached = self._reps.get(beta)
        if cached is not None:
            return cached
        path = []
        point = beta
        while point not in self._reps:
            parent, s = self._tree[point]
            path.append((point, s))
            point = parent
        arr = self._reps[point]
        for point, s in reversed(path):
            arr = self._gen_arrays[s][arr]
            if self._explicit:
                self._reps[point] = arr
        if not self._explicit:
            if len(self._reps) > 512:
                self._reps = {self.base_point: identity_array(self.degree)}
            self._reps[beta] = arr
        return arr

    def rep_inverse(self, beta):
        cached = self._inverses.get(beta)
        if cached is not None:
            return cached
        inv = invert_array(self.rep(beta))
        if not self._explicit and len(self._inverses) > 512:
            self._inverses = {self.base_point: identity_array(self.degree)}
        self._inverses[beta] = inv
        return inv


class _Level:
    __slots__ = ('base_point', 'gens', 'gen_arrays', 'gen_lists', 'transversal', 'checked')

    def __init__(self, base_point, degree, gens):
        self.base_point = base_point
        self.gens = list(gens)
        self.gen_arrays = [g.images for g in self.gens]
        self.gen_lists = [g.images.tolist() for g in self.gens]
        self.transversal = Transversal(base_point, degree, self.gen_arrays, self.gen_lists)
        self.checked = set()

    def add_generator(self, perm):
        self.gens.append(perm)
        self.gen_arrays.append(perm.images)
        self.gen_lists.append(perm.images.tolist())
        self.transversal.extend(len(self.gens) - 1)


class RandomSampler:
    '''
    Product replacement with an accumulator, seeded for reproducibility.
    '''

    def __init__(self, degree, gen_arrays, seed=config.DEFAULT_SEED, slots=10, scramble=50):
        self._rng = random.Random(seed)
        self._degree = degree
        gen_arrays = [g for g in gen_arrays if not is_identity_array(g)]
        if not gen_arrays:
            self._slots = []
        else:
            count = max(slots, len(gen_arrays))
            self._slots = [gen_arrays[i % len(gen_arrays)] for i in range(count)]
        self._accumulator = identity_array(degree)
        for _ in range(scramble):
            self.next_array()

    def next_array(self):
        if not self._slots:
            return identity_array(self._degree)
        rng = self._rng
        i = rng.randrange(len(self._slots))
        j = rng.randrange(len(self._slots) - 1)
        if j >= i:
            j += 1
        other = self._slots[j]
        if rng.random() < 0.5:
            other = invert_array(other)
        if rng.random() < 0.5:
            self._slots[i] = other[self._slots[i]]
        else:
            self._slots[i] = self._slots[i][other]
        self._accumulator = self._slots[i][self._accumulator]
        return self._accumulator

    def next(self):
        return Permutation._wrap(np.array(self.next_array()))


class BSGS:
    '''
    Base and strong generating set with one transversal per base point.

    Strong generators live in one list; level i uses those fixing the first i
    base points. With `preferred` set, base points below it are kept ahead of
    all other base points.
    '''

    def __init__(self, degree, preferred=None):
        self.degree = degree
        self.strong_gens = []
        self._levels = []
        self._preferred = preferred
        self.verified = False

    @classmethod
    def build(cls, degree, generators, known_order=None, initial_base=(), preferred=None, seed=config.DEFAULT_SEED):
        chain = cls(degree, preferred=preferred)
        gens = [g for g in generators if not g.is_identity()]
        for point in initial_base:
            chain._append_level(int(point))
        if gens and not chain._levels:
            chain._append_level(chain._first_base_point(gens))
        for g in gens:
            chain._insert(g.images)
        if gens:
            chain._random_schreier_sims(gens, seed, known_order)
            chain._complete()
        chain.verified = True
        if known_order is not None and chain.order() != known_order:
            raise ValueError(f"chain order {chain.order()} disagrees with the known order {known_order}")
        logger.debug('chain on %d points: base length %d, order %d', degree, len(chain.base), chain.order())
        return chain

    @classmethod
    def from_strong_generators(cls, degree, base, strong_gens):
        '''
        A chain from an already complete base and strong generating set.
        '''
        chain = cls(degree)
        chain.strong_gens = [g for g in strong_gens if not g.is_identity()]
        for point in base:
            chain._append_level(int(point))
        chain.verified = True
        return chain

    @property
    def base(self):
        return [lvl.base_point for lvl in self._levels]

    @property
    def levels(self):
        return self._levels

    def orbit_lengths(self):
        return [len(lvl.transversal) for lvl in self._levels]

    def order(self):
        return math.prod(self.orbit_lengths())

    def level_generators(self, depth):
        if depth < len(self._levels):
            return list(self._levels[depth].gens)
        return [g for g in self.strong_gens if self._fixes_prefix(g.images, depth)]

    def sift(self, arr, start=0):
        for i in range(start, len(self._levels)):
            lvl = self._levels[i]
            beta = int(arr[lvl.base_point])
            if beta not in lvl.transversal:
                return arr, i
            if beta != lvl.base_point:
                arr = lvl.transversal.rep_inverse(beta)[arr]
        return arr, len(self._levels)

    def contains(self, perm):
        residue, depth = self.sift(perm.images)
        return depth == len(self._levels) and is_identity_array(residue)

    def factorize(self, perm):
        '''
        Transversal representatives u_0, u_1, ... with perm = ... u_1 u_0,
        or None when perm is not in the group.
        '''
        arr = perm.images
        factors = []
        for lvl in self._levels:
            beta = int(arr[lvl.base_point])
            if beta not in lvl.transversal:
                return None
            factors.append(Permutation._wrap(np.array(lvl.transversal.rep(beta))))
            arr = lvl.transversal.rep_inverse(beta)[arr]
        if not is_identity_array(arr):
            return None
        return factors

    def add_generator(self, perm):
        '''
        Adjoin a new generator and restore completeness deterministically.
        Returns True when the group grew.
        '''
        if perm.is_identity():
            return False
        if not self._levels:
            self._append_level(self._first_base_point([perm]))
        if self._insert(perm.images) is None:
            return False
        self._complete()
        return True

    def substructure(self, depth):
        '''
        The chain of the pointwise stabilizer of the first `depth` base points.
        '''
        gens = self.level_generators(depth)
        chain = BSGS(self.degree)
        chain.strong_gens = [g for g in gens if not g.is_identity()]
        for lvl in self._levels[depth:]:
            chain._append_level(lvl.base_point)
        chain.verified = self.verified
        return chain

    def relabel(self, points):
        '''
        The chain of the group restricted to `points`, which must be a union of orbits
        containing every moved point.
        '''
        points = np.asarray(points)
        position = np.full(self.degree, -1, dtype=POINT_DTYPE)
        position[points] = np.arange(points.size, dtype=POINT_DTYPE)
        gens = [Permutation._wrap(position[g.images[points]]) for g in self.strong_gens]
        base = [int(position[b]) for b in self.base if position[b] >= 0]
        return BSGS.from_strong_generators(points.size, base, gens)

    def _fixes_prefix(self, arr, depth):
        if depth == 0:
            return True
        prefix = np.fromiter((lvl.base_point for lvl in self._levels[:depth]), dtype=np.int64, count=depth)
        return np.array_equal(arr[prefix], prefix)

    def _first_base_point(self, gens):
        labels = orbit_labels(self.degree, [g.images for g in gens])
        sizes = np.bincount(labels, minlength=self.degree)[labels]
        candidates = np.nonzero(sizes > 1)[0]
        if self._preferred is not None:
            preferred = candidates[candidates < self._preferred]
            if preferred.size:
                candidates = preferred
        return int(candidates[np.argmax(sizes[candidates])])

    def _choose_base_point(self, arr, depth):
        gens = [g.images for g in self.strong_gens if self._fixes_prefix(g.images, depth)]
        gens.append(arr)
        labels = orbit_labels(self.degree, gens)
        sizes = np.bincount(labels, minlength=self.degree)[labels]
        candidates = np.nonzero(arr != identity_array(self.degree))[0]
        if self._preferred is not None:
            preferred = candidates[candidates < self._preferred]
            if preferred.size:
                candidates = preferred
        return int(candidates[np.argmax(sizes[candidates])])

    def _append_level(self, point):
        depth = len(self._levels)
        gens = [g for g in self.strong_gens if self._fixes_prefix(g.images, depth)]
        self._levels.append(_Level(point, self.degree, gens))

    def _rebuild_from(self, depth, base):
        del self._levels[depth:]
        for point in base[depth:]:
            self._append_level(point)

    def _insert(self, arr):
        residue, depth = self.sift(arr)
        if depth == len(self._levels) and is_identity_array(residue):
            return None
        return self._add_strong(residue, depth)

    def _add_strong(self, arr, depth):
        '''
        Record a sifting residue that fixes the first `depth` base points.
        Returns the deepest level whose Schreier generators must be rechecked.
        '''
        perm = Permutation._wrap(np.array(arr))
        resume = depth
        if depth == len(self._levels):
            point = self._choose_base_point(arr, depth)
            base = self.base
            position = depth
            if self._preferred is not None and point < self._preferred:
                for i, b in enumerate(base):
                    if b >= self._preferred:
                        position = i
                        break
            self.strong_gens.append(perm)
            if position == depth:
                for lvl in self._levels:
                    lvl.add_generator(perm)
                self._append_level(point)
                return depth
            base.insert(position, point)
            for lvl in self._levels[:position]:
                lvl.add_generator(perm)
            self._rebuild_from(position, base)
            return len(self._levels) - 1
        self.strong_gens.append(perm)
        for lvl in self._levels[:depth + 1]:
            lvl.add_generator(perm)
        return resume

    def _random_schreier_sims(self, gens, seed, known_order):
        '''
        Sift random elements into the chain. A known order only ends the pass
        early; the deterministic Schreier test runs afterwards either way.
        '''
        sampler = RandomSampler(self.degree, [g.images for g in gens], seed=seed)
        if known_order is not None:
            attempts = 0
            while self.order() < known_order and attempts < 20000:
                self._insert(sampler.next_array())
                attempts += 1
            if self.order() != known_order:
                logger.info('random pre-pass stopped at order %d of %d', self.order(), known_order)
            return
        streak = 0
        while streak < config.RANDOM_SIFT_STREAK:
            if self._insert(sampler.next_array()) is None:
                streak += 1
            else:
                streak = 0

    def _complete(self):
        depth = len(self._levels) - 1
        while depth >= 0:
            failure = self._schreier_test(depth)
            if failure is None:
                depth -= 1
                continue
            residue, fail_depth = failure
            depth = self._add_strong(residue, fail_depth)

    def _schreier_test(self, depth):
        lvl = self._levels[depth]
        transversal = lvl.transversal
        checked = lvl.checked
        for beta in transversal.orbit:
            u = None
            for s, s_arr in enumerate(lvl.gen_arrays):
                if (beta, s) in checked:
                    continue
                checked.add((beta, s))
                gamma = lvl.gen_lists[s][beta]
                if transversal.tree_edge(gamma) == (beta, s):
                    continue
                if u is None:
                    u = transversal.rep(beta)
                schreier = transversal.rep_inverse(gamma)[s_arr[u]]
                residue, fail_depth = self.sift(schreier, depth + 1)
                if fail_depth < len(self._levels) or not is_identity_array(residue):
                    return residue, fail_depth
        return None


class PermGroup:
    '''
    A permutation group given by generators, with a lazily built stabilizer chain.
    '''

    def __init__(self, degree, generators=(), name=None, known_order=None):
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise errors.DegreeMismatchError(f"generator of degree {g.degree} in a group of degree {degree}")
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self.known_order = known_order
        self._chain = None
        self._sampler = None

    @classmethod
    def trivial(cls, degree, name=None):
        return cls(degree, [], name=name)

    @classmethod
    def from_chain(cls, chain, name=None):
        group = cls(chain.degree, chain.strong_gens, name=name)
        group._chain = chain
        return group

    @property
    def chain(self):
        if self._chain is None:
            self._chain = BSGS.build(self.degree, self.generators, known_order=self.known_order)
        return self._chain

    def has_chain(self):
        return self._chain is not None

    def set_chain(self, chain):
        self._chain = chain

    def order(self):
        return self.chain.order()

    def is_trivial(self):
        return all(g.is_identity() for g in self.generators)

    def generator_arrays(self):
        return [g.images for g in self.generators]

    def __contains__(self, perm):
        return membership(self, perm)

    def __repr__(self):
        label = f" {self.name}" if self.name else ''
        return f"<PermGroup{label} degree={self.degree} gens={len(self.generators)}>"

    def __getstate__(self):
        state = self.__dict__.copy()
        state['_sampler'] = None
        return state


def build_chain(group):
    return group.chain


def order(group):
    return group.chain.order()


def membership(group, perm):
    if perm.degree != group.degree:
        raise errors.DegreeMismatchError(f"element of degree {perm.degree} tested against a group of degree {group.degree}")
    return group.chain.contains(perm)


def orbits(group):
    '''
    The orbit partition, each orbit sorted, orbits ordered by smallest point.
    '''
    labels = orbit_labels(group.degree, group.generator_arrays())
    order_ = np.argsort(labels, kind='stable')
    boundaries = np.nonzero(np.diff(labels[order_]))[0] + 1
    return [part.tolist() for part in np.split(order_, boundaries)]


def orbit_of(group, point):
    labels = orbit_labels(group.degree, group.generator_arrays())
    return np.nonzero(labels == labels[point])[0].tolist()


def is_transitive(group):
    labels = orbit_labels(group.degree, group.generator_arrays())
    return not labels.any()


def _check_point(group, point):
    if not 0 <= point < group.degree:
        raise errors.RangeError(f"point {point} out of range for degree {group.degree}")


def point_stabilizer(group, alpha):
    _check_point(group, alpha)
    return pointwise_stabilizer(group, [alpha])


def pointwise_stabilizer(group, points):
    points = list(dict.fromkeys(int(p) for p in points))
    for point in points:
        _check_point(group, point)
    chain = group.chain
    if not points:
        return group
    if chain.base[:len(points)] != points:
        chain = BSGS.build(group.degree, group.generators, known_order=chain.order(), initial_base=points)
    return PermGroup.from_chain(chain.substructure(len(points)))


def is_subgroup(group, sub):
    return all(membership(group, g) for g in sub.generators)


def is_normal(group, sub):
    if not is_subgroup(group, sub):
        return False
    return all(membership(sub, conjugate(x, g)) for x in sub.generators for g in group.generators)


def normal_closure(group, elements, stop_order=None):
    '''
    Smallest normal subgroup of `group` containing `elements`.
    With stop_order set, returns as soon as the closure reaches that order.
    '''
    gens = []
    for x in elements:
        if not membership(group, x):
            raise errors.NotInGroupError(f"{x!r} is not an element of the group")
        if not x.is_identity():
            gens.append(x)
    chain = BSGS.build(group.degree, gens)
    queue = list(gens)
    while queue:
        x = queue.pop()
        for g in group.generators:
            c = conjugate(x, g)
            if chain.contains(c):
                continue
            chain.add_generator(c)
            gens.append(c)
            queue.append(c)
            if stop_order is not None and chain.order() >= stop_order:
                return PermGroup.from_chain(chain)
    return PermGroup.from_chain(chain)


def derived_subgroup(group):
    gens = group.generators
    commutators = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            c = commutator(gens[i], gens[j])
            if not c.is_identity():
                commutators.append(c)
    return normal_closure(group, commutators)


def is_abelian(group):
    gens = group.generators
    return all((gens[i] * gens[j]) == (gens[j] * gens[i]) for i in range(len(gens)) for j in range(i + 1, len(gens)))


def omega_order(group):
    return sum(utils.omega(length) for length in group.chain.orbit_lengths())


def random_element(group):
    if group._sampler is None:
        group._sampler = RandomSampler(group.degree, group.generator_arrays(), seed=config.DEFAULT_SEED)
    return group._sampler.next()


def moved_points(group):
    if not group.generators:
        return np.empty(0, dtype=POINT_DTYPE)
    ident = identity_array(group.degree)
    moved = np.zeros(group.degree, dtype=bool)
    for g in group.generators:
        moved |= g.images != ident
    return np.nonzero(moved)[0]


def on_support(group):
    '''
    The faithful restriction of the group to its moved points, relabelled 0..s-1,
    together with the moved points. A trivial group becomes the trivial group on one point.
    '''
    points = moved_points(group)
    if points.size == group.degree:
        return group, np.arange(group.degree)
    if points.size == 0:
        return PermGroup.trivial(1, name=group.name), points
    position = np.full(group.degree, -1, dtype=POINT_DTYPE)
    position[points] = np.arange(points.size, dtype=POINT_DTYPE)
    gens = [Permutation._wrap(position[g.images[points]]) for g in group.generators]
    restricted = PermGroup(points.size, gens, name=group.name)
    if group.has_chain():
        restricted.set_chain(group.chain.relabel(points))
    return restricted, points
