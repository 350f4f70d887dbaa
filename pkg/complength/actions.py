from collections import deque
from dataclasses import dataclass
import logging

import numpy as np

from complength import config, errors, perms
from complength.perms import Permutation, PermGroup

logger = logging.getLogger(__name__)

TRIVIAL = 'trivial'


class UnionFind:
    '''
    Disjoint sets over the points 0..n-1, union by size with path halving.
    '''

    def __init__(self, size):
        self._parent = list(range(size))
        self._size = [1] * size

    def find(self, x):
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return True

    def labels(self):
        '''
        Class index per point, classes numbered by their smallest point.
        '''
        index = {}
        labels = np.empty(len(self._parent), dtype=perms.POINT_DTYPE)
        for x in range(len(self._parent)):
            root = self.find(x)
            if root not in index:
                index[root] = len(index)
            labels[x] = index[root]
        return labels


@dataclass(frozen=True)
class BlockSystem:
    block_of: np.ndarray
    num_blocks: int
    block_size: int

    @classmethod
    def from_labels(cls, labels):
        labels = np.asarray(labels, dtype=perms.POINT_DTYPE)
        counts = np.bincount(labels)
        if counts.min() != counts.max():
            raise ValueError('blocks of a block system must have equal size')
        return cls(labels, counts.size, int(counts[0]))

    @classmethod
    def from_blocks(cls, degree, blocks):
        labels = np.full(degree, -1, dtype=perms.POINT_DTYPE)
        for i, block in enumerate(blocks):
            labels[list(block)] = i
        if (labels < 0).any():
            raise ValueError('blocks do not cover every point')
        return cls.from_labels(labels)

    @property
    def degree(self):
        return self.block_of.size

    def blocks(self):
        order = np.argsort(self.block_of, kind='stable')
        return [sorted(part.tolist()) for part in np.split(order, self.num_blocks)]

    def block_containing(self, point):
        return np.nonzero(self.block_of == self.block_of[point])[0].tolist()


@dataclass
class ActionSplit:
    image: PermGroup
    kernel: PermGroup
    degree_of_image: int

    def kernel_order(self):
        return self.kernel.order()

    def is_faithful(self):
        return self.kernel.is_trivial() or self.kernel.order() == 1


def _check_cap(degree, degree_cap):
    cap = config.DEGREE_CAP if degree_cap is None else degree_cap
    if degree > cap:
        raise errors.DegreeCapExceeded(degree, cap)


def split_action(group, image_arrays, image_degree):
    '''
    Image and kernel of the homomorphism sending each generator of `group` to the
    matching permutation in `image_arrays`.

    Works on the diagonal group {(phi(g), g)} on image_degree + degree points,
    whose chain keeps image base points first; the image chain is its head and
    the kernel chain its tail.
    '''
    m = image_degree
    n = group.degree
    known_order = group.order()
    d_gens = [Permutation._wrap(np.concatenate([np.asarray(img, dtype=perms.POINT_DTYPE), g.images + m]))
              for img, g in zip(image_arrays, group.generators)]
    chain = perms.BSGS.build(m + n, d_gens, known_order=known_order, preferred=m)
    base = chain.base
    head = 0
    while head < len(base) and base[head] < m:
        head += 1
    if any(b < m for b in base[head:]):
        raise RuntimeError('image base points are not a prefix of the diagonal chain')

    image_gens = [Permutation._wrap(np.array(s.images[:m])) for s in chain.strong_gens]
    image_chain = perms.BSGS.from_strong_generators(m, base[:head], image_gens)

    kernel_gens = [Permutation._wrap(s.images[m:] - m) for s in chain.level_generators(head)]
    kernel_chain = perms.BSGS.from_strong_generators(n, [b - m for b in base[head:]], kernel_gens)

    image = PermGroup(m, [Permutation._wrap(np.array(img, dtype=perms.POINT_DTYPE)) for img in image_arrays])
    image.set_chain(image_chain)
    kernel = PermGroup.from_chain(kernel_chain)
    logger.debug('split of order %d: image %d on %d points, kernel %d', known_order, image_chain.order(), m, kernel_chain.order())
    return ActionSplit(image, kernel, m)


def restrict_to_orbit(group, orbit, degree_cap=None):
    points = sorted(set(int(p) for p in orbit))
    if not points:
        raise errors.NotInvariantError('orbit is empty')
    if points[0] < 0 or points[-1] >= group.degree:
        raise errors.RangeError('orbit points out of range')
    labels = perms.orbit_labels(group.degree, group.generator_arrays())
    points_arr = np.array(points)
    if (labels[points_arr] != labels[points_arr[0]]).any() or np.count_nonzero(labels == labels[points_arr[0]]) != len(points):
        raise errors.NotInvariantError('points do not form a single orbit of the group')
    _check_cap(len(points), degree_cap)
    position = np.full(group.degree, -1, dtype=perms.POINT_DTYPE)
    position[points_arr] = np.arange(len(points), dtype=perms.POINT_DTYPE)
    images = [position[g.images[points_arr]] for g in group.generators]
    return split_action(group, images, len(points))


def minimal_block_system(group, alpha, beta):
    '''
    The finest invariant partition in which alpha and beta share a block,
    or TRIVIAL when that block is every point.
    '''
    if not perms.is_transitive(group):
        raise errors.NotInvariantError('minimal block systems need a transitive group')
    if alpha == beta:
        raise ValueError('alpha and beta must differ')
    return _block_closure(group, alpha, beta)


def _block_closure(group, alpha, beta):
    uf = UnionFind(group.degree)
    uf.union(alpha, beta)
    queue = deque([(alpha, beta)])
    gen_lists = [g.tolist() for g in group.generators]
    while queue:
        x, y = queue.popleft()
        for images in gen_lists:
            gx, gy = images[x], images[y]
            if uf.union(gx, gy):
                queue.append((gx, gy))
    labels = uf.labels()
    if labels.max() == 0:
        return TRIVIAL
    return BlockSystem.from_labels(labels)


def find_minimal_block_system(group):
    '''
    A nontrivial block system with the smallest blocks, or None if the group is primitive.
    Blocks through 0 are unions of suborbits, so suborbits are tried smallest first.
    '''
    if group.degree <= 2:
        return None
    stabilizer = perms.point_stabilizer(group, 0)
    suborbits = [orb for orb in perms.orbits(stabilizer) if orb[0] != 0]
    suborbits.sort(key=lambda orb: (len(orb), orb[0]))
    best = None
    for orb in suborbits:
        if best is not None and len(orb) + 1 > best.block_size:
            break
        system = _block_closure(group, 0, orb[0])
        if system is TRIVIAL:
            continue
        if best is None or system.block_size < best.block_size:
            best = system
    return best


def is_primitive(group):
    if not perms.is_transitive(group):
        return False
    if group.degree <= 3:
        return True
    return find_minimal_block_system(group) is None


def induced_permutation(perm, block_of, representatives):
    '''
    The permutation of blocks induced by perm, from one representative per block.
    '''
    return block_of[perm.images[representatives]]


def _partition_images(group, block_of, num_blocks):
    # smallest point of every block
    representatives = np.zeros(num_blocks, dtype=np.int64)
    representatives[block_of[::-1]] = np.arange(block_of.size)[::-1]
    images = []
    for g in group.generators:
        block_perm = induced_permutation(g, block_of, representatives)
        if not np.array_equal(block_of[g.images], block_perm[block_of]):
            raise errors.NotInvariantError('partition is not invariant under the group')
        images.append(block_perm)
    return images, representatives


def block_action(group, system, degree_cap=None):
    if system.num_blocks < 2:
        raise errors.NotInvariantError('block action needs at least two blocks')
    if system.degree != group.degree:
        raise errors.DegreeMismatchError('block system and group have different degrees')
    _check_cap(system.num_blocks, degree_cap)
    images, _ = _partition_images(group, system.block_of, system.num_blocks)
    return split_action(group, images, system.num_blocks)


def quotient_action_on_orbits(group, normal, degree_cap=None):
    '''
    Action of `group` on the orbits of its normal subgroup `normal`.
    '''
    if normal.degree != group.degree:
        raise errors.DegreeMismatchError('normal subgroup and group have different degrees')
    if not perms.is_normal(group, normal):
        raise errors.NotNormalError('subgroup is not normal')
    labels = perms.orbit_labels(normal.degree, normal.generator_arrays())
    _, block_of = np.unique(labels, return_inverse=True)
    block_of = block_of.astype(perms.POINT_DTYPE)
    num_blocks = int(block_of.max()) + 1
    if num_blocks == 1:
        logger.warning('normal subgroup is transitive; the orbit quotient has one point')
    _check_cap(num_blocks, degree_cap)
    images, _ = _partition_images(group, block_of, num_blocks)
    return split_action(group, images, num_blocks)


def orbit_quotient_map(normal):
    '''
    Returns a function sending a permutation normalising `normal` to its
    action on the orbits of `normal`.
    '''
    labels = perms.orbit_labels(normal.degree, normal.generator_arrays())
    _, block_of = np.unique(labels, return_inverse=True)
    block_of = block_of.astype(perms.POINT_DTYPE)
    num_blocks = int(block_of.max()) + 1
    representatives = np.zeros(num_blocks, dtype=np.int64)
    representatives[block_of[::-1]] = np.arange(normal.degree)[::-1]

    def induced(perm):
        return Permutation(induced_permutation(perm, block_of, representatives))
    return induced


class _CanonicalCosets:
    '''
    Canonical right coset representatives for H inside G: the element of Hx whose
    images of H's base points are lexicographically least.
    '''

    def __init__(self, group, sub):
        sub_chain = sub.chain
        self._levels = [(lvl.base_point, np.array(lvl.transversal.orbit), lvl.transversal)
                        for lvl in sub_chain.levels if len(lvl.transversal) > 1]
        key_points = list(sub_chain.base)
        key_points += [b for b in group.chain.base if b not in key_points]
        self._key_points = np.array(key_points, dtype=np.int64)

    def canonical(self, x):
        for base_point, orbit, transversal in self._levels:
            beta = int(orbit[np.argmin(x[orbit])])
            if beta != base_point:
                x = x[transversal.rep(beta)]
        return x

    def key(self, x):
        return x[self._key_points].tobytes()


def coset_action(group, sub, degree_cap=None):
    '''
    Action of `group` on the right cosets of `sub`. The kernel of the returned
    split is the core of `sub`; callers that need a faithful action check it.
    '''
    if sub.degree != group.degree:
        raise errors.DegreeMismatchError('subgroup and group have different degrees')
    if not perms.is_subgroup(group, sub):
        raise errors.NotInGroupError('subgroup generators are not in the group')
    index = group.order() // sub.order()
    _check_cap(index, degree_cap)

    cosets = _CanonicalCosets(group, sub)
    start = cosets.canonical(perms.identity_array(group.degree))
    table = {cosets.key(start): 0}
    representatives = [start]
    gen_arrays = group.generator_arrays()
    images = [np.empty(index, dtype=perms.POINT_DTYPE) for _ in gen_arrays]
    position = 0
    while position < len(representatives):
        x = representatives[position]
        for s, g in enumerate(gen_arrays):
            y = cosets.canonical(g[x])
            key = cosets.key(y)
            target = table.get(key)
            if target is None:
                target = len(representatives)
                if target >= index:
                    raise RuntimeError('coset enumeration found more cosets than the index')
                table[key] = target
                representatives.append(y)
            images[s][position] = target
        position += 1
    if len(representatives) != index:
        raise RuntimeError(f"coset enumeration found {len(representatives)} cosets, expected {index}")
    logger.debug('enumerated %d cosets', index)

    split = split_action(group, images, index)
    kernel_order = split.kernel.order()
    if kernel_order != 1:
        logger.info('coset action has a kernel of order %d', kernel_order)
    return split


def is_semiregular(group):
    if group.is_trivial():
        return True
    size = group.order()
    return all(len(orb) == size for orb in perms.orbits(group))
