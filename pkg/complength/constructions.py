from dataclasses import dataclass
import logging
import math
import re
from typing import Tuple

import numpy as np

from complength import actions, config, errors, perms
from complength.linear import fields, matrices
from complength.perms import Permutation, PermGroup

logger = logging.getLogger(__name__)


def _check_cap(degree, degree_cap=None):
    cap = config.DEGREE_CAP if degree_cap is None else degree_cap
    if degree > cap:
        raise errors.DegreeCapExceeded(degree, cap)


def _check_range(family, k, low=0):
    high = config.EXPLICIT_RANGES[family]
    if not low <= k <= high:
        raise errors.RangeError(f"{family}({k}) is only built explicitly for {low} <= k <= {high}")


def symmetric(n):
    if n < 1:
        raise errors.RangeError(f"symmetric group needs n >= 1, got {n}")
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [range(n)]))
    if n >= 3:
        gens.append(Permutation.from_cycles(n, [(0, 1)]))
    return PermGroup(n, gens, name=f"S{n}", known_order=math.factorial(n))


def alternating(n):
    if n < 1:
        raise errors.RangeError(f"alternating group needs n >= 1, got {n}")
    gens = []
    if n >= 3:
        gens.append(Permutation.from_cycles(n, [(0, 1, 2)]))
    if n >= 4:
        # an (n-1)- or n-cycle, whichever is even
        cycle = range(n) if n % 2 else range(1, n)
        gens.append(Permutation.from_cycles(n, [cycle]))
    return PermGroup(n, gens, name=f"A{n}", known_order=max(1, math.factorial(n) // 2))


def cyclic(n):
    if n < 1:
        raise errors.RangeError(f"cyclic group needs n >= 1, got {n}")
    gens = [Permutation.from_cycles(n, [range(n)])] if n >= 2 else []
    return PermGroup(n, gens, name=f"C{n}", known_order=n)


def dihedral(n):
    '''
    The symmetries of a regular n-gon, order 2n.
    '''
    if n < 3:
        raise errors.RangeError(f"dihedral group needs n >= 3, got {n}")
    rotation = Permutation.from_cycles(n, [range(n)])
    reflection = Permutation((-np.arange(n)) % n)
    return PermGroup(n, [rotation, reflection], name=f"D{2 * n}", known_order=2 * n)


def direct_product(parts):
    '''
    The parts acting on consecutive disjoint point ranges.
    '''
    parts = list(parts)
    if not parts:
        raise ValueError('direct product of no groups')
    if len(parts) == 1:
        return parts[0]
    degree = sum(p.degree for p in parts)
    _check_cap(degree)
    gens = []
    offset = 0
    for part in parts:
        for g in part.generators:
            images = np.arange(degree, dtype=perms.POINT_DTYPE)
            images[offset:offset + part.degree] = g.images + offset
            gens.append(Permutation._wrap(images))
        offset += part.degree
    order = math.prod(p.order() for p in parts)
    return PermGroup(degree, gens, known_order=order)


def _top_orbit_starts(top):
    return [orbit[0] for orbit in perms.orbits(top)]


def wreath_imprimitive(bottom, top, degree_cap=None):
    '''
    bottom wr top on m*b points; point i + m*j is point i of block j.
    '''
    m, b = bottom.degree, top.degree
    degree = m * b
    _check_cap(degree, degree_cap)
    if not perms.is_transitive(top):
        logger.warning('wreath product with an intransitive top group of degree %d', b)
    points = np.arange(degree, dtype=perms.POINT_DTYPE)
    gens = []
    for j in _top_orbit_starts(top):
        for g in bottom.generators:
            images = points.copy()
            images[m * j:m * (j + 1)] = g.images + m * j
            gens.append(Permutation._wrap(images))
    within, block = points % m, points // m
    for t in top.generators:
        gens.append(Permutation._wrap((within + m * t.images[block]).astype(perms.POINT_DTYPE)))
    order = bottom.order() ** b * top.order()
    return PermGroup(degree, gens, known_order=order)


class ProductCoordinates:
    '''
    Points of Delta^b as mixed-radix numbers, coordinate 0 least significant.
    '''

    def __init__(self, m, b, degree_cap=None):
        degree = m ** b
        _check_cap(degree, degree_cap)
        self.m = m
        self.b = b
        self.degree = degree
        self.weights = m ** np.arange(b, dtype=np.int64)
        self.coords = (np.arange(degree, dtype=np.int64)[:, None] // self.weights[None, :]) % m

    def encode(self, coords):
        return (coords @ self.weights).astype(perms.POINT_DTYPE)

    def point(self, coords):
        return int(np.asarray(coords, dtype=np.int64) @ self.weights)

    def on_coordinate(self, images, i):
        new = self.coords.copy()
        new[:, i] = np.asarray(images)[self.coords[:, i]]
        return Permutation._wrap(self.encode(new))

    def diagonal(self, images, coordinates=None):
        '''
        The same permutation applied in each of the given coordinates (all by default).
        '''
        new = self.coords.copy()
        columns = range(self.b) if coordinates is None else coordinates
        for i in columns:
            new[:, i] = np.asarray(images)[self.coords[:, i]]
        return Permutation._wrap(self.encode(new))

    def permute_coordinates(self, top_images):
        # coordinate i moves to position top_images[i]
        return Permutation._wrap(self.encode(self.coords[:, perms.invert_array(np.asarray(top_images))]))


def wreath_product_action(bottom, top, degree_cap=None):
    m, b = bottom.degree, top.degree
    if m < 2:
        raise errors.RangeError('product action needs a bottom group of degree at least 2')
    if b == 1:
        return bottom
    _check_cap(m ** b, degree_cap)
    coords = ProductCoordinates(m, b, degree_cap)
    gens = []
    for i in _top_orbit_starts(top):
        for g in bottom.generators:
            gens.append(coords.on_coordinate(g.images, i))
    for t in top.generators:
        gens.append(coords.permute_coordinates(t.images))
    order = bottom.order() ** b * top.order()
    return PermGroup(coords.degree, gens, known_order=order)


def _order_T(k):
    return 24 ** ((4 ** k - 1) // 3)


def build_T(k):
    '''
    T_0 is trivial on one point and T_k = S4 wr T_(k-1) on 4^k points.
    '''
    _check_range('T', k)
    group = PermGroup.trivial(1)
    s4 = symmetric(4)
    for _ in range(k):
        group = wreath_imprimitive(s4, group)
    group.name = f"T({k})"
    return group


def build_P(k):
    _check_range('P', k)
    group = wreath_product_action(symmetric(4), build_T(k))
    group.name = f"P({k})"
    return group


def gl_on_nonzero_vectors(d, q, degree_cap=None):
    group = matrices.general_linear_group(d, q)
    shadow = matrices.matgroup_to_perm(group, degree_cap=degree_cap, known_order=group.known_order)
    shadow.name = f"GLperm({d},{q})"
    return shadow


def _coordinate_words(top):
    '''
    For every coordinate i a word in the top generators whose product sends 0 to i.
    '''
    words = {0: []}
    frontier = [0]
    gen_lists = [t.tolist() for t in top.generators]
    while frontier:
        nxt = []
        for i in frontier:
            for s, images in enumerate(gen_lists):
                j = images[i]
                if j not in words:
                    words[j] = words[i] + [s]
                    nxt.append(j)
        frontier = nxt
    return words


def _evaluate_word(word, gens, degree):
    result = Permutation.identity(degree)
    for s in word:
        result = result * gens[s]
    return result


@dataclass
class SemiprimitiveExample:
    k: int
    # GL(2,3) wr T_k in product action on 8^(4^k) points
    base_group: PermGroup
    centre: PermGroup
    normal: PermGroup
    image: PermGroup
    # the image of the centre, of order 2
    witness: PermGroup
    kernel_order: int


def semiprimitive_example_parts(k):
    _check_range('sp_ex', k)
    field = fields.get_field(3)
    gl23 = gl_on_nonzero_vectors(2, 3)
    top = build_T(k)
    b = top.degree
    coords = ProductCoordinates(gl23.degree, b)
    gens = [coords.on_coordinate(g.images, 0) for g in gl23.generators]
    gens += [coords.permute_coordinates(t.images) for t in top.generators]
    base_group = PermGroup(coords.degree, gens, name=f"GL(2,3) wr T({k})", known_order=48 ** b * top.order())

    minus_one = matrices.matrix_permutation(matrices.Mat(field, [[2, 0], [0, 2]]))
    central = [coords.on_coordinate(minus_one.images, i) for i in range(b)]
    centre = PermGroup(coords.degree, central, known_order=2 ** b)
    # even products of the central involutions: coordinates summing to zero
    normal = PermGroup(coords.degree, [central[i] * central[i + 1] for i in range(b - 1)], known_order=2 ** (b - 1))

    split = actions.quotient_action_on_orbits(base_group, normal)
    image = split.image
    image.name = f"sp_ex({k})"
    induced = actions.orbit_quotient_map(normal)(central[0])
    witness = PermGroup(image.degree, [induced], known_order=2)
    kernel_order = split.kernel_order()
    logger.info('semiprimitive example k=%d: degree %d, order %d, kernel %d', k, image.degree, image.order(), kernel_order)
    return SemiprimitiveExample(k, base_group, centre, normal, image, witness, kernel_order)


def build_semiprimitive_example(k):
    return semiprimitive_example_parts(k).image


@dataclass
class QuasiprimitiveExample:
    k: int
    # S5 wr T_k in product action on 5^(4^k) points
    ambient: PermGroup
    group: PermGroup
    socle: PermGroup
    block_stabilizer: PermGroup
    subgroup: PermGroup
    image: PermGroup
    socle_image: PermGroup
    kernel_order: int


def quasiprimitive_example_parts(k):
    '''
    G = A5^b . M . T_k with b = 4^k, M a diagonal (0 1) in each minimal block of four
    coordinates, acting on the cosets of H = V4^b . M_1 . T_k where V4 lives on {0,1,2,3}
    and M_1 is the diagonal S3 on {0,1,2}.
    '''
    _check_range('qp_ex', k, low=1)
    top = build_T(k)
    b = top.degree
    blocks = [range(4 * j, 4 * j + 4) for j in range(b // 4)]
    coords = ProductCoordinates(5, b)
    top_gens = [coords.permute_coordinates(t.images) for t in top.generators]

    s5 = symmetric(5)
    ambient_gens = [coords.on_coordinate(g.images, 0) for g in s5.generators] + top_gens
    ambient = PermGroup(coords.degree, ambient_gens, name=f"S5 wr T({k})", known_order=120 ** b * top.order())

    a5 = alternating(5)
    socle_gens = [coords.on_coordinate(g.images, 0) for g in a5.generators]
    swap = Permutation.from_cycles(5, [(0, 1)]).images
    m_gens = [coords.diagonal(swap, block) for block in blocks]
    group_order = 60 ** b * 2 ** len(blocks) * top.order()
    group = PermGroup(coords.degree, socle_gens + m_gens + top_gens, name=f"qp_ex({k}) on Delta", known_order=group_order)

    words = _coordinate_words(top)
    socle_all = [perms.conjugate(g, _evaluate_word(words[i], top_gens, coords.degree)) for i in range(b) for g in socle_gens]
    socle = PermGroup(coords.degree, socle_all, name='A5^b', known_order=60 ** b)

    klein = [Permutation.from_cycles(5, [(0, 1), (2, 3)]).images, Permutation.from_cycles(5, [(0, 2), (1, 3)]).images]
    three_cycle = Permutation.from_cycles(5, [(0, 1, 2)]).images
    sub_gens = [coords.on_coordinate(v, 0) for v in klein]
    sub_gens += [coords.diagonal(three_cycle, block) for block in blocks] + m_gens + top_gens
    sub_order = 4 ** b * 6 ** len(blocks) * top.order()
    subgroup = PermGroup(coords.degree, sub_gens, name='H', known_order=sub_order)

    delta = coords.point([4] * b)
    block_stabilizer = perms.point_stabilizer(group, delta)

    split = actions.coset_action(group, subgroup)
    image = split.image
    image.name = f"qp_ex({k})"
    image_top = image.generators[len(socle_gens) + len(m_gens):]
    image_socle = [perms.conjugate(g, _evaluate_word(words[i], image_top, image.degree))
                   for i in range(b) for g in image.generators[:len(socle_gens)]]
    socle_image = PermGroup(image.degree, image_socle, known_order=60 ** b)
    kernel_order = split.kernel_order()
    logger.info('quasiprimitive example k=%d: degree %d, order %d, kernel %d', k, image.degree, image.order(), kernel_order)
    return QuasiprimitiveExample(k, ambient, group, socle, block_stabilizer, subgroup, image, socle_image, kernel_order)


def build_quasiprimitive_example(k):
    return quasiprimitive_example_parts(k).image


# spec grammar: symbol -> (kind, number of integer parameters or None for nested specs)
SYMBOLS = {
    'S': ('symmetric', 1),
    'A': ('alternating', 1),
    'C': ('cyclic', 1),
    'D': ('dihedral', 1),
    'T': ('T', 1),
    'P': ('P', 1),
    'L': ('L', 1),
    'GLperm': ('gl_on_nonzero_vectors', 2),
    'GL1pow': ('gl1_power', 2),
    'sp_ex': ('semiprimitive_example', 1),
    'qp_ex': ('quasiprimitive_example', 1),
    'wr': ('wreath_imprimitive', None),
    'wrP': ('wreath_product_action', None),
    'directX': ('direct_product', None),
}
KIND_SYMBOLS = {kind: symbol for symbol, (kind, _) in SYMBOLS.items()}
LINEAR_KINDS = {'L', 'gl1_power'}

_TOKEN = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))')


def _tokenize(text):
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        number, name, punct = match.groups()
        if number is not None:
            tokens.append(('int', int(number)))
        elif name is not None:
            tokens.append(('name', name))
        else:
            tokens.append(('punct', punct))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.position = 0

    def error(self, message):
        return errors.SpecParseError(f"{message} in {self.text!r}")

    def peek(self):
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return (None, None)

    def take(self, kind, value=None):
        token = self.peek()
        if token[0] != kind or (value is not None and token[1] != value):
            expected = value if value is not None else kind
            raise self.error(f"expected {expected!r}, found {token[1]!r}")
        self.position += 1
        return token[1]

    def spec(self):
        symbol = self.take('name')
        if symbol not in SYMBOLS:
            raise self.error(f"unknown construction {symbol!r}")
        kind, arity = SYMBOLS[symbol]
        self.take('punct', '(')
        parameters, children = [], []
        if arity is None:
            children.append(self.spec())
            while self.peek() == ('punct', ','):
                self.take('punct', ',')
                children.append(self.spec())
            if kind != 'direct_product' and len(children) != 2:
                raise self.error(f"{symbol} takes two groups")
        else:
            parameters.append(self.take('int'))
            while self.peek() == ('punct', ','):
                self.take('punct', ',')
                parameters.append(self.take('int'))
            if len(parameters) != arity:
                raise self.error(f"{symbol} takes {arity} integer parameter(s)")
        self.take('punct', ')')
        return ConstructionSpec(kind, tuple(parameters), tuple(children))

    def parse(self):
        spec = self.spec()
        if self.position != len(self.tokens):
            raise self.error('trailing input')
        return spec


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    parameters: Tuple[int, ...] = ()
    children: Tuple['ConstructionSpec', ...] = ()

    @classmethod
    def parse(cls, text):
        return _Parser(text).parse()

    def __str__(self):
        symbol = KIND_SYMBOLS[self.kind]
        if self.children:
            return f"{symbol}({','.join(str(c) for c in self.children)})"
        return f"{symbol}({','.join(str(p) for p in self.parameters)})"

    def is_linear(self):
        return self.kind in LINEAR_KINDS

    def degree(self):
        '''
        Degree of the permutation group this spec builds, without building it.
        '''
        kind, params = self.kind, self.parameters
        if kind in ('symmetric', 'alternating', 'cyclic', 'dihedral'):
            return params[0]
        if kind == 'T':
            return 4 ** params[0]
        if kind == 'P':
            return 4 ** 4 ** params[0]
        if kind == 'L':
            return 2 ** 2 ** (2 * params[0] + 1) - 1
        if kind in ('gl_on_nonzero_vectors', 'gl1_power'):
            d, q = params
            return q ** d - 1
        if kind == 'semiprimitive_example':
            return 2 * 4 ** 4 ** params[0]
        if kind == 'quasiprimitive_example':
            k = params[0]
            if k < 1:
                raise errors.RangeError('the quasiprimitive family starts at k = 1')
            return 5 ** 4 ** k * 3 ** (3 * 4 ** (k - 1))
        if kind == 'wreath_imprimitive':
            return self.children[0].degree() * self.children[1].degree()
        if kind == 'wreath_product_action':
            return self.children[0].degree() ** self.children[1].degree()
        if kind == 'direct_product':
            return sum(c.degree() for c in self.children)
        raise errors.SpecParseError(f"unknown construction kind {kind!r}")

    def order(self):
        '''
        Order of the group this spec builds, from closed forms.
        '''
        kind, params = self.kind, self.parameters
        if kind == 'symmetric':
            return math.factorial(params[0])
        if kind == 'alternating':
            return max(1, math.factorial(params[0]) // 2)
        if kind == 'cyclic':
            return params[0]
        if kind == 'dihedral':
            return 2 * params[0]
        if kind == 'T':
            return _order_T(params[0])
        if kind == 'P':
            return _order_T(params[0] + 1)
        if kind == 'L':
            return 6 ** 4 ** params[0] * _order_T(params[0])
        if kind == 'gl_on_nonzero_vectors':
            d, q = params
            return math.prod(q ** d - q ** i for i in range(d))
        if kind == 'gl1_power':
            d, q = params
            return (q - 1) ** d
        if kind == 'semiprimitive_example':
            b = 4 ** params[0]
            return 48 ** b * _order_T(params[0]) // 2 ** (b - 1)
        if kind == 'quasiprimitive_example':
            k = params[0]
            if k < 1:
                raise errors.RangeError('the quasiprimitive family starts at k = 1')
            b = 4 ** k
            return 60 ** b * 2 ** (b // 4) * _order_T(k)
        if kind in ('wreath_imprimitive', 'wreath_product_action'):
            bottom, top = self.children
            return bottom.order() ** top.degree() * top.order()
        if kind == 'direct_product':
            return math.prod(c.order() for c in self.children)
        raise errors.SpecParseError(f"unknown construction kind {kind!r}")

    def orbit_count(self):
        '''
        Number of orbits on points, or None where no closed form is kept.
        '''
        kind = self.kind
        if kind == 'direct_product':
            counts = [c.orbit_count() for c in self.children]
            return None if None in counts else sum(counts)
        if kind == 'wreath_imprimitive':
            bottom, top = (c.orbit_count() for c in self.children)
            return None if bottom is None or top is None else bottom * top
        if kind == 'wreath_product_action':
            counts = [c.orbit_count() for c in self.children]
            return 1 if counts == [1, 1] else None
        if kind == 'gl1_power':
            return 2 ** self.parameters[0] - 1
        if kind == 'L':
            return None
        if kind == 'alternating' and self.parameters[0] <= 2:
            # A(1) and A(2) are trivial
            return self.parameters[0]
        return 1

    def build(self, degree_cap=None):
        '''
        A PermGroup, or a MatGroup for the linear families.
        '''
        kind, params = self.kind, self.parameters
        if kind == 'L':
            return matrices.build_L(params[0])
        if kind == 'gl1_power':
            return matrices.gl1_power(*params)
        return self.build_permutation_group(degree_cap=degree_cap)

    def build_permutation_group(self, degree_cap=None):
        _check_cap(self.degree(), degree_cap)
        kind, params = self.kind, self.parameters
        if kind in LINEAR_KINDS:
            group = self.build().permutation_shadow(degree_cap=degree_cap)
        elif kind == 'symmetric':
            group = symmetric(params[0])
        elif kind == 'alternating':
            group = alternating(params[0])
        elif kind == 'cyclic':
            group = cyclic(params[0])
        elif kind == 'dihedral':
            group = dihedral(params[0])
        elif kind == 'T':
            group = build_T(params[0])
        elif kind == 'P':
            group = build_P(params[0])
        elif kind == 'gl_on_nonzero_vectors':
            group = gl_on_nonzero_vectors(*params, degree_cap=degree_cap)
        elif kind == 'semiprimitive_example':
            group = build_semiprimitive_example(params[0])
        elif kind == 'quasiprimitive_example':
            group = build_quasiprimitive_example(params[0])
        elif kind == 'wreath_imprimitive':
            bottom, top = (c.build_permutation_group(degree_cap) for c in self.children)
            group = wreath_imprimitive(bottom, top, degree_cap)
        elif kind == 'wreath_product_action':
            bottom, top = (c.build_permutation_group(degree_cap) for c in self.children)
            group = wreath_product_action(bottom, top, degree_cap)
        elif kind == 'direct_product':
            group = direct_product([c.build_permutation_group(degree_cap) for c in self.children])
        else:
            raise errors.SpecParseError(f"unknown construction kind {kind!r}")
        group.name = str(self)
        return group


def parse_spec(text):
    return ConstructionSpec.parse(text)
