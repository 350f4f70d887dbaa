import logging
import math

import numpy as np

from complength import config, errors
from complength.linear import fields
from complength.linear.fields import ELEMENT_DTYPE
from complength.perms import Permutation, PermGroup

logger = logging.getLogger(__name__)

WORD_BITS = 64


def pack_gf2_rows(bits):
    '''
    Pack a 0/1 matrix into little-endian uint64 words, bit j of row i at word j // 64.
    '''
    bits = np.asarray(bits, dtype=np.uint8)
    rows, cols = bits.shape
    words = max(1, (cols + WORD_BITS - 1) // WORD_BITS)
    padded = np.zeros((rows, words * WORD_BITS), dtype=np.uint8)
    padded[:, :cols] = bits
    packed = np.packbits(padded, axis=1, bitorder='little')
    return np.ascontiguousarray(packed).view(np.dtype('<u8'))


def unpack_gf2_rows(packed, cols):
    as_bytes = np.ascontiguousarray(packed, dtype=np.dtype('<u8')).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder='little')[:, :cols].astype(ELEMENT_DTYPE)


def gf2_matmul(a_bits, b_packed):
    '''
    Row i of the product is the XOR of the packed rows of b selected by row i of a.
    '''
    selected = np.where(a_bits.astype(bool)[:, :, None], b_packed[None, :, :], np.uint64(0))
    return np.bitwise_xor.reduce(selected, axis=1)


def gf2_rank(packed, cols):
    rows = np.array(packed, copy=True)
    rank = 0
    for col in range(cols):
        if rank == rows.shape[0]:
            break
        word, bit = divmod(col, WORD_BITS)
        mask = np.uint64(1) << np.uint64(bit)
        below = np.nonzero(rows[rank:, word] & mask)[0]
        if below.size == 0:
            continue
        pivot = rank + int(below[0])
        if pivot != rank:
            rows[[rank, pivot]] = rows[[pivot, rank]]
        hits = np.nonzero(rows[:, word] & mask)[0]
        hits = hits[hits != rank]
        rows[hits] ^= rows[rank]
        rank += 1
    return rank


def row_reduce(field, matrix):
    '''
    Reduced row echelon form over the field and the pivot columns.
    '''
    reduced = np.array(matrix, dtype=ELEMENT_DTYPE, copy=True)
    if reduced.ndim != 2:
        raise ValueError('row_reduce needs a two dimensional array')
    pivots = []
    rank = 0
    rows, cols = reduced.shape
    for col in range(cols):
        if rank == rows:
            break
        below = np.nonzero(reduced[rank:, col])[0]
        if below.size == 0:
            continue
        pivot = rank + int(below[0])
        if pivot != rank:
            reduced[[rank, pivot]] = reduced[[pivot, rank]]
        reduced[rank] = field.mul(field.inv(reduced[rank, col]), reduced[rank])
        others = np.nonzero(reduced[:, col])[0]
        others = others[others != rank]
        if others.size:
            factors = reduced[others, col][:, None]
            reduced[others] = field.sub(reduced[others], field.mul(factors, reduced[rank][None, :]))
        pivots.append(col)
        rank += 1
    return reduced[:rank], pivots


def rank(field, matrix):
    if field.q == 2:
        matrix = np.asarray(matrix)
        return gf2_rank(pack_gf2_rows(matrix), matrix.shape[1])
    return len(row_reduce(field, matrix)[1])


def nullspace(field, matrix):
    '''
    Basis (as rows) of the right nullspace {x : matrix @ x == 0}.
    '''
    matrix = np.asarray(matrix, dtype=ELEMENT_DTYPE)
    cols = matrix.shape[1]
    reduced, pivots = row_reduce(field, matrix)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=ELEMENT_DTYPE)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(pivots):
            basis[i, p] = field.neg(reduced[r, f])
    return basis


def left_nullspace(field, matrix):
    '''
    Basis of {v : v @ matrix == 0}.
    '''
    return nullspace(field, np.asarray(matrix).T)


def solve(field, matrix, rhs):
    '''
    One solution x of matrix @ x == rhs, or None.
    '''
    matrix = np.asarray(matrix, dtype=ELEMENT_DTYPE)
    augmented = np.concatenate([matrix, np.asarray(rhs, dtype=ELEMENT_DTYPE)[:, None]], axis=1)
    reduced, pivots = row_reduce(field, augmented)
    cols = matrix.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=ELEMENT_DTYPE)
    for r, p in enumerate(pivots):
        x[p] = reduced[r, cols]
    return x


class Mat:
    '''
    A square matrix over a small finite field, acting on row vectors from the right.
    Over GF(2) the rows are also kept bit-packed for multiplication.
    '''

    def __init__(self, field, entries):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError('a matrix must be square and nonempty')
        if arr.min() < 0 or arr.max() >= field.q:
            raise ValueError(f"matrix entries must lie in 0..{field.q - 1}")
        arr = arr.astype(ELEMENT_DTYPE)
        arr.setflags(write=False)
        self.field = field
        self.entries = arr
        self._packed = None

    @classmethod
    def identity(cls, field, d):
        return cls(field, np.eye(d, dtype=np.int64))

    @classmethod
    def permutation_matrix(cls, field, images):
        '''
        The matrix sending basis vector e_i to e_images[i].
        '''
        images = np.asarray(images)
        arr = np.zeros((images.size, images.size), dtype=np.int64)
        arr[np.arange(images.size), images] = 1
        return cls(field, arr)

    @property
    def d(self):
        return self.entries.shape[0]

    def packed(self):
        if self.field.q != 2:
            raise ValueError('bit-packed rows exist only over GF(2)')
        if self._packed is None:
            self._packed = pack_gf2_rows(self.entries)
        return self._packed

    def __mul__(self, other):
        if self.field != other.field or self.d != other.d:
            raise errors.DegreeMismatchError('matrices over different fields or dimensions')
        if self.field.q == 2:
            product = unpack_gf2_rows(gf2_matmul(self.entries, other.packed()), self.d)
        else:
            product = self.field.matmul(self.entries, other.entries)
        return Mat(self.field, product)

    def transpose(self):
        return Mat(self.field, self.entries.T)

    def rank(self):
        return rank(self.field, self.entries)

    def is_invertible(self):
        return self.rank() == self.d

    def is_identity(self):
        return np.array_equal(self.entries, np.eye(self.d, dtype=ELEMENT_DTYPE))

    def act(self, vectors):
        '''
        Images v @ self of row vectors.
        '''
        vectors = np.atleast_2d(np.asarray(vectors, dtype=ELEMENT_DTYPE))
        return self.field.matmul(vectors, self.entries)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.field == other.field and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.field.q, self.entries.tobytes()))

    def __repr__(self):
        return f"Mat(GF({self.field.q}), {self.entries.tolist()})"

    def __getstate__(self):
        return {'q': self.field.q, 'entries': self.entries}

    def __setstate__(self, state):
        self.field = fields.get_field(state['q'])
        self.entries = state['entries']
        self._packed = None


class MatGroup:
    '''
    Matrix group over GF(q) in dimension d, generated by invertible matrices.
    '''

    def __init__(self, field, d, generators=(), name=None, known_order=None):
        gens = []
        for g in generators:
            if not isinstance(g, Mat):
                g = Mat(field, g)
            if g.field != field or g.d != d:
                raise errors.DegreeMismatchError(f"generator is not a {d}x{d} matrix over GF({field.q})")
            if not g.is_invertible():
                raise ValueError('matrix group generators must be invertible')
            gens.append(g)
        self.field = field
        self.d = d
        self.generators = tuple(gens)
        self.name = name
        self.known_order = known_order
        self._shadow = None

    @property
    def q(self):
        return self.field.q

    def permutation_shadow(self, degree_cap=None):
        if self._shadow is None:
            self._shadow = matgroup_to_perm(self, degree_cap=degree_cap, known_order=self.known_order)
        return self._shadow

    def order(self):
        return self.permutation_shadow().order()

    def transposed(self):
        return MatGroup(self.field, self.d, [g.transpose() for g in self.generators])

    def __repr__(self):
        label = f" {self.name}" if self.name else ''
        return f"<MatGroup{label} GF({self.q}) d={self.d} gens={len(self.generators)}>"


def vector_table(field, d):
    '''
    All vectors of GF(q)^d, vector i having the base-q digits of i as coordinates
    (coordinate 0 least significant).
    '''
    q = field.q
    indices = np.arange(q ** d, dtype=np.int64)
    return ((indices[:, None] // (q ** np.arange(d, dtype=np.int64))[None, :]) % q).astype(ELEMENT_DTYPE)


def vector_index(field, vectors):
    weights = field.q ** np.arange(vectors.shape[1], dtype=np.int64)
    return vectors.astype(np.int64) @ weights


def matrix_permutation(matrix, vectors=None):
    '''
    The permutation of nonzero vectors induced by an invertible matrix.
    '''
    if vectors is None:
        vectors = vector_table(matrix.field, matrix.d)[1:]
    return Permutation(vector_index(matrix.field, matrix.act(vectors)) - 1)


def matgroup_to_perm(group, degree_cap=None, known_order=None):
    '''
    The action on nonzero vectors; vector index i (as in vector_table) is point i - 1.
    '''
    cap = config.DEGREE_CAP if degree_cap is None else degree_cap
    degree = group.q ** group.d - 1
    if degree > cap:
        raise errors.DegreeCapExceeded(degree, cap)
    vectors = vector_table(group.field, group.d)[1:]
    gens = [matrix_permutation(g, vectors) for g in group.generators]
    return PermGroup(degree, gens, name=group.name, known_order=known_order)


def general_linear_generators(field, d):
    '''
    diag(w, 1, ..., 1), the transvection I + E_01, the cyclic shift of the basis and the
    swap of e_0, e_1; together they generate GL(d, q). Identity matrices are left out.
    '''
    q = field.q
    gens = []
    if q > 2:
        diag = np.eye(d, dtype=np.int64)
        diag[0, 0] = field.primitive_element
        gens.append(Mat(field, diag))
    if d >= 2:
        transvection = np.eye(d, dtype=np.int64)
        transvection[0, 1] = 1
        gens.append(Mat(field, transvection))
        swap = list(range(d))
        swap[0], swap[1] = 1, 0
        gens.append(Mat.permutation_matrix(field, swap))
        if d > 2:
            gens.append(Mat.permutation_matrix(field, [(i + 1) % d for i in range(d)]))
    return gens


def general_linear_group(d, q):
    field = fields.get_field(q)
    order = math.prod(q ** d - q ** i for i in range(d))
    return MatGroup(field, d, general_linear_generators(field, d), name=f"GL({d},{q})", known_order=order)


def gl1_power(d, q):
    '''
    GL(1, q)^d as block-diagonal scalars in dimension d.
    '''
    field = fields.get_field(q)
    gens = []
    if q > 2:
        for i in range(d):
            diag = np.eye(d, dtype=np.int64)
            diag[i, i] = field.primitive_element
            gens.append(Mat(field, diag))
    return MatGroup(field, d, gens, name=f"GL(1,{q})^{d}", known_order=(q - 1) ** d)


def linear_wreath(bottom, top, name=None):
    '''
    bottom wr top acting imprimitively on top.degree blocks of dimension bottom.d.
    Bottom generators act in the first block of every top orbit.
    '''
    field, m = bottom.field, bottom.d
    b = top.degree
    d = m * b
    gens = []
    block_starts = sorted({orbit[0] for orbit in _orbits_of(top)})
    for start in block_starts:
        for g in bottom.generators:
            entries = np.eye(d, dtype=np.int64)
            entries[start * m:(start + 1) * m, start * m:(start + 1) * m] = g.entries
            gens.append(Mat(field, entries))
    for t in top.generators:
        if t.is_identity():
            continue
        basis_images = (t.images[:, None] * m + np.arange(m)[None, :]).reshape(-1)
        gens.append(Mat.permutation_matrix(field, basis_images))
    order = None
    if bottom.known_order is not None:
        order = bottom.known_order ** b * top.order()
    return MatGroup(field, d, gens, name=name, known_order=order)


def _orbits_of(group):
    from complength import perms
    return perms.orbits(group)


def build_L(k):
    '''
    GL(2,2) wr T_k in dimension 2^(2k+1) over GF(2).
    '''
    if not 0 <= k <= config.EXPLICIT_RANGES['L']:
        raise errors.RangeError(f"L(k) is built for 0 <= k <= {config.EXPLICIT_RANGES['L']}, got {k}")
    from complength import constructions
    return linear_wreath(general_linear_group(2, 2), constructions.build_T(k), name=f"L({k})")
