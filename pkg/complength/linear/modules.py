from dataclasses import dataclass, field as dc_field
import logging
import random
from typing import List, Optional

import numpy as np

from complength import config, errors
from complength.linear import matrices
from complength.linear.fields import ELEMENT_DTYPE
from complength.linear.matrices import Mat, MatGroup

logger = logging.getLogger(__name__)


class EchelonBasis:
    '''
    A subspace of GF(q)^d held as rows in reduced row echelon form.
    '''

    def __init__(self, field, d):
        self.field = field
        self.d = d
        self._rows = []
        self._pivots = []

    def __len__(self):
        return len(self._rows)

    @property
    def dim(self):
        return len(self._rows)

    @property
    def pivots(self):
        return list(self._pivots)

    def rows(self):
        if not self._rows:
            return np.zeros((0, self.d), dtype=ELEMENT_DTYPE)
        return np.array(self._rows, dtype=ELEMENT_DTYPE)

    def reduce(self, vector):
        field = self.field
        v = np.array(vector, dtype=ELEMENT_DTYPE)
        for row, pivot in zip(self._rows, self._pivots):
            c = v[pivot]
            if c:
                v = field.sub(v, field.mul(c, row))
        return v

    def contains(self, vector):
        return not self.reduce(vector).any()

    def add(self, vector):
        '''
        Adjoin a vector; returns the normalised new row, or None if it was already in the span.
        '''
        field = self.field
        v = self.reduce(vector)
        nonzero = np.nonzero(v)[0]
        if nonzero.size == 0:
            return None
        pivot = int(nonzero[0])
        v = field.mul(field.inv(v[pivot]), v)
        for i, row in enumerate(self._rows):
            c = row[pivot]
            if c:
                self._rows[i] = field.sub(row, field.mul(c, v))
        position = int(np.searchsorted(self._pivots, pivot))
        self._rows.insert(position, v)
        self._pivots.insert(position, pivot)
        return v


def _field_of(gens, field):
    if field is not None:
        return field
    if not gens:
        raise ValueError('spinning without generators needs an explicit field')
    return gens[0].field


def spin(seeds, gens, field=None):
    '''
    Echelonised basis (rows) of the smallest subspace containing the seeds and
    invariant under the generators.
    '''
    gens = list(gens)
    field = _field_of(gens, field)
    seeds = np.atleast_2d(np.asarray(seeds, dtype=ELEMENT_DTYPE))
    if not seeds.any():
        raise ValueError('spinning needs at least one nonzero seed vector')
    basis = EchelonBasis(field, seeds.shape[1])
    queue = [v for v in (basis.add(s) for s in seeds) if v is not None]
    while queue:
        w = queue.pop()
        for g in gens:
            new = basis.add(g.act(w)[0])
            if new is not None:
                queue.append(new)
        if basis.dim == basis.d:
            break
    return basis.rows()


def is_invariant(basis, gens):
    '''
    Exact check that the row space of basis is mapped into itself.
    '''
    if len(basis) == 0:
        return True
    field = gens[0].field if gens else None
    if field is None:
        return True
    space = EchelonBasis(field, basis.shape[1])
    for row in basis:
        space.add(row)
    return all(space.contains(image) for g in gens for image in g.act(basis))


def restrict(group, basis):
    '''
    The action of the group on the invariant subspace spanned by the echelon rows
    of basis, in the coordinates given by those rows.
    '''
    basis, pivots = matrices.row_reduce(group.field, basis)
    gens = [Mat(group.field, g.act(basis)[:, pivots]) for g in group.generators]
    return MatGroup(group.field, basis.shape[0], gens), basis


@dataclass
class MeataxeResult:
    # None when the budget ran out before a decision
    irreducible: Optional[bool]
    witness: Optional[np.ndarray] = None
    attempts: int = 0


def _random_algebra_element(group, rng):
    '''
    A random linear combination of short words in the generators.
    '''
    field, d = group.field, group.d
    gens = list(group.generators)
    total = np.zeros((d, d), dtype=ELEMENT_DTYPE)
    for _ in range(rng.randint(2, 4)):
        word = Mat.identity(field, d)
        for _ in range(rng.randint(1, 3)):
            word = word * rng.choice(gens)
        coefficient = rng.randrange(1, field.q)
        total = field.add(total, field.mul(coefficient, word.entries))
    if rng.random() < 0.5:
        total = field.add(total, field.mul(rng.randrange(field.q), np.eye(d, dtype=ELEMENT_DTYPE)))
    return total


def _projective_points(field, basis, limit):
    '''
    One nonzero vector per line of the row space of basis, or None if there are more than limit.
    '''
    k = basis.shape[0]
    q = field.q
    count = (q ** k - 1) // (q - 1)
    if count > limit:
        return None
    points = []
    for index in range(1, q ** k):
        coefficients = [(index // q ** i) % q for i in range(k)]
        leading = next(c for c in reversed(coefficients) if c)
        if leading != 1:
            continue
        v = np.zeros(basis.shape[1], dtype=ELEMENT_DTYPE)
        for c, row in zip(coefficients, basis):
            if c:
                v = field.add(v, field.mul(c, row))
        points.append(v)
    return points


def _annihilator(field, basis):
    return matrices.nullspace(field, basis)


def meataxe(group, budget=None, seed=None):
    '''
    Norton's irreducibility test. A singular algebra element theta either exposes a
    proper invariant subspace through a vector of its kernel, or through a vector of
    the kernel of its transpose (giving an invariant subspace of the dual, whose
    annihilator is returned), or every kernel vector spins to the whole space and
    the module is irreducible.
    '''
    budget = config.MEATAXE_BUDGET if budget is None else budget
    seed = config.DEFAULT_SEED if seed is None else seed
    field, d = group.field, group.d
    if d == 1:
        return MeataxeResult(True)
    gens = list(group.generators)
    if not gens:
        witness = np.zeros((1, d), dtype=ELEMENT_DTYPE)
        witness[0, 0] = 1
        return MeataxeResult(False, witness)
    transposed = [g.transpose() for g in gens]
    rng = random.Random(seed)
    for attempt in range(1, budget + 1):
        theta = _random_algebra_element(group, rng)
        kernel = matrices.left_nullspace(field, theta)
        if kernel.shape[0] == 0:
            continue
        lines = _projective_points(field, kernel, limit=256)
        if lines is None:
            continue
        for v in lines:
            sub = spin(v, gens, field)
            if sub.shape[0] < d:
                logger.debug('meataxe: kernel vector spins to a %d-dimensional subspace', sub.shape[0])
                return MeataxeResult(False, sub, attempt)
        dual_kernel = matrices.left_nullspace(field, theta.T)
        dual_sub = spin(dual_kernel[0], transposed, field)
        if dual_sub.shape[0] < d:
            witness = matrices.row_reduce(field, _annihilator(field, dual_sub))[0]
            logger.debug('meataxe: dual spin gives a %d-dimensional subspace', witness.shape[0])
            return MeataxeResult(False, witness, attempt)
        return MeataxeResult(True, None, attempt)
    logger.info('meataxe undecided after %d algebra elements', budget)
    return MeataxeResult(None, None, budget)


def is_irreducible(group, budget=None, seed=None):
    result = meataxe(group, budget=budget, seed=seed)
    if result.irreducible is None:
        raise errors.BudgetExhausted(f"irreducibility undecided after {result.attempts} algebra elements")
    return result.irreducible


def invariant_subspace(group, budget=None, seed=None):
    '''
    A proper nonzero invariant subspace, or None when the module is irreducible.
    '''
    result = meataxe(group, budget=budget, seed=seed)
    if result.irreducible is None:
        raise errors.BudgetExhausted(f"irreducibility undecided after {result.attempts} algebra elements")
    return result.witness


@dataclass
class Constituent:
    dim: int
    # rows spanning the constituent inside the full space
    basis: np.ndarray = dc_field(repr=False)


def _spun_complement(group, sub, rng, tries=8):
    '''
    Look for an invariant complement as a sum of cyclic submodules meeting sub trivially.
    '''
    field, d = group.field, group.d
    total = EchelonBasis(field, d)
    for row in sub:
        total.add(row)
    complement = EchelonBasis(field, d)
    candidates = [np.eye(d, dtype=ELEMENT_DTYPE)[i] for i in range(d)]
    candidates += [np.array([rng.randrange(field.q) for _ in range(d)], dtype=ELEMENT_DTYPE) for _ in range(tries)]
    for v in candidates:
        if total.dim == d:
            break
        if total.contains(v):
            continue
        cyclic = spin(v, group.generators, field)
        trial = EchelonBasis(field, d)
        for row in total.rows():
            trial.add(row)
        if any(trial.add(row) is None for row in cyclic):
            continue
        for row in cyclic:
            total.add(row)
            complement.add(row)
    if total.dim == d:
        return complement.rows()
    return None


def _equivariant_complement(group, sub):
    '''
    Solve for a module projection onto sub that is the identity on sub; its kernel
    is an invariant complement. None means no invariant complement exists.
    '''
    field, d = group.field, group.d
    m = sub.shape[0]
    restricted, sub = restrict(group, sub)
    eye_d = np.eye(d, dtype=ELEMENT_DTYPE)
    eye_m = np.eye(m, dtype=ELEMENT_DTYPE)
    blocks = []
    rhs = []
    # projection phi (d x m, row vectors): g phi = phi g|sub for every generator
    for g, g_sub in zip(group.generators, restricted.generators):
        left = np.kron(g.entries, eye_m)
        right = np.kron(eye_d, g_sub.entries.T)
        blocks.append(field.sub(left, right))
        rhs.append(np.zeros(d * m, dtype=ELEMENT_DTYPE))
    # sub phi = identity
    blocks.append(np.kron(sub, eye_m).astype(ELEMENT_DTYPE))
    rhs.append(eye_m.reshape(-1))
    solution = matrices.solve(field, np.concatenate(blocks), np.concatenate(rhs))
    if solution is None:
        return None
    phi = solution.reshape(d, m)
    return matrices.row_reduce(field, matrices.left_nullspace(field, phi))[0]


def find_complement(group, sub, seed=None):
    rng = random.Random(config.DEFAULT_SEED if seed is None else seed)
    complement = _spun_complement(group, sub, rng)
    if complement is None:
        complement = _equivariant_complement(group, sub)
    return complement


def irreducible_constituents(group, budget=None, seed=None):
    '''
    Split the module into irreducible invariant summands. Raises
    NotCompletelyReducible when an invariant subspace has no invariant complement.
    '''
    field, d = group.field, group.d
    pending = [np.eye(d, dtype=ELEMENT_DTYPE)]
    found: List[Constituent] = []
    while pending:
        basis = pending.pop(0)
        sub_group, basis = restrict(group, basis)
        witness = invariant_subspace(sub_group, budget=budget, seed=seed)
        if witness is None:
            found.append(Constituent(basis.shape[0], basis))
            continue
        complement = find_complement(sub_group, witness, seed=seed)
        if complement is None:
            raise errors.NotCompletelyReducible(witness=field.matmul(witness, basis))
        pending.append(field.matmul(witness, basis))
        pending.append(field.matmul(complement, basis))
    logger.debug('constituent dimensions %s', [c.dim for c in found])
    return found


def constituent_dimensions(group, budget=None, seed=None):
    return sorted((c.dim for c in irreducible_constituents(group, budget=budget, seed=seed)), reverse=True)
