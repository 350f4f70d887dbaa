import math
import random

import pytest

from complength import bounds, complen, constructions, errors, perms
from complength.constructions import ConstructionSpec
from complength.linear.matrices import MatGroup


@pytest.mark.parametrize("k, degree, order",
    [(0, 1, 1),
     (1, 4, 24),
     (2, 16, 24 ** 5),
     (3, 64, 24 ** 21)])
def test_build_T(k, degree, order):
    group = constructions.build_T(k)
    assert group.degree == degree
    assert group.order() == order
    assert group.name == f"T({k})"

def test_T_out_of_range():
    with pytest.raises(errors.RangeError):
        constructions.build_T(4)

def test_build_P():
    group = constructions.build_P(1)
    assert group.degree == 256
    assert group.order() == 24 ** 5
    assert perms.is_transitive(group)

def test_wreath_imprimitive_order():
    group = constructions.wreath_imprimitive(constructions.symmetric(3), constructions.cyclic(2))
    assert group.degree == 6
    assert group.order() == 6 ** 2 * 2

def test_wreath_product_action():
    group = constructions.wreath_product_action(constructions.symmetric(3), constructions.cyclic(2))
    assert group.degree == 9
    assert group.order() == 72

def test_product_coordinates():
    coords = constructions.ProductCoordinates(3, 2)
    assert coords.degree == 9
    assert coords.point([1, 2]) == 7
    swap = coords.permute_coordinates([1, 0])
    assert swap(coords.point([1, 2])) == coords.point([2, 1])

def test_direct_product():
    group = constructions.direct_product([constructions.symmetric(3), constructions.cyclic(2)])
    assert group.degree == 5
    assert group.order() == 12
    assert perms.orbits(group) == [[0, 1, 2], [3, 4]]

def test_dihedral():
    group = constructions.dihedral(5)
    assert group.order() == 10
    with pytest.raises(errors.RangeError):
        constructions.dihedral(2)

@pytest.mark.parametrize("d, q, degree, order",
    [(2, 2, 3, 6),
     (3, 2, 7, 168),
     (2, 3, 8, 48)])
def test_gl_on_nonzero_vectors(d, q, degree, order):
    group = constructions.gl_on_nonzero_vectors(d, q)
    assert group.degree == degree
    assert group.order() == order

def test_semiprimitive_example_parts_k0():
    parts = constructions.semiprimitive_example_parts(0)
    assert parts.image.degree == 8
    assert parts.image.order() == 48
    assert parts.witness.order() == 2
    assert perms.is_normal(parts.image, parts.witness)
    assert not perms.is_transitive(parts.witness)

def test_semiprimitive_example_parts_k1():
    parts = constructions.semiprimitive_example_parts(1)
    assert parts.image.degree == 512
    assert parts.kernel_order == 2 ** 3
    assert parts.image.order() == ConstructionSpec.parse('sp_ex(1)').order()
    assert perms.is_normal(parts.image, parts.witness)

@pytest.mark.slow
def test_quasiprimitive_example():
    parts = constructions.quasiprimitive_example_parts(1)
    assert parts.image.degree == 16875
    assert parts.image.order() == 622080000
    assert parts.kernel_order == 1
    assert perms.is_transitive(parts.image)
    assert perms.is_transitive(parts.socle_image)

def test_quasiprimitive_example_range():
    with pytest.raises(errors.RangeError):
        constructions.quasiprimitive_example_parts(0)

@pytest.mark.parametrize("text",
    ['S(5)', 'T(2)', 'wrP(S(5),T(1))', 'directX(T(1),T(2))', 'GL1pow(3,4)', 'sp_ex(1)', 'wr(S(3),C(2))'])
def test_spec_text(text):
    assert str(ConstructionSpec.parse(text)) == text

def test_spec_tolerates_whitespace():
    assert ConstructionSpec.parse(' wrP( S(5) , T(1) ) ') == ConstructionSpec.parse('wrP(S(5),T(1))')

@pytest.mark.parametrize("text",
    ['X(1)', 'S(1,2)', 'wr(S(2))', 'S(3', 'S(3))', 'GLperm(2)', ''])
def test_spec_parse_errors(text):
    with pytest.raises(errors.SpecParseError):
        ConstructionSpec.parse(text)

@pytest.mark.parametrize("text, degree, order, orbits",
    [('S(5)', 5, 120, 1),
     ('T(2)', 16, 24 ** 5, 1),
     ('P(1)', 256, 24 ** 5, 1),
     ('L(1)', 255, 6 ** 4 * 24, None),
     ('GLperm(2,3)', 8, 48, 1),
     ('GL1pow(3,4)', 63, 27, 7),
     ('sp_ex(0)', 8, 48, 1),
     ('qp_ex(1)', 16875, 622080000, 1),
     ('wrP(S(5),T(1))', 625, 120 ** 4 * 24, 1),
     ('wr(S(3),C(2))', 6, 72, 1),
     ('A(2)', 2, 1, 2),
     ('A(1)', 1, 1, 1),
     ('directX(A(2),S(3))', 5, 6, 3),
     ('directX(T(1),C(3),S(2))', 9, 24 * 3 * 2, 3)])
def test_spec_closed_forms(text, degree, order, orbits):
    spec = ConstructionSpec.parse(text)
    assert spec.degree() == degree
    assert spec.order() == order
    assert spec.orbit_count() == orbits

@pytest.mark.parametrize("text",
    ['S(5)', 'T(2)', 'wrP(S(3),C(2))', 'directX(T(1),C(3))', 'sp_ex(0)', 'GL1pow(2,4)', 'A(2)', 'directX(A(2),S(3))'])
def test_closed_forms_match_built_groups(text):
    spec = ConstructionSpec.parse(text)
    group = spec.build_permutation_group()
    assert group.degree == spec.degree()
    assert group.order() == spec.order()
    assert len(perms.orbits(group)) == spec.orbit_count()

def test_linear_specs_build_matrix_groups():
    group = ConstructionSpec.parse('L(1)').build()
    assert isinstance(group, MatGroup)
    assert group.d == 8
    assert group.q == 2
    assert ConstructionSpec.parse('L(1)').is_linear()

def test_build_respects_degree_cap():
    with pytest.raises(errors.DegreeCapExceeded):
        ConstructionSpec.parse('P(1)').build_permutation_group(degree_cap=100)

def test_build_semiprimitive_example():
    group = constructions.build_semiprimitive_example(0)
    assert group.degree == 8
    assert perms.is_transitive(group)

SMALL_PARTS = ['S(2)', 'S(3)', 'S(4)', 'A(4)', 'A(5)', 'C(2)', 'C(3)', 'C(4)', 'C(5)', 'D(4)', 'D(5)']
SMALL_BOTTOMS = ['S(2)', 'S(3)', 'C(3)', 'C(4)', 'A(4)', 'D(4)']
SMALL_TOPS = ['C(2)', 'C(3)', 'S(3)']


def _length(text):
    group = ConstructionSpec.parse(text).build_permutation_group()
    return group, complen.composition_length(group, seed=1).length

@pytest.mark.parametrize("seed", range(20))
def test_direct_products_add_lengths(seed):
    rng = random.Random(seed)
    parts = [rng.choice(SMALL_PARTS) for _ in range(rng.randint(2, 3))]
    group, length = _length(f"directX({','.join(parts)})")
    built = [_length(part) for part in parts]
    assert group.order() == math.prod(g.order() for g, _ in built)
    assert length == sum(c for _, c in built)

@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("symbol", ['wr', 'wrP'])
def test_wreath_products_scale_lengths(symbol, seed):
    rng = random.Random(seed)
    bottom, top = rng.choice(SMALL_BOTTOMS), rng.choice(SMALL_TOPS)
    group, length = _length(f"{symbol}({bottom},{top})")
    (b_group, b_length), (t_group, t_length) = _length(bottom), _length(top)
    b = t_group.degree
    assert group.order() == b_group.order() ** b * t_group.order()
    assert length == b * b_length + t_length

@pytest.mark.parametrize("text",
    ['C(2)', 'C(4)', 'D(4)', 'wr(C(2),C(2))', 'directX(C(2),C(2),C(2))', 'wr(C(2),wr(C(2),C(2)))', 'wrP(C(2),C(2))'])
def test_log2_envelope_is_tight_on_2_groups(text):
    group, length = _length(text)
    assert bounds.verdict(bounds.log2_envelope(group.order()), length) == 'equal'

@pytest.mark.parametrize("text", ['S(3)', 'C(6)', 'A(5)', 'wr(S(3),C(2))'])
def test_log2_envelope_is_strict_off_2_groups(text):
    group, length = _length(text)
    assert bounds.verdict(bounds.log2_envelope(group.order()), length) == 'strict'
