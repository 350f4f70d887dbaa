import numpy as np
import pytest

from complength import constructions, errors, perms
from complength.perms import Permutation, PermGroup


def test_composition_acts_left_to_right():
    p = Permutation([1, 2, 0])
    q = Permutation([1, 0, 2])
    assert (p * q).tolist() == [0, 2, 1]
    assert (p * q)(0) == q(p(0))

@pytest.mark.parametrize("images", [[0, 0, 1], [0, 3, 1], []])
def test_invalid_images(images):
    with pytest.raises(ValueError):
        Permutation(images)

def test_cycles_and_powers():
    p = Permutation.from_cycles(5, [(0, 1, 2), (3, 4)])
    assert p.to_cycle_string() == '(1,2,3)(4,5)'
    assert p.order() == 6
    assert (p ** 6).is_identity()
    assert (p ** -1) == p.inverse()
    assert Permutation.identity(3).to_cycle_string() == '()'

def test_compose_degree_mismatch():
    with pytest.raises(errors.DegreeMismatchError):
        Permutation([1, 0]) * Permutation([1, 0, 2])

@pytest.mark.parametrize("n, order",
    [(1, 1), (2, 2), (3, 6), (5, 120), (7, 5040)])
def test_symmetric_orders(n, order):
    assert constructions.symmetric(n).order() == order

def test_order_matches_known_order():
    group = constructions.symmetric(6)
    chain = perms.BSGS.build(group.degree, group.generators)
    assert chain.order() == 720

@pytest.mark.parametrize("claimed", [2, 3, 4, 6, 8, 12, 48])
def test_wrong_known_order_is_rejected(claimed):
    gens = [Permutation.from_cycles(4, [(0, 1, 2, 3)]), Permutation.from_cycles(4, [(0, 1)])]
    with pytest.raises(ValueError):
        PermGroup(4, gens, known_order=claimed).order()

def test_right_known_order_is_accepted():
    gens = [Permutation.from_cycles(4, [(0, 1, 2, 3)]), Permutation.from_cycles(4, [(0, 1)])]
    group = PermGroup(4, gens, known_order=24)
    assert group.order() == 24
    assert Permutation.from_cycles(4, [(0, 1)]) in group

def test_membership():
    a5 = constructions.alternating(5)
    assert Permutation.from_cycles(5, [(0, 1, 2)]) in a5
    assert Permutation.from_cycles(5, [(0, 1)]) not in a5
    with pytest.raises(errors.DegreeMismatchError):
        perms.membership(a5, Permutation([1, 0]))

def test_orbits_and_transitivity():
    group = PermGroup(6, [Permutation.from_cycles(6, [(0, 1, 2)]), Permutation.from_cycles(6, [(4, 5)])])
    assert perms.orbits(group) == [[0, 1, 2], [3], [4, 5]]
    assert perms.orbit_of(group, 5) == [4, 5]
    assert not perms.is_transitive(group)
    assert perms.is_transitive(constructions.cyclic(6))

def test_stabilizers():
    s4 = constructions.symmetric(4)
    assert perms.point_stabilizer(s4, 0).order() == 6
    assert perms.pointwise_stabilizer(s4, [0, 1]).order() == 2
    with pytest.raises(errors.RangeError):
        perms.point_stabilizer(s4, 4)

def test_normal_closure_and_derived_subgroup():
    s4 = constructions.symmetric(4)
    closure = perms.normal_closure(s4, [Permutation.from_cycles(4, [(0, 1, 2)])])
    assert closure.order() == 12
    assert perms.derived_subgroup(s4).order() == 12
    assert perms.derived_subgroup(constructions.alternating(4)).order() == 4
    with pytest.raises(errors.NotInGroupError):
        perms.normal_closure(constructions.alternating(4), [Permutation.from_cycles(4, [(0, 1)])])

def test_subgroup_and_normality():
    s4 = constructions.symmetric(4)
    klein = PermGroup(4, [Permutation.from_cycles(4, [(0, 1), (2, 3)]), Permutation.from_cycles(4, [(0, 2), (1, 3)])])
    s3 = PermGroup(4, [Permutation.from_cycles(4, [(0, 1, 2)]), Permutation.from_cycles(4, [(0, 1)])])
    assert perms.is_subgroup(s4, klein)
    assert perms.is_normal(s4, klein)
    assert perms.is_subgroup(s4, s3)
    assert not perms.is_normal(s4, s3)

def test_abelian():
    assert perms.is_abelian(constructions.cyclic(6))
    assert not perms.is_abelian(constructions.symmetric(3))

def test_on_support():
    group = PermGroup(5, [Permutation.from_cycles(5, [(2, 3)])])
    restricted, points = perms.on_support(group)
    assert restricted.degree == 2
    assert restricted.order() == 2
    assert points.tolist() == [2, 3]

    trivial, points = perms.on_support(PermGroup.trivial(4))
    assert trivial.degree == 1
    assert points.size == 0

def test_factorize_round_trips_an_element():
    group = constructions.symmetric(5)
    x = Permutation.from_cycles(5, [(0, 3), (1, 4, 2)])
    chain = group.chain
    assert chain.contains(x)
    factors = chain.factorize(x)
    product = Permutation.identity(5)
    for u in reversed(factors):
        product = product * u
    assert product == x
    assert chain.factorize(Permutation.from_cycles(5, [(0, 1)])) is not None
    assert constructions.alternating(5).chain.factorize(Permutation.from_cycles(5, [(0, 1)])) is None

def test_omega_order():
    # 24 = 2^3 * 3
    assert perms.omega_order(constructions.symmetric(4)) == 4

def test_generator_arrays_are_read_only():
    group = constructions.cyclic(4)
    arr = group.generator_arrays()[0]
    with pytest.raises(ValueError):
        arr[0] = 3
    assert np.array_equal(arr, np.array([1, 2, 3, 0]))

def test_build_chain():
    group = constructions.build_T(2)
    chain = perms.build_chain(group)
    assert chain.order() == 24 ** 5
    assert perms.order(group) == 24 ** 5

def test_random_elements_lie_in_group():
    group = constructions.alternating(6)
    elements = [perms.random_element(group) for _ in range(20)]
    assert all(perms.membership(group, x) for x in elements)
    assert len({x for x in elements}) > 1
