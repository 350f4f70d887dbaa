import pytest

from complength import errors, perms
from complength.sources import transitive


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_counts(n):
    found = transitive.enumerate_transitive_small(n)
    assert len(found) == transitive.KNOWN_COUNTS[n]
    assert all(perms.is_transitive(g) for g in found)

@pytest.mark.slow
def test_degree_six():
    assert len(transitive.enumerate_transitive_small(6)) == 16

def test_degree_four_orders():
    found = transitive.enumerate_transitive_small(4)
    assert [g.order() for g in found] == [4, 4, 8, 12, 24]
    assert [g.name for g in found] == [f"TG(4,{i})" for i in range(1, 6)]

def test_known_orders_match_schreier_sims():
    for group in transitive.enumerate_transitive_small(5):
        rebuilt = perms.PermGroup(5, group.generators)
        assert rebuilt.order() == group.order()

@pytest.mark.parametrize("n", [0, 7])
def test_degree_out_of_range(n):
    with pytest.raises(errors.RangeError):
        transitive.enumerate_transitive_small(n)
