import pytest

from complength import constructions, errors, filters, perms
from complength.constructions import ConstructionSpec
from complength.filters import classify
from complength.perms import Permutation, PermGroup


def _build(spec):
    return ConstructionSpec.parse(spec).build_permutation_group()

@pytest.mark.parametrize("spec, transitive, primitive, quasiprimitive, semiprimitive, affine",
    [('S(4)', True, True, classify.YES, classify.YES, classify.YES),
     ('S(5)', True, True, classify.YES, classify.YES, classify.NO),
     ('A(5)', True, True, classify.YES, classify.YES, classify.NO),
     ('C(5)', True, True, classify.YES, classify.YES, classify.YES),
     ('S(6)', True, True, classify.YES, classify.YES, classify.NO),
     ('C(4)', True, False, classify.NO, classify.YES, None),
     ('D(4)', True, False, classify.NO, classify.NO, None),
     ('T(2)', True, False, classify.NO, classify.NO, None),
     ('directX(C(2),C(2))', False, False, classify.NO, classify.NO, None),
     ('directX(C(3),C(3))', False, False, classify.NO, classify.NO, None)])
def test_classify(spec, transitive, primitive, quasiprimitive, semiprimitive, affine):
    flags = classify.classify(_build(spec))
    assert flags.transitive == transitive
    assert flags.primitive == primitive
    assert flags.quasiprimitive == quasiprimitive
    assert flags.semiprimitive == semiprimitive
    assert flags.affine == affine

def test_semiregular_intransitive_group_is_semiprimitive():
    group = PermGroup(6, [Permutation.from_cycles(6, [(0, 1, 2), (3, 4, 5)])])
    flags = classify.classify(group)
    assert flags.quasiprimitive == classify.NO
    assert flags.semiprimitive == classify.YES

def test_witnesses_are_intransitive_normal_subgroups():
    group = _build('D(4)')
    flags = classify.classify(group)
    for witness in flags.witnesses.values():
        assert perms.is_normal(group, witness)
        assert not perms.is_transitive(witness)
    assert 'quasiprimitive_witness_order' in flags.to_record()

def test_semiprimitive_example_small():
    parts = constructions.semiprimitive_example_parts(0)
    flags = classify.classify(parts.image)
    assert flags.primitive is False
    assert flags.quasiprimitive == classify.NO
    assert flags.semiprimitive == classify.YES

def test_beyond_cap_uses_known_normal_and_tags():
    parts = constructions.semiprimitive_example_parts(1)
    flags = classify.classify(parts.image, tags={'semiprimitive': classify.YES}, known_normal=[parts.witness], cap=1000)
    assert flags.quasiprimitive == classify.NO
    assert flags.semiprimitive == classify.YES
    assert flags.tagged == ['semiprimitive']

def test_beyond_cap_without_tags_stays_unknown():
    group = _build('C(8)')
    flags = classify.classify(group, cap=4)
    assert flags.quasiprimitive == classify.NO
    assert flags.semiprimitive == classify.UNKNOWN

def test_known_normal_must_be_normal():
    group = _build('T(2)')
    not_normal = perms.point_stabilizer(group, 0)
    with pytest.raises(errors.NotNormalError):
        classify.classify(group, known_normal=[not_normal], cap=10)

def test_tag_does_not_override_computed_flag():
    flags = classify.classify(_build('C(4)'), tags={'quasiprimitive': classify.YES})
    assert flags.quasiprimitive == classify.NO
    assert flags.tagged == []

@pytest.mark.parametrize("spec, count",
    [('S(4)', 4),
     ('A(5)', 2),
     ('C(6)', 4),
     ('D(4)', 6)])
def test_normal_subgroups(spec, count):
    assert len(classify.normal_subgroups(_build(spec))) == count

def test_minimal_normal_subgroups():
    minimal = classify.minimal_normal_subgroups(_build('S(4)'))
    assert [m.order() for m in minimal] == [4]

@pytest.mark.parametrize("spec, soluble",
    [('S(4)', True), ('S(5)', False), ('T(2)', True), ('GLperm(3,2)', False)])
def test_is_soluble(spec, soluble):
    assert classify.is_soluble(_build(spec)) == soluble

def test_derived_series():
    series = classify.derived_series(_build('S(4)'))
    assert [g.order() for g in series] == [24, 12, 4, 1]

@pytest.mark.parametrize("spec, tags",
    [('sp_ex(1)', {'semiprimitive': classify.YES}),
     ('qp_ex(1)', {'quasiprimitive': classify.YES, 'semiprimitive': classify.YES}),
     ('S(5)', {'affine': classify.NO}),
     ('S(4)', {}),
     ('wrP(S(5),T(1))', {'affine': classify.NO}),
     ('wrP(S(5),directX(C(2),C(2)))', {}),
     ('T(2)', {})])
def test_construction_tags(spec, tags):
    assert classify.construction_tags(ConstructionSpec.parse(spec)) == tags

@pytest.mark.parametrize("theorem, flags, ok",
    [('T12', classify.Classification(4, False, False), True),
     ('T13', classify.Classification(4, True, True), True),
     ('T13', classify.Classification(4, True, False), False),
     ('T15', classify.Classification(5, True, True, affine=classify.NO), True),
     ('T15', classify.Classification(4, True, True, affine=classify.YES), False),
     ('T15', classify.Classification(4, True, True, affine=classify.UNKNOWN), False),
     ('T16a', classify.Classification(6, True, False, quasiprimitive=classify.YES), True),
     ('T16a', classify.Classification(6, True, True, quasiprimitive=classify.YES), False),
     ('T16b', classify.Classification(4, True, False, classify.NO, classify.YES), True),
     ('T16b', classify.Classification(4, True, False, classify.NO, classify.UNKNOWN), False)])
def test_meets_hypothesis(theorem, flags, ok):
    assert filters.meets_hypothesis(flags, theorem)[0] == ok

def test_meets_hypothesis_rejects_linear_bound():
    with pytest.raises(ValueError):
        filters.meets_hypothesis(classify.Classification(4, True, True), 'T14')
