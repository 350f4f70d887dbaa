import pytest

from complength import complen, errors, verify
from complength.filters import classify
from complength.sources import groups

import mock_source


@pytest.mark.parametrize("spec, theorem, comparison, length",
    [('T(2)', 'T12', verify.EQUAL, 20),
     ('directX(T(1),C(3))', 'T12', verify.STRICT, 5),
     ('S(5)', 'T13', verify.STRICT, 2),
     ('wrP(S(5),T(1))', 'T15', verify.EQUAL, 12),
     ('sp_ex(1)', 'T16b', verify.EQUAL, 21),
     ('C(4)', 'T16b', verify.STRICT, 2)])
def test_verify_permutation_groups(spec, theorem, comparison, length):
    report = verify.verify(spec, theorem)
    assert report.comparison == comparison
    assert report.length == length
    assert not report.is_violation

@pytest.mark.parametrize("spec, theorem, comparison, length",
    [('sp_ex(0)', 'T16b', verify.EQUAL, 5),
     ('P(0)', 'T13', verify.EQUAL, 4),
     ('P(1)', 'T13', verify.EQUAL, 20)])
def test_verify_extremal_families_through_engine(spec, theorem, comparison, length):
    report = verify.verify(spec, theorem)
    assert report.certainty != verify.ANALYTIC
    assert report.comparison == comparison
    assert report.length == length
    assert report.fingerprint is True

@pytest.mark.slow
def test_quasiprimitive_example_is_strict_through_engine():
    report = verify.verify('qp_ex(1)', 'T16a')
    assert report.comparison == verify.STRICT
    assert report.length == 9
    assert report.degree == 16875

@pytest.mark.parametrize("k, length", [(1, 9), (2, 40)])
def test_quasiprimitive_example_is_strict_analytically(k, length):
    report = verify.verify(f"qp_ex({k})", 'T16a', use_analytic=True)
    assert report.comparison == verify.STRICT
    assert report.length == length
    assert report.fingerprint is None

@pytest.mark.parametrize("spec, theorem",
    [('T(2)', 'T12'),
     ('wrP(S(5),T(1))', 'T15'),
     ('sp_ex(1)', 'T16b')])
def test_equality_cases_match_their_family(spec, theorem):
    assert verify.verify(spec, theorem).fingerprint is True

def test_strict_comparison_has_no_fingerprint():
    report = verify.verify('S(5)', 'T13')
    assert report.fingerprint is None
    assert report.to_record()['fingerprint'] == 'n/a'

def test_unmet_hypothesis_is_reported():
    report = verify.verify('C(4)', 'T13')
    assert report.comparison == verify.HYPOTHESIS_UNMET
    assert report.note == 'not primitive'
    assert report.length is None

def test_analytic_verification():
    report = verify.verify('P(1)', 'T13', use_analytic=True)
    assert report.comparison == verify.EQUAL
    assert report.certainty == verify.ANALYTIC
    assert report.length == 20
    assert report.fingerprint is True

def test_analytic_verification_of_unclassified_construction():
    report = verify.verify('wr(S(3),C(2))', 'T13', use_analytic=True)
    assert report.comparison == verify.HYPOTHESIS_UNMET

@pytest.mark.parametrize("use_analytic", [True, False])
def test_linear_bound_on_extremal_family(use_analytic):
    report = verify.verify('L(1)', 'T14', use_analytic=use_analytic)
    assert report.comparison == verify.EQUAL
    assert report.length == 12
    assert report.linear['d'] == 8
    assert report.linear['constituents'] == '8'
    assert report.fingerprint is True

def test_linear_bound_on_diagonal_group():
    report = verify.verify('GL1pow(3,4)', 'T14')
    assert report.comparison == verify.EQUAL
    assert report.length == 3
    assert report.orbits == 3
    assert report.fingerprint is True

def test_linear_bound_needs_matrix_group():
    report = verify.verify('S(5)', 'T14')
    assert report.comparison == verify.HYPOTHESIS_UNMET
    assert report.note == 'not a matrix group'

def test_unknown_theorem():
    with pytest.raises(errors.RangeError):
        verify.verify('S(5)', 'T99')

def test_degree_cap_skips():
    report = verify.verify('P(1)', 'T13', degree_cap=100)
    assert report.comparison == verify.SKIPPED
    assert report.note

def test_unknown_option():
    with pytest.raises(TypeError):
        verify.verify('S(5)', 'T13', colour='red')

def test_oracle_lengths():
    report = verify.verify('S(4)', 'T13', use_oracle=True)
    assert report.certainty == verify.ORACLE
    assert report.length == 4
    assert report.comparison == verify.EQUAL

def test_record_contains_flags_and_bound():
    record = verify.verify('S(5)', 'T15').to_record()
    assert record['verdict'] == verify.EQUAL
    assert record['primitive'] is True
    assert record['affine'] == classify.NO
    assert record['bound_numerator'] == 2
    assert record['slack'] == '0'

def test_verifier_stage():
    source = mock_source.MockSource(specs=['T(1)', 'S(5)', 'C(4)'])
    reports = verify.Verifier(source).against_theorem('T13')._process(None)
    assert [r.comparison for r in reports] == [verify.EQUAL, verify.STRICT, verify.HYPOTHESIS_UNMET]
    assert [r.group for r in reports] == ['T(1)', 'S(5)', 'C(4)']

def test_verifier_stage_options():
    source = mock_source.MockSource(specs=['T(1)', 'directX(C(2),C(2))', 'S(5)'])
    verifier = verify.Verifier(source).against_theorem('T12').only_transitive().limit_num_groups(1)
    reports = verifier._process(None)
    assert len(reports) == 1
    assert reports[0].group == 'T(1)'

def test_verifier_stage_reports_bad_items():
    items = [groups.GroupItem('broken', error='unbalanced parentheses')]
    reports = verify.Verifier(mock_source.MockSource(items=items)).against_theorem('T12')._process(None)
    assert reports[0].comparison == verify.SKIPPED
    assert reports[0].note == 'unbalanced parentheses'

def test_verifier_needs_theorem():
    with pytest.raises(errors.RangeError):
        verify.Verifier(mock_source.MockSource(specs=['S(3)']))._process(None)

def test_failed_trace_audit_downgrades_certainty(monkeypatch):
    monkeypatch.setattr(complen, 'audit_trace', lambda result: [object(), object()])
    report = verify.verify('S(5)', 'T13')
    assert report.length == 2
    assert report.certainty == verify.AUDIT_FAILED
    assert report.audit_failures == 2
    assert report.note == 'trace fails its audit at 2 step(s)'
    assert report.to_record()['audit_failures'] == 2

def test_clean_trace_keeps_certainty():
    report = verify.verify('S(5)', 'T13')
    assert report.certainty == complen.CERTIFIED
    assert report.audit_failures == 0
    assert 'audit_failures' not in report.to_record()
