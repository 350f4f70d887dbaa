from fractions import Fraction

from complength import analyze, complen, verify

import mock_source


def _summary(specs, theorem='T12'):
    verifier = verify.Verifier(mock_source.MockSource(specs=specs)).against_theorem(theorem)
    return analyze.Analyze(verifier)._process(None)

def test_summary_of_small_corpus():
    summary = _summary(['T(1)', 'S(5)', 'C(4)'])
    assert summary.violations == []
    assert [r.group for r in summary.equality_cases] == ['T(1)']
    assert summary.max_slack() == Fraction(10, 3)
    assert summary.summary_text() == '3 groups, 3 checked against T12, 0 violations; equality at T(1) (n=4); max slack 10/3'

def test_unmet_hypotheses_are_listed_as_skipped():
    summary = _summary(['S(5)', 'C(4)'], theorem='T13')
    assert summary.skipped == [('C(4)', 'not primitive')]
    assert summary.summary_text().endswith('1 skipped')

def test_empty_corpus():
    summary = _summary([])
    assert summary.max_slack() is None
    assert summary.summary_text() == '0 groups, 0 checked against T12, 0 violations'
    assert summary.to_records() == [summary.to_record()]

def test_extra_skipped_rows():
    verifier = verify.Verifier(mock_source.MockSource(specs=['S(3)'])).against_theorem('T12')
    stage = analyze.Analyze(verifier).report_skipped('primitive groups', 'not available')
    summary = stage._process(None)
    assert summary.skipped == [('primitive groups', 'not available')]
    record = summary.to_record()
    assert record['skipped'] == [{'group': 'primitive groups', 'reason': 'not available'}]
    assert record['groups'] == 1

def test_records_end_with_summary():
    records = _summary(['T(1)', 'S(5)']).to_records()
    assert len(records) == 3
    assert records[0]['verdict'] == verify.EQUAL
    assert records[-1]['max_slack'] == '10/3'
    assert records[-1]['equality_cases'] == ['T(1)']

def test_scan_corpus_builtin():
    summary = analyze.scan_corpus(analyze.BUILTIN, 'T12')
    assert len(summary.reports) == 29
    assert min(r.degree for r in summary.reports) == 2
    assert summary.violations == []
    assert [(r.group, r.degree, r.order) for r in summary.equality_cases] == [('TG(4,5)', 4, 24)]
    assert summary.skipped[-1][0] == analyze.PRIMITIVE_EXPORT_ROW

def test_scan_corpus_files(tmp_path):
    path = tmp_path / 'groups.grp'
    path.write_text('permgroup 4\nname S4\ngen (1,2,3,4)\ngen (1,2)\n\npermgroup 5\nname C5\ngen (1,2,3,4,5)\n')
    summary = analyze.scan_corpus([str(path)], 'T13')
    assert [r.group for r in summary.reports] == ['S4', 'C5']
    assert [r.group for r in summary.equality_cases] == ['S4']

def test_scan_corpus_reports_unreadable_files(tmp_path):
    (tmp_path / 'bad.grp').write_text('permgroup 3\ngen (1,4)\n')
    summary = analyze.scan_corpus(str(tmp_path), 'T12')
    assert summary.reports[0].comparison == verify.SKIPPED
    assert summary.reports[0].note.startswith('line 2')

def test_unaudited_traces_are_counted(monkeypatch):
    monkeypatch.setattr(complen, 'audit_trace', lambda result: [object()])
    summary = _summary(['S(5)', 'C(4)'])
    assert [r.group for r in summary.unaudited] == ['S(5)', 'C(4)']
    assert summary.summary_text().endswith('2 with unaudited traces')
    assert summary.to_record()['audit_failures'] == ['S(5)', 'C(4)']
