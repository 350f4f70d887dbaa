import json

import pytest

from complength import analyze, cli, complen, verify


def _records(capsys):
    out = capsys.readouterr().out
    return [json.loads(line) for line in out.splitlines() if line]

def test_verify_exit_code(capsys):
    assert cli.main(['verify', 'T(1)', '--theorem', 'T12', '--format', 'records']) == cli.EXIT_OK
    records = _records(capsys)
    assert records[0]['verdict'] == verify.EQUAL
    assert records[0]['c'] == 4

def test_bad_spec_is_a_usage_error(capsys):
    assert cli.main(['complen', 'X(3)']) == cli.EXIT_USAGE
    assert 'error' in capsys.readouterr().err

def test_unknown_theorem_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        cli.main(['verify', 'S(3)', '--theorem', 'T99'])
    assert info.value.code == cli.EXIT_USAGE

def test_violation_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(complen, 'composition_length_analytic', lambda spec: 100)
    assert cli.main(['verify', 'T(1)', '--theorem', 'T12', '--analytic', '--format', 'records']) == cli.EXIT_VIOLATION
    assert _records(capsys)[0]['verdict'] == verify.VIOLATION

def test_complen_reports_failed_audit(monkeypatch, capsys):
    monkeypatch.setattr(complen, 'audit_trace', lambda result: [object()])
    assert cli.main(['complen', 'S(4)', '--format', 'records']) == cli.EXIT_OK
    assert _records(capsys)[0]['certainty'] == verify.AUDIT_FAILED

def test_construct_then_complen(tmp_path, capsys):
    path = str(tmp_path / 's4.grp')
    assert cli.main(['construct', 'S(4)', '-o', path]) == cli.EXIT_OK
    assert cli.main(['complen', path, '--format', 'records']) == cli.EXIT_OK
    records = _records(capsys)
    assert records[0]['c'] == 4
    assert records[0]['order'] == '24'

def test_complen_analytic(capsys):
    assert cli.main(['complen', 'P(3)', '--analytic', '--format', 'records']) == cli.EXIT_OK
    assert _records(capsys)[0]['c'] == complen.c_T(4)

def test_construct_to_stdout(capsys):
    assert cli.main(['construct', 'C(3)']) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith('permgroup 3')

def test_scan_builtin(capsys):
    assert cli.main(['scan', '--builtin', '--theorem', 'T12', '--format', 'records']) == cli.EXIT_OK
    records = _records(capsys)
    summary = records[-1]
    assert summary['groups'] == 29
    assert summary['equality_cases'] == ['TG(4,5)']
    assert summary['violations'] == 0
    assert summary['skipped'][0]['group'] == analyze.PRIMITIVE_EXPORT_ROW

def test_scan_directory(tmp_path, capsys):
    for spec in ['S(4)', 'D(5)']:
        assert cli.main(['construct', spec, '-o', str(tmp_path / f"{spec[0]}.grp")]) == cli.EXIT_OK
    capsys.readouterr()
    assert cli.main(['scan', str(tmp_path), '--theorem', 'T13', '--format', 'records']) == cli.EXIT_OK
    records = _records(capsys)
    assert [r['verdict'] for r in records[:-1]] == [verify.STRICT, verify.EQUAL]

def test_scan_needs_input():
    assert cli.main(['scan', '--theorem', 'T12']) == cli.EXIT_USAGE

def test_enumerate_transitive(tmp_path, capsys):
    path = tmp_path / 'degree4.grp'
    assert cli.main(['enumerate-transitive', '4', '-o', str(path), '--format', 'records']) == cli.EXIT_OK
    assert len(_records(capsys)) == 5
    assert path.read_text().count('permgroup') == 5

def test_families(capsys):
    assert cli.main(['families', '--k-max', '1', '--format', 'records']) == cli.EXIT_OK
    rows = _records(capsys)
    by_group = {row['group']: row for row in rows}
    assert by_group['T(1)']['verdict'] == verify.EQUAL
    assert by_group['P(1)']['c'] == 20
    assert by_group['L(1)']['c'] == 12
    assert by_group['wrP(S(5),T(1))']['verdict'] == verify.EQUAL
    assert by_group['sp_ex(1)']['c'] == 21
    assert by_group['qp_ex(1)']['verdict'] == verify.STRICT
    assert 'qp_ex(0)' not in by_group

def test_table_format(capsys):
    assert cli.main(['complen', 'S(5)']) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert 'certainty' in out.splitlines()[0]
