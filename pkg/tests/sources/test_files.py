import pytest

from complength import errors
from complength.linear import matrices
from complength.linear.matrices import MatGroup
from complength.perms import PermGroup
from complength.sources import files


S4_FILE = '''
# the symmetric group on four points
permgroup 4
name S4
gen (1,2,3,4)
gen img 2,1,3,4
'''

GL_FILE = '''
matgroup 2 3
name GL(2,3)
gen
20
01
gen
11  # a transvection
01
gen
01
10
'''

def test_parse_permutation_group():
    group, = files.parse_group_file(S4_FILE)
    assert isinstance(group, PermGroup)
    assert group.name == 'S4'
    assert group.degree == 4
    assert group.order() == 24
    assert group.generators[1](0) == 1

def test_parse_matrix_group():
    group, = files.parse_group_file(GL_FILE)
    assert isinstance(group, MatGroup)
    assert group.d == 2
    assert group.q == 3
    assert group.order() == 48

def test_parse_decimal_rows_for_large_fields():
    text = 'matgroup 1 17\ngen\n3\n'
    group, = files.parse_group_file(text)
    assert group.generators[0].entries.tolist() == [[3]]

def test_several_groups_in_one_file():
    groups = files.parse_group_file(S4_FILE + GL_FILE + 'permgroup 3\ngen (1,2,3)\n')
    assert [g.name for g in groups] == ['S4', 'GL(2,3)', None]

@pytest.mark.parametrize("text, line_number",
    [('gen (1,2)', 1),
     ('permgroup 3\ngen (1,4)', 2),
     ('permgroup 3\ngen img 2,1', 2),
     ('permgroup three', 1),
     ('permgroup 3\nfoo bar', 2),
     ('matgroup 2 6', 1),
     ('matgroup 2 2\ngen\n10\n1', 4),
     ('matgroup 2 2\ngen\n11\n11', 2),
     ('matgroup 2 3\ngen\n10\n03', 4)])
def test_parse_errors_carry_line_numbers(text, line_number):
    with pytest.raises(errors.GroupFileError) as info:
        files.parse_group_file(text)
    assert info.value.line_number == line_number

def test_unfinished_matrix():
    with pytest.raises(errors.GroupFileError):
        files.parse_group_file('matgroup 2 2\ngen\n10\n')

def test_write_and_read_back(tmp_path):
    dihedral, = files.parse_group_file('permgroup 5\nname D5\ngen (1,2,3,4,5)\ngen (2,5)(3,4)\n')
    groups = [dihedral, matrices.general_linear_group(2, 4)]
    path = str(tmp_path / 'groups.grp')
    files.save_group_file(groups, path)
    read = files.read_group_file(path)
    assert [g.name for g in read] == ['D5', 'GL(2,4)']
    assert read[0].order() == 10
    assert read[1].order() == 180
    assert [g.entries.tolist() for g in read[1].generators] == [g.entries.tolist() for g in groups[1].generators]

def test_list_group_files(tmp_path):
    for name in ['b.grp', 'a.grp', '.hidden']:
        (tmp_path / name).write_text('permgroup 1\n')
    (tmp_path / 'sub').mkdir()
    assert [p.rsplit('/', 1)[1] for p in files.list_group_files(str(tmp_path))] == ['a.grp', 'b.grp']

def test_write_group_file_text():
    group, = files.parse_group_file('permgroup 3\nname C3\ngen img 2,3,1\n')
    assert files.write_group_file(group) == 'permgroup 3\nname C3\ngen (1,2,3)\n'
