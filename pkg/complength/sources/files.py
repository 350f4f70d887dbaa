'''
Plain text group files.

    # comment
    permgroup 4
    name S4
    gen (1,2,3,4)
    gen (1,2)
    gen img 2,1,3,4

    matgroup 2 3
    name GL(2,3)
    gen
    20
    01

Points are 1-based. Matrix rows are d field-element digits (hexadecimal, so up
to GF(16)) or d whitespace separated integers for larger fields. A file may hold
several groups, each starting at its header line.
'''
import logging
import os
import re

from complength import errors
from complength.linear import fields
from complength.linear.matrices import Mat, MatGroup
from complength.perms import Permutation, PermGroup

logger = logging.getLogger(__name__)

_CYCLE = re.compile(r'\(([^()]*)\)')
HEX_DIGITS = '0123456789abcdef'


class _PendingGroup:
    def __init__(self, kind, line_number, degree=None, d=None, q=None):
        self.kind = kind
        self.line_number = line_number
        self.degree = degree
        self.d = d
        self.q = q
        self.name = None
        self.generators = []
        # rows still owed by the last matrix `gen` line
        self.rows_needed = 0
        self.rows = []

    def finish(self):
        if self.rows_needed:
            raise errors.GroupFileError(f"matrix generator ends after {len(self.rows)} of {self.d} rows", self.line_number)
        if self.kind == 'permgroup':
            return PermGroup(self.degree, self.generators, name=self.name)
        try:
            return MatGroup(fields.get_field(self.q), self.d, self.generators, name=self.name)
        except ValueError as err:
            raise errors.GroupFileError(str(err), self.line_number) from None


def _int(token, line_number, what):
    try:
        return int(token)
    except ValueError:
        raise errors.GroupFileError(f"{what} must be an integer, got {token!r}", line_number) from None


def parse_cycles(text, degree, line_number=None):
    text = text.replace(' ', '')
    if _CYCLE.sub('', text):
        raise errors.GroupFileError(f"cannot read cycles from {text!r}", line_number)
    cycles = []
    for body in _CYCLE.findall(text):
        if body:
            cycles.append([_int(t, line_number, 'point') - 1 for t in body.split(',')])
    try:
        return Permutation.from_cycles(degree, cycles)
    except ValueError as err:
        raise errors.GroupFileError(str(err), line_number) from None


def parse_images(text, degree, line_number=None):
    images = [_int(t, line_number, 'image') - 1 for t in text.replace(' ', '').split(',') if t]
    if len(images) != degree:
        raise errors.GroupFileError(f"expected {degree} images, got {len(images)}", line_number)
    try:
        return Permutation(images)
    except ValueError as err:
        raise errors.GroupFileError(str(err), line_number) from None


def _parse_row(text, d, q, line_number):
    tokens = text.split()
    if len(tokens) == 1 and len(tokens[0]) == d and q <= len(HEX_DIGITS):
        values = [HEX_DIGITS.find(ch) for ch in tokens[0].lower()]
        if -1 in values:
            raise errors.GroupFileError(f"bad digit in matrix row {text!r}", line_number)
    elif len(tokens) == d:
        values = [_int(t, line_number, 'matrix entry') for t in tokens]
    else:
        raise errors.GroupFileError(f"matrix row {text!r} does not have {d} entries", line_number)
    if any(not 0 <= v < q for v in values):
        raise errors.GroupFileError(f"matrix entry out of range for GF({q})", line_number)
    return values


def _header(words, line_number):
    kind = words[0]
    if kind == 'permgroup':
        if len(words) != 2:
            raise errors.GroupFileError('expected `permgroup <degree>`', line_number)
        degree = _int(words[1], line_number, 'degree')
        if degree < 1:
            raise errors.GroupFileError('degree must be positive', line_number)
        return _PendingGroup(kind, line_number, degree=degree)
    if len(words) != 3:
        raise errors.GroupFileError('expected `matgroup <d> <q>`', line_number)
    d, q = _int(words[1], line_number, 'dimension'), _int(words[2], line_number, 'field size')
    if d < 1:
        raise errors.GroupFileError('dimension must be positive', line_number)
    try:
        fields.get_field(q)
    except ValueError as err:
        raise errors.GroupFileError(str(err), line_number) from None
    return _PendingGroup(kind, line_number, d=d, q=q)


def parse_group_file(text):
    '''
    All groups described in the text, in file order.
    '''
    groups = []
    current = None
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if current is not None and current.rows_needed:
            current.rows.append(_parse_row(line, current.d, current.q, line_number))
            current.rows_needed -= 1
            if not current.rows_needed:
                try:
                    current.generators.append(Mat(fields.get_field(current.q), current.rows))
                except ValueError as err:
                    raise errors.GroupFileError(str(err), line_number) from None
                current.rows = []
            continue
        words = line.split()
        keyword = words[0]
        if keyword in ('permgroup', 'matgroup'):
            if current is not None:
                groups.append(current.finish())
            current = _header(words, line_number)
            continue
        if current is None:
            raise errors.GroupFileError(f"expected a permgroup or matgroup header, found {keyword!r}", line_number)
        if keyword == 'name':
            current.name = line[len('name'):].strip() or None
        elif keyword == 'gen' and current.kind == 'permgroup':
            rest = line[len('gen'):].strip()
            if rest.startswith('img'):
                current.generators.append(parse_images(rest[len('img'):], current.degree, line_number))
            else:
                current.generators.append(parse_cycles(rest, current.degree, line_number))
        elif keyword == 'gen':
            if len(words) != 1:
                raise errors.GroupFileError('matrix `gen` lines are followed by the rows on their own lines', line_number)
            current.rows_needed = current.d
            current.line_number = line_number
        else:
            raise errors.GroupFileError(f"unknown keyword {keyword!r}", line_number)
    if current is not None:
        groups.append(current.finish())
    logger.debug('parsed %d group(s)', len(groups))
    return groups


def read_group_file(path):
    with open(path) as f:
        return parse_group_file(f.read())


def _format_row(row, q):
    if q <= len(HEX_DIGITS):
        return ''.join(HEX_DIGITS[int(v)] for v in row)
    return ' '.join(str(int(v)) for v in row)


def write_group_file(groups):
    '''
    Text that parse_group_file reads back to the same generators.
    '''
    if isinstance(groups, (PermGroup, MatGroup)):
        groups = [groups]
    lines = []
    for group in groups:
        if lines:
            lines.append('')
        if isinstance(group, MatGroup):
            lines.append(f"matgroup {group.d} {group.q}")
            if group.name:
                lines.append(f"name {group.name}")
            for g in group.generators:
                lines.append('gen')
                lines.extend(_format_row(row, group.q) for row in g.entries)
        else:
            lines.append(f"permgroup {group.degree}")
            if group.name:
                lines.append(f"name {group.name}")
            for g in group.generators:
                lines.append(f"gen {g.to_cycle_string()}")
    return '\n'.join(lines) + '\n'


def save_group_file(groups, path):
    with open(path, 'w') as f:
        f.write(write_group_file(groups))


def list_group_files(directory):
    '''
    Group files in a directory, sorted by name.
    '''
    names = sorted(n for n in os.listdir(directory) if not n.startswith('.'))
    return [os.path.join(directory, n) for n in names if os.path.isfile(os.path.join(directory, n))]
