'''
Command line entry point: build groups, compute composition lengths and check
them against the bounds.
'''
import argparse
import json
import logging
import os
import sys

import pandas as pd

from complength import analyze, bounds, complen, errors, verify
from complength.constructions import ConstructionSpec
from complength.linear.matrices import MatGroup
from complength.sources import files, transitive

logger = logging.getLogger(__name__)

LOGGING_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

# family symbol -> (theorem whose bound the row is evaluated against, smallest k)
FAMILIES = {
    'T': ('T12', 0),
    'P': ('T13', 0),
    'L': ('T14', 0),
    'wrP(S(5),T)': ('T15', 0),
    'sp_ex': ('T16b', 0),
    'qp_ex': ('T16a', 1),
}


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def init_logging(level='WARNING'):
    logging.basicConfig(format=LOGGING_FORMAT, level=getattr(logging, level.upper()), stream=sys.stderr)


def _targets(text):
    '''
    A spec string, or every group of a group file when text names a file.
    '''
    if os.path.isfile(text):
        return files.read_group_file(text)
    return [ConstructionSpec.parse(text)]


def _name(target):
    return str(target) if isinstance(target, ConstructionSpec) else target.name


def _emit(records, fmt, out=None):
    out = out or sys.stdout
    if fmt == 'records':
        for record in records:
            out.write(json.dumps(record, default=str) + '\n')
    else:
        out.write(pd.DataFrame.from_records(records).to_string(index=False) + '\n')


def cmd_construct(args):
    spec = ConstructionSpec.parse(args.spec)
    group = spec.build(degree_cap=args.degree_cap)
    group.name = group.name or str(spec)
    if args.output:
        files.save_group_file(group, args.output)
        logger.info('wrote %s to %s', group.name, args.output)
    else:
        sys.stdout.write(files.write_group_file(group))
    return EXIT_OK


def _length_record(target, args):
    if args.analytic:
        if not isinstance(target, ConstructionSpec):
            raise errors.SpecParseError('analytic lengths need a construction spec')
        return {'group': str(target), 'n': target.degree(), 'order': str(target.order()),
                'c': complen.composition_length_analytic(target), 'certainty': verify.ANALYTIC}

    group = target.build_permutation_group(degree_cap=args.degree_cap) if isinstance(target, ConstructionSpec) else target
    if isinstance(group, MatGroup):
        group = group.permutation_shadow(degree_cap=args.degree_cap)
    if args.oracle:
        length, certainty = complen.composition_length_oracle(group), verify.ORACLE
    else:
        result = complen.composition_length(group, budget=args.budget, degree_cap=args.degree_cap, seed=args.seed)
        length, certainty = result.length, result.certainty
        if complen.audit_trace(result):
            certainty = verify.AUDIT_FAILED
    return {'group': _name(target), 'n': group.degree, 'order': str(group.order()), 'c': length, 'certainty': certainty}


def cmd_complen(args):
    records = [_length_record(target, args) for target in _targets(args.target)]
    _emit(records, args.format)
    return EXIT_OK


def cmd_verify(args):
    reports = [verify.verify(target, args.theorem, budget=args.budget, seed=args.seed, use_oracle=args.oracle,
                             use_analytic=args.analytic, degree_cap=args.degree_cap)
               for target in _targets(args.target)]
    _emit([r.to_record() for r in reports], args.format)
    return EXIT_VIOLATION if any(r.is_violation for r in reports) else EXIT_OK


def cmd_scan(args):
    if args.builtin:
        corpus = analyze.BUILTIN
    elif args.directory:
        corpus = args.directory
    else:
        raise errors.SpecParseError('scan needs a directory of group files or --builtin')
    summary = analyze.scan_corpus(corpus, args.theorem, jobs=args.jobs, primitive_export=args.primitive_export,
                                  budget=args.budget, seed=args.seed, degree_cap=args.degree_cap, use_oracle=args.oracle)
    _emit(summary.to_records(), args.format)
    return EXIT_VIOLATION if summary.violations else EXIT_OK


def cmd_enumerate_transitive(args):
    found = transitive.enumerate_transitive_small(args.n)
    if args.output:
        files.save_group_file(found, args.output)
    records = [{'group': g.name, 'n': g.degree, 'order': g.order(),
                'generators': ' '.join(x.to_cycle_string() for x in g.generators)} for g in found]
    _emit(records, args.format)
    return EXIT_OK


def family_rows(k_max):
    '''
    Closed-form rows for every family and k <= k_max, each checked against the bound it is extremal for.
    '''
    rows = []
    for symbol, (theorem, k_min) in FAMILIES.items():
        for k in range(k_min, k_max + 1):
            text = symbol.replace('T)', f"T({k}))") if '(' in symbol else f"{symbol}({k})"
            report = verify.verify(text, theorem, use_analytic=True)
            n = report.degree
            rows.append({
                'family': symbol,
                'k': k,
                'group': text,
                'theorem': theorem,
                'n': n,
                'c': report.length,
                'bound': str(report.bound) if report.bound is not None else None,
                'verdict': report.comparison,
                'c/log2(n)': bounds.ratio_to_log2(report.length, n),
            })
    return rows


def cmd_families(args):
    if args.k_max < 0:
        raise errors.RangeError(f"--k-max must be non-negative, got {args.k_max}")
    rows = family_rows(args.k_max)
    _emit(rows, args.format)
    return EXIT_VIOLATION if any(r['verdict'] == verify.VIOLATION for r in rows) else EXIT_OK


def _add_length_options(parser):
    parser.add_argument('--oracle', action='store_true', help='brute-force composition length (small orders only)')
    parser.add_argument('--budget', type=int, default=None, help='random elements tried by the normal subgroup probe')
    parser.add_argument('--seed', type=int, default=None, help='RNG seed')
    parser.add_argument('--degree-cap', type=int, default=None, help='largest degree to materialise')


def build_parser():
    common = _ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['table', 'records'], default='table',
                        help='aligned table or one JSON record per line')
    common.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], default='WARNING')

    parser = _ArgumentParser(prog='complength', description=__doc__.strip())
    commands = parser.add_subparsers(dest='command', required=True)

    construct = commands.add_parser('construct', parents=[common], help='build a group and write it as a group file')
    construct.add_argument('spec', help="construction, e.g. 'wrP(S(5),T(1))'")
    construct.add_argument('-o', '--output', default=None, help='file to write instead of stdout')
    construct.add_argument('--degree-cap', type=int, default=None)
    construct.set_defaults(func=cmd_construct)

    length = commands.add_parser('complen', parents=[common], help='composition length of a spec or group file')
    length.add_argument('target', help='construction spec or group file')
    length.add_argument('--analytic', action='store_true', help='closed form, nothing is built')
    _add_length_options(length)
    length.set_defaults(func=cmd_complen)

    check = commands.add_parser('verify', parents=[common], help='check a spec or group file against a bound')
    check.add_argument('target', help='construction spec or group file')
    check.add_argument('--theorem', required=True, choices=list(bounds.THEOREMS))
    check.add_argument('--analytic', action='store_true', help='closed form lengths and classifications')
    _add_length_options(check)
    check.set_defaults(func=cmd_verify)

    scan = commands.add_parser('scan', parents=[common], help='check every group of a corpus against a bound')
    scan.add_argument('directory', nargs='?', default=None, help='directory of group files')
    scan.add_argument('--builtin', action='store_true', help='the transitive groups of degree at most 6')
    scan.add_argument('--primitive-export', default=None, help='directory of exported primitive groups added to --builtin')
    scan.add_argument('--theorem', required=True, choices=list(bounds.THEOREMS))
    scan.add_argument('--jobs', type=int, default=1, help='parallel workers; more than one starts a local spark session')
    _add_length_options(scan)
    scan.set_defaults(func=cmd_scan)

    enumerate_ = commands.add_parser('enumerate-transitive', parents=[common],
                                     help='transitive groups of a small degree up to conjugacy')
    enumerate_.add_argument('n', type=int)
    enumerate_.add_argument('-o', '--output', default=None, help='also write the groups to this group file')
    enumerate_.set_defaults(func=cmd_enumerate_transitive)

    families = commands.add_parser('families', parents=[common], help='closed-form table of the extremal families')
    families.add_argument('--k-max', type=int, default=3)
    families.set_defaults(func=cmd_families)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    init_logging(args.log_level)
    try:
        return args.func(args)
    except (ValueError, OSError) as err:
        logger.error('%s', err)
        print(f"complength: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
