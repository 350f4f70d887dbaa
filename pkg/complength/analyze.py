from dataclasses import dataclass, field
import decimal
from fractions import Fraction
import logging
from typing import List, Tuple

from complength import base, run, verify
from complength.sources import groups

logger = logging.getLogger(__name__)

BUILTIN = 'builtin'
BUILTIN_MIN_DEGREE = 2
PRIMITIVE_EXPORT_ROW = 'primitive groups of degree 7-24'


def _as_decimal(value):
    if isinstance(value, Fraction):
        return decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
    return value


@dataclass
class ScanSummary:
    theorem: str
    reports: List[verify.BoundReport]
    # rows that were never verified, as (label, reason)
    extra_skipped: List[Tuple[str, str]] = field(default_factory=list)

    def _with_verdict(self, *verdicts):
        return [r for r in self.reports if r.comparison in verdicts]

    @property
    def violations(self):
        return [r for r in self.reports if r.is_violation]

    @property
    def equality_cases(self):
        return self._with_verdict(verify.EQUAL)

    @property
    def unaudited(self):
        return [r for r in self.reports if r.certainty == verify.AUDIT_FAILED]

    @property
    def skipped(self):
        rows = [(r.group, r.note or r.comparison) for r in self._with_verdict(verify.SKIPPED, verify.HYPOTHESIS_UNMET)]
        return rows + list(self.extra_skipped)

    def max_slack(self):
        '''
        The largest bound - c, exact when that bound is rational.
        '''
        slacks = [r.slack() for r in self.reports if r.bound is not None and r.length is not None]
        if not slacks:
            return None
        return max(slacks, key=_as_decimal)

    def summary_text(self):
        checked = len(self._with_verdict(verify.STRICT, verify.EQUAL, verify.VIOLATION))
        text = f"{len(self.reports)} groups, {checked} checked against {self.theorem}, {len(self.violations)} violations"
        if self.equality_cases:
            text += f"; equality at {', '.join(f'{r.group} (n={r.degree})' for r in self.equality_cases)}"
        slack = self.max_slack()
        if slack is not None:
            text += f"; max slack {slack}"
        if self.skipped:
            text += f"; {len(self.skipped)} skipped"
        if self.unaudited:
            text += f"; {len(self.unaudited)} with unaudited traces"
        return text

    def to_record(self):
        slack = self.max_slack()
        return {
            'summary': self.summary_text(),
            'theorem': self.theorem,
            'groups': len(self.reports),
            'violations': len(self.violations),
            'audit_failures': [r.group for r in self.unaudited],
            'equality_cases': [r.group for r in self.equality_cases],
            'max_slack': None if slack is None else str(slack),
            'skipped': [{'group': label, 'reason': reason} for label, reason in self.skipped],
        }

    def to_records(self):
        return [r.to_record() for r in self.reports] + [self.to_record()]


class Analyze(base.BaseStage):
    input: base.BaseStage

    def __init__(self, input):
        self.input = input
        self._extra_skipped = []

    def report_skipped(self, label, reason):
        '''
        Record a corpus row that is reported as skipped without being run.
        '''
        self._extra_skipped.append((label, reason))
        return self

    def _process(self, spark_manager):
        reports = self.input._process(spark_manager)
        summary = ScanSummary(self.input._theorem, list(reports), list(self._extra_skipped))
        logger.info('%s', summary.summary_text())
        return summary


def _corpus_source(corpus, primitive_export):
    if isinstance(corpus, groups.BaseSource):
        return corpus
    if corpus == BUILTIN:
        source = groups.TransitiveCorpus(min_degree=BUILTIN_MIN_DEGREE)
        if primitive_export:
            source = groups.CombinedSource([source, groups.DirectorySource(primitive_export)])
        return source
    if isinstance(corpus, str):
        return groups.DirectorySource(corpus)
    return groups.FileSource(corpus)


def scan_corpus(corpus, theorem, jobs=1, primitive_export=None, budget=None, seed=None, degree_cap=None,
                use_oracle=False, use_analytic=False):
    '''
    Verify every group of a corpus against one bound.

    corpus is BUILTIN (the transitive groups of degree 2 to 6, plus the groups
    exported to primitive_export when given), a directory of group files, a list
    of group file paths, or a source.
    '''
    verifier = verify.Verifier(_corpus_source(corpus, primitive_export)) \
        .against_theorem(theorem) \
        .with_budget(budget) \
        .with_seed(seed) \
        .with_degree_cap(degree_cap) \
        .use_oracle(use_oracle) \
        .use_analytic(use_analytic) \
        .in_parallel(jobs)
    stage = Analyze(verifier)
    if corpus == BUILTIN and not primitive_export:
        stage.report_skipped(PRIMITIVE_EXPORT_ROW, 'no exported primitive group corpus given (--primitive-export DIR)')
    return run.Runner(stage, jobs=jobs).get_obj()
