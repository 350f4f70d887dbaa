'''
Per-theorem verification reports and the Verifier stage that produces them for
every group of a source.
'''
from dataclasses import dataclass, field
import logging
import math
from typing import Optional

from complength import base, bounds, complen, constructions, errors, filters, perms
from complength.constructions import ConstructionSpec
from complength.filters import classify
from complength.helpers import utils, worker_utils
from complength.linear import modules
from complength.linear.matrices import MatGroup
from complength.perms import PermGroup

logger = logging.getLogger(__name__)

STRICT = 'strict'
EQUAL = 'equal'
VIOLATION = 'VIOLATION'
HYPOTHESIS_UNMET = 'hypothesis unmet'
SKIPPED = 'skipped'

ORACLE = 'oracle'
ANALYTIC = 'analytic'
AUDIT_FAILED = 'audit failed'


@dataclass
class BoundReport:
    group: str
    theorem: str
    comparison: str
    degree: Optional[int] = None
    orbits: Optional[int] = None
    order: Optional[int] = None
    flags: Optional[classify.Classification] = field(default=None, repr=False)
    length: Optional[int] = None
    certainty: Optional[str] = None
    bound: Optional[bounds.BoundExpr] = None
    # None when the comparison is not an equality
    fingerprint: Optional[bool] = None
    envelope: Optional[str] = None
    linear: dict = field(default_factory=dict)
    note: Optional[str] = None
    # trace steps whose lengths do not add up
    audit_failures: int = 0

    @property
    def is_violation(self):
        return self.comparison == VIOLATION or self.envelope == VIOLATION

    def slack(self):
        if self.bound is None or self.length is None:
            return None
        return self.bound.slack(self.length)

    def to_record(self):
        record = {
            'group': self.group,
            'theorem': self.theorem,
            'n': self.degree,
            'r': self.orbits,
            'order': None if self.order is None else str(self.order),
            'c': self.length,
            'certainty': self.certainty,
            'verdict': self.comparison,
            'fingerprint': 'n/a' if self.fingerprint is None else self.fingerprint,
            'envelope': self.envelope,
        }
        if self.bound is not None:
            record.update(self.bound.to_record())
            record['slack'] = str(self.slack())
        if self.flags is not None:
            record.update(self.flags.to_record())
        record.update(self.linear)
        if self.audit_failures:
            record['audit_failures'] = self.audit_failures
        if self.note:
            record['note'] = self.note
        return record


def _log_of_log(n, base_, outer=4):
    '''
    k with n == base_ ** (outer ** k), or None.
    '''
    m = utils.integer_log(n, base_)
    if m is None:
        return None
    return utils.integer_log(m, outer)


def _family_order(symbol, k):
    return ConstructionSpec.parse(f"{symbol}({k})").order()


def permutation_fingerprint(theorem, group, length, orbit_lengths=None):
    '''
    Whether an equality case looks like the extremal family the theorem names.
    '''
    n, order = group.degree, group.order()
    if theorem == 'T12':
        lengths = orbit_lengths if orbit_lengths is not None else [len(o) for o in perms.orbits(group)]
        ks = [utils.integer_log(m, 4) for m in lengths]
        if None in ks:
            return False
        return order == math.prod(_family_order('T', k) for k in ks)
    if theorem == 'T13':
        k = _log_of_log(n, 4)
        return k is not None and order == _family_order('T', k + 1)
    if theorem == 'T15':
        k = _log_of_log(n, 5)
        return k is not None and order == 120 ** 4 ** k * _family_order('T', k)
    if theorem == 'T16b':
        if n % 2 or not utils.is_power_of(n, 2):
            return False
        if not set(utils.prime_divisors_of_order(group.chain.orbit_lengths())) <= {2, 3}:
            return False
        k = _log_of_log(n // 2, 4)
        return k is not None and order == _family_order('sp_ex', k)
    # the quasiprimitive bound is never attained
    return False


def _linear_fingerprint(d, q, r, dims, order):
    if q == 2 and r == len(dims):
        ks = []
        for dim in dims:
            m = utils.integer_log(dim, 2)
            if m is None or m % 2 == 0:
                return False
            ks.append((m - 1) // 2)
        if order == math.prod(_family_order('L', k) for k in ks):
            return True
    return q == 4 and r == d and order == 3 ** d


def _resolve(target):
    if isinstance(target, str):
        return ConstructionSpec.parse(target), None
    if isinstance(target, ConstructionSpec):
        return target, None
    if isinstance(target, (PermGroup, MatGroup)):
        return None, target
    raise TypeError(f"cannot verify a {type(target).__name__}")


def _label(spec, group):
    if spec is not None:
        return str(spec)
    if group.name:
        return group.name
    if isinstance(group, MatGroup):
        return f"matrix group of dimension {group.d} over GF({group.q})"
    return f"group of degree {group.degree}"


def _measure(report, group, options):
    '''
    Fill in the composition length of the report. A trace that fails its audit
    keeps its length but loses its certainty.
    '''
    if options['use_oracle']:
        report.length = complen.composition_length_oracle(group, cap=options['oracle_cap'])
        report.certainty = ORACLE
        return
    result = complen.composition_length(group, budget=options['budget'], degree_cap=options['degree_cap'],
                                        seed=options['seed'])
    report.length = result.length
    report.certainty = result.certainty
    bad = complen.audit_trace(result)
    if bad:
        logger.warning('%s: composition length trace fails its audit at %d step(s)', report.group, len(bad))
        report.certainty = AUDIT_FAILED
        report.audit_failures = len(bad)
        report.note = f"trace fails its audit at {len(bad)} step(s)"


def _finish(report, theorem):
    report.comparison = bounds.verdict(report.bound, report.length)
    if report.order is not None:
        report.envelope = bounds.verdict(bounds.log2_envelope(report.order), report.length)
    if report.comparison == VIOLATION:
        logger.warning('%s violates %s: c = %d, bound %s', report.group, theorem, report.length, report.bound)
    return report


def analytic_flags(spec):
    '''
    The classification a named family is known to have, or None.
    '''
    kind, params = spec.kind, spec.parameters
    tags = classify.construction_tags(spec)
    if kind == 'T':
        k = params[0]
        flags = classify.Classification(spec.degree(), True, k <= 1)
        if k <= 1:
            flags.affine = classify.YES if k == 1 else None
    elif kind == 'P':
        flags = classify.Classification(spec.degree(), True, True, affine=classify.YES)
    elif kind in ('symmetric', 'alternating') and (params[0] >= 3 or kind == 'symmetric'):
        flags = classify.Classification(spec.degree(), True, True)
        if 2 <= params[0] <= 4:
            flags.affine = classify.YES
    elif kind == 'wreath_product_action' and 'affine' in tags:
        flags = classify.Classification(spec.degree(), True, True)
    elif kind in ('semiprimitive_example', 'quasiprimitive_example'):
        flags = classify.Classification(spec.degree(), True, False)
        if kind == 'semiprimitive_example':
            flags.quasiprimitive = classify.NO
    else:
        return None
    if flags.primitive:
        flags.quasiprimitive = flags.semiprimitive = classify.YES
    for flag, value in tags.items():
        setattr(flags, flag, value)
        flags.tagged.append(flag)
    return flags


def _verify_analytic(spec, theorem):
    report = BoundReport(str(spec), theorem, SKIPPED, certainty=ANALYTIC)
    report.length = complen.composition_length_analytic(spec)
    report.degree = spec.degree()
    report.order = spec.order()
    report.orbits = spec.orbit_count()
    if theorem == 'T12':
        if report.orbits is None:
            report.comparison = HYPOTHESIS_UNMET
            report.note = 'orbit count has no closed form'
            return report
    else:
        report.flags = analytic_flags(spec)
        if report.flags is None:
            report.comparison = HYPOTHESIS_UNMET
            report.note = 'no closed form classification for this construction'
            return report
        ok, reason = filters.meets_hypothesis(report.flags, theorem)
        if not ok:
            report.comparison = HYPOTHESIS_UNMET
            report.note = reason
            return report
    report.bound = bounds.bound_value(theorem, n=report.degree, r=report.orbits or 1)
    _finish(report, theorem)
    if report.comparison == EQUAL:
        report.fingerprint = _analytic_fingerprint(spec, theorem)
    return report


def _analytic_fingerprint(spec, theorem):
    kind, params = spec.kind, spec.parameters
    if theorem == 'T12':
        parts = spec.children if kind == 'direct_product' else (spec,)
        return all(p.kind == 'T' or (p.kind == 'symmetric' and p.parameters[0] in (1, 4)) for p in parts)
    if theorem == 'T13':
        return kind == 'P' or (kind == 'symmetric' and params[0] == 4)
    if theorem == 'T15':
        return kind == 'wreath_product_action' and str(spec.children[0]) == 'S(5)' and spec.children[1].kind == 'T'
    if theorem == 'T16b':
        return kind == 'semiprimitive_example'
    return False


def _verify_linear(spec, group, label, options):
    report = BoundReport(label, 'T14', SKIPPED)
    if spec is not None and not spec.is_linear():
        report.comparison = HYPOTHESIS_UNMET
        report.note = 'not a matrix group'
        return report
    if spec is None and not isinstance(group, MatGroup):
        report.comparison = HYPOTHESIS_UNMET
        report.note = 'not a matrix group'
        return report

    if spec is not None and options['use_analytic']:
        d, q = (2 ** (2 * spec.parameters[0] + 1), 2) if spec.kind == 'L' else spec.parameters
        r = 1 if spec.kind == 'L' else d
        dims = [d] if spec.kind == 'L' else [1] * d
        report.length = complen.composition_length_analytic(spec)
        report.certainty = ANALYTIC
        report.order = spec.order()
    else:
        if group is None:
            group = spec.build(degree_cap=options['degree_cap'])
        d, q = group.d, group.q
        try:
            constituents = modules.irreducible_constituents(group, budget=options['meataxe_budget'], seed=options['seed'])
        except errors.NotCompletelyReducible:
            report.comparison = HYPOTHESIS_UNMET
            report.note = 'not completely reducible'
            logger.info('%s: %s', label, report.note)
            return report
        except errors.BudgetExhausted as err:
            report.comparison = HYPOTHESIS_UNMET
            report.note = str(err)
            logger.info('%s: %s', label, report.note)
            return report
        r = len(constituents)
        dims = sorted((c.dim for c in constituents), reverse=True)
        try:
            shadow = group.permutation_shadow(degree_cap=options['degree_cap'])
            _measure(report, shadow, options)
            report.order = shadow.order()
        except errors.DegreeCapExceeded as err:
            if spec is None:
                report.note = str(err)
                return report
            report.length = complen.composition_length_analytic(spec)
            report.certainty = ANALYTIC
            report.order = spec.order()
            report.note = 'permutation shadow exceeds the degree cap; analytic length used'

    p, f = utils.prime_power(q)
    report.degree = q ** d - 1
    report.orbits = r
    report.linear = {'d': d, 'q': q, 'constituents': ','.join(str(x) for x in dims)}
    report.bound = bounds.bound_value('T14', d=d, p=p, f=f, r=r)
    _finish(report, 'T14')
    if report.comparison == EQUAL:
        report.fingerprint = _linear_fingerprint(d, q, r, dims, report.order)
    return report


def default_options(**overrides):
    options = {
        'budget': None,
        'seed': None,
        'use_oracle': False,
        'use_analytic': False,
        'degree_cap': None,
        'oracle_cap': None,
        'meataxe_budget': None,
    }
    unknown = set(overrides) - set(options)
    if unknown:
        raise TypeError(f"unknown verify options {sorted(unknown)}")
    options.update(overrides)
    return options


def verify(target, theorem, **kwargs):
    '''
    Check one group against one bound. target is a spec string, a ConstructionSpec,
    a PermGroup or a MatGroup. Every outcome is a report state; only malformed
    input raises.
    '''
    if theorem not in bounds.THEOREMS:
        raise errors.RangeError(f"unknown theorem {theorem!r}")
    options = default_options(**kwargs)
    spec, group = _resolve(target)
    label = _label(spec, group)
    try:
        if theorem == 'T14':
            return _verify_linear(spec, group, label, options)
        if options['use_analytic']:
            if spec is None:
                raise errors.SpecParseError('analytic lengths need a construction spec')
            return _verify_analytic(spec, theorem)
        return _verify_permutation(spec, group, label, theorem, options)
    except (errors.DegreeCapExceeded, errors.OracleCapExceeded, errors.RangeError) as err:
        logger.info('%s skipped: %s', label, err)
        return BoundReport(label, theorem, SKIPPED, note=str(err))


def _verify_permutation(spec, group, label, theorem, options):
    tags, known_normal = {}, []
    if spec is not None:
        tags = classify.construction_tags(spec)
        if spec.kind == 'semiprimitive_example':
            parts = constructions.semiprimitive_example_parts(spec.parameters[0])
            group, known_normal = parts.image, [parts.witness]
        else:
            group = spec.build_permutation_group(degree_cap=options['degree_cap'])
    elif isinstance(group, MatGroup):
        group = group.permutation_shadow(degree_cap=options['degree_cap'])

    orbit_lengths = [len(o) for o in perms.orbits(group)]
    report = BoundReport(label, theorem, SKIPPED, degree=group.degree, orbits=len(orbit_lengths))
    if theorem != 'T12':
        report.flags = classify.classify(group, tags=tags, known_normal=known_normal, cap=options['oracle_cap'], seed=options['seed'])
        ok, reason = filters.meets_hypothesis(report.flags, theorem)
        if not ok:
            report.comparison = HYPOTHESIS_UNMET
            report.note = reason
            logger.info('%s does not meet the hypothesis of %s: %s', label, theorem, reason)
            return report

    report.order = group.order()
    _measure(report, group, options)
    report.bound = bounds.bound_value(theorem, n=report.degree, r=report.orbits)
    _finish(report, theorem)
    if report.comparison == EQUAL:
        report.fingerprint = permutation_fingerprint(theorem, group, report.length, orbit_lengths)
    return report


class Verifier(base.BaseStage):
    '''
    Stage that verifies every group of a source against one theorem
    '''

    def __init__(self, source):
        self._source = source

        self._theorem = None
        self._options = default_options()
        self._max_groups = None
        self._only_transitive = False
        self._jobs = 1

    def against_theorem(self, theorem):
        self._theorem = theorem
        return self

    def with_budget(self, budget):
        self._options['budget'] = budget
        return self

    def with_seed(self, seed):
        self._options['seed'] = seed
        return self

    def with_degree_cap(self, degree_cap):
        self._options['degree_cap'] = degree_cap
        return self

    def use_oracle(self, set=True):
        self._options['use_oracle'] = set
        return self

    def use_analytic(self, set=True):
        self._options['use_analytic'] = set
        return self

    def limit_num_groups(self, limit):
        self._max_groups = limit
        return self

    def only_transitive(self, set=True):
        self._only_transitive = set
        return self

    def in_parallel(self, jobs):
        self._jobs = jobs
        return self

    def _num_jobs(self):
        return self._jobs

    def _check_args(self):
        if self._theorem not in bounds.THEOREMS:
            raise errors.RangeError(f"choose a theorem with against_theorem, one of {', '.join(bounds.THEOREMS)}")
        if self._jobs < 1:
            raise ValueError('jobs must be at least 1')

    def _set_spark_options(self, spark_builder):
        spark_builder.set_conf('spark.task.maxFailures', '1')
        self._source._set_spark_options(spark_builder)

    def _keep(self, item):
        if item.error is not None or not self._only_transitive:
            return True
        if item.group is None:
            return not item.spec.is_linear() and item.spec.orbit_count() == 1
        return isinstance(item.group, PermGroup) and filters.is_transitive_group(item.group)

    def _process(self, spark_manager):
        self._check_args()
        items = [item for item in self._source.fetch(spark_manager) if self._keep(item)]
        if self._max_groups is not None:
            items = items[:self._max_groups]

        task = worker_utils.VerifyTask(self._theorem, dict(self._options))
        if spark_manager is None or self._jobs <= 1:
            reports = [task(item) for item in items]
        else:
            reports = spark_manager.map_ordered(task, items)
        logger.info('verified %d group(s) against %s', len(reports), self._theorem)
        return reports

