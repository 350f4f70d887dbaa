'''
Classification predicates: transitivity, primitivity, quasiprimitivity,
semiprimitivity and affine type.

The last three are three-valued. "no" always comes with a witness normal
subgroup, "yes" only when every normal subgroup was seen (groups within the
oracle cap) or the construction guarantees it.
'''
from dataclasses import dataclass, field
import logging
from typing import Dict, List, Optional

from complength import actions, complen, config, errors, perms
from complength.helpers import utils
from complength.perms import PermGroup

logger = logging.getLogger(__name__)

YES = 'yes'
NO = 'no'
UNKNOWN = 'unknown'

# random elements whose normal closures are tried when hunting for witnesses
WITNESS_RANDOM_ELEMENTS = 16


@dataclass
class Classification:
    degree: int
    transitive: bool
    primitive: bool
    quasiprimitive: str = UNKNOWN
    semiprimitive: str = UNKNOWN
    # None for groups that are not primitive
    affine: Optional[str] = None
    witnesses: Dict[str, PermGroup] = field(default_factory=dict, repr=False)
    tagged: List[str] = field(default_factory=list)

    def to_record(self):
        record = {
            'transitive': self.transitive,
            'primitive': self.primitive,
            'quasiprimitive': self.quasiprimitive,
            'semiprimitive': self.semiprimitive,
            'affine': self.affine,
        }
        for flag, witness in self.witnesses.items():
            record[f"{flag}_witness_order"] = str(witness.order())
        if self.tagged:
            record['tagged'] = ','.join(self.tagged)
        return record


def derived_series(group):
    series = [group]
    while not series[-1].is_trivial():
        nxt = perms.derived_subgroup(series[-1])
        if nxt.order() == series[-1].order():
            break
        series.append(nxt)
    return series


def is_soluble(group):
    return derived_series(group)[-1].is_trivial()


def _same_subgroup(a, b):
    return a.order() == b.order() and perms.is_subgroup(a, b)


def normal_subgroups(group, cap=None):
    '''
    Every normal subgroup of a group within the oracle cap, as joins of normal
    closures of conjugacy class representatives. The trivial group comes first.
    '''
    elements = complen.group_elements(group, cap)
    found = [PermGroup.trivial(group.degree)]

    def add(sub):
        if any(_same_subgroup(other, sub) for other in found):
            return False
        found.append(sub)
        return True

    for x in complen.conjugacy_class_representatives(group, elements):
        if not x.is_identity():
            add(perms.normal_closure(group, [x]))
    queue = list(found[1:])
    while queue:
        a = queue.pop()
        for b in list(found[1:]):
            join = PermGroup(group.degree, list(a.generators) + list(b.generators))
            if add(join):
                queue.append(join)
    logger.debug('group of order %d has %d normal subgroups', group.order(), len(found))
    return found


def _minimal_among(subs):
    return [n for n in subs if not any(m.order() < n.order() and perms.is_subgroup(n, m) for m in subs)]


def minimal_normal_subgroups(group, cap=None):
    return _minimal_among(normal_subgroups(group, cap)[1:])


def _witness_candidates(group, known_normal, seed):
    for sub in known_normal:
        if not perms.is_normal(group, sub):
            raise errors.NotNormalError('a supplied witness is not a normal subgroup')
        yield sub
    for term in derived_series(group)[1:]:
        yield term
    budget = complen.ProbeBudget(WITNESS_RANDOM_ELEMENTS, seed)
    full = group.order()
    for x in complen.candidate_elements(group, budget):
        yield perms.normal_closure(group, [x], stop_order=full)


def _affine_flag(group, soluble, minimal):
    if utils.prime_power(group.degree) is None:
        return NO
    if soluble:
        return YES
    if minimal is not None:
        return YES if any(perms.is_abelian(n) for n in minimal) else NO
    return UNKNOWN


def classify(group, tags=None, known_normal=(), cap=None, seed=None):
    '''
    Flags for the group. tags maps a flag name to a value guaranteed by the
    construction; it only fills flags left unknown by the computation.
    '''
    cap = config.ORACLE_CAP if cap is None else cap
    seed = config.DEFAULT_SEED if seed is None else seed
    tags = dict(tags or {})
    transitive = perms.is_transitive(group)
    primitive = transitive and actions.is_primitive(group)
    result = Classification(group.degree, transitive, primitive)

    if group.is_trivial():
        result.quasiprimitive = result.semiprimitive = YES
    elif not transitive:
        result.quasiprimitive = NO
        result.witnesses['quasiprimitive'] = group
        if actions.is_semiregular(group):
            result.semiprimitive = YES
        else:
            result.semiprimitive = NO
            result.witnesses['semiprimitive'] = group
    elif primitive:
        result.quasiprimitive = result.semiprimitive = YES

    minimal = None
    within_cap = group.order() <= cap
    if within_cap and transitive and not group.is_trivial():
        subs = normal_subgroups(group, cap)[1:]
        minimal = _minimal_among(subs)
        if not primitive:
            _settle_from_lattice(result, subs)
    elif transitive and not primitive:
        _hunt_witnesses(result, group, known_normal, seed, settled=set(tags))

    if primitive and group.degree > 1:
        result.affine = _affine_flag(group, is_soluble(group), minimal)

    for flag, value in tags.items():
        current = getattr(result, flag)
        if current in (UNKNOWN, None):
            setattr(result, flag, value)
            result.tagged.append(flag)
        elif current != value:
            logger.warning('construction tag %s=%s contradicts the computed value %s', flag, value, current)
    logger.debug('classified degree %d group: %s', group.degree, result.to_record())
    return result


def _settle_from_lattice(result, subs):
    result.quasiprimitive = YES
    result.semiprimitive = YES
    for sub in subs:
        if perms.is_transitive(sub):
            continue
        if result.quasiprimitive == YES:
            result.quasiprimitive = NO
            result.witnesses['quasiprimitive'] = sub
        if result.semiprimitive == YES and not actions.is_semiregular(sub):
            result.semiprimitive = NO
            result.witnesses['semiprimitive'] = sub


def _hunt_witnesses(result, group, known_normal, seed, settled=()):
    full = group.order()
    flags = [flag for flag in ('quasiprimitive', 'semiprimitive') if flag not in settled]
    candidates = _witness_candidates(group, known_normal, seed)
    while any(getattr(result, flag) == UNKNOWN for flag in flags):
        sub = next(candidates, None)
        if sub is None:
            break
        if sub.is_trivial() or sub.order() == full or perms.is_transitive(sub):
            continue
        if result.quasiprimitive == UNKNOWN:
            result.quasiprimitive = NO
            result.witnesses['quasiprimitive'] = sub
        if result.semiprimitive == UNKNOWN and not actions.is_semiregular(sub):
            result.semiprimitive = NO
            result.witnesses['semiprimitive'] = sub


def construction_tags(spec):
    '''
    Flags the named construction is known to have.
    '''
    kind, params = spec.kind, spec.parameters
    if kind == 'semiprimitive_example':
        return {'semiprimitive': YES}
    if kind == 'quasiprimitive_example':
        return {'quasiprimitive': YES, 'semiprimitive': YES}
    if kind in ('symmetric', 'alternating') and params[0] >= 5:
        return {'affine': NO}
    if kind == 'wreath_product_action':
        bottom, top = spec.children
        if bottom.kind in ('symmetric', 'alternating') and bottom.parameters[0] >= 5 and top.orbit_count() == 1:
            return {'affine': NO}
    return {}
