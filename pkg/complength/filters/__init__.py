from complength import perms
from complength.filters import classify


def is_transitive_group(group):
    return perms.is_transitive(group)


def meets_hypothesis(flags, theorem):
    '''
    Whether the classification flags satisfy the hypothesis of the named bound.
    Returns (ok, reason).
    '''
    if theorem == 'T12':
        return True, None
    if theorem == 'T13':
        return (True, None) if flags.primitive else (False, 'not primitive')
    if theorem == 'T15':
        if not flags.primitive:
            return False, 'not primitive'
        if flags.affine != classify.NO:
            return False, f"affine type is {flags.affine}"
        return True, None
    if theorem == 'T16a':
        if flags.quasiprimitive != classify.YES:
            return False, f"quasiprimitive is {flags.quasiprimitive}"
        if flags.primitive:
            return False, 'primitive'
        return True, None
    if theorem == 'T16b':
        if flags.semiprimitive != classify.YES:
            return False, f"semiprimitive is {flags.semiprimitive}"
        if flags.quasiprimitive != classify.NO:
            return False, f"quasiprimitive is {flags.quasiprimitive}"
        return True, None
    raise ValueError(f"{theorem} is not a permutation group bound")
