import os


def _env_int(name, default):
    value = os.environ.get(name)
    if value is None or value == '':
        return default
    return int(value)


# largest permutation degree any operation will materialise
DEGREE_CAP = _env_int('COMPLENGTH_DEGREE_CAP', 2**20)

# largest group order the brute-force oracle will enumerate
ORACLE_CAP = _env_int('COMPLENGTH_ORACLE_CAP', 5000)

# random elements tried by the normal subgroup probe
PROBE_RANDOM_ELEMENTS = _env_int('COMPLENGTH_PROBE_RANDOM_ELEMENTS', 64)

# random group algebra elements tried before a MeatAxe run is undecided
MEATAXE_BUDGET = _env_int('COMPLENGTH_MEATAXE_BUDGET', 32)

DEFAULT_SEED = _env_int('COMPLENGTH_SEED', 0)

# orbit length * degree above which a chain level keeps a Schreier vector
# instead of explicit coset representatives
EXPLICIT_TRANSVERSAL_BUDGET = _env_int('COMPLENGTH_EXPLICIT_TRANSVERSAL_BUDGET', 4_000_000)

# consecutive sifted-to-identity random elements before the random pre-pass
# hands over to deterministic verification
RANDOM_SIFT_STREAK = 12

# largest k each family is realised for explicitly
EXPLICIT_RANGES = {
    'T': 3,
    'P': 1,
    'L': 2,
    'sp_ex': 1,
    'qp_ex': 1,
}

LARGEST_FIELD = 256
