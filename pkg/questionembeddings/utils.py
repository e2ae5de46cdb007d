import numpy as np

from .errors import NonFiniteValues


def derive_seed(seed, offset):
    # fold f uses seed + f, class c uses seed + c
    return int(seed) + int(offset)


def ensure_finite(values, where):
    values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise NonFiniteValues(where=where)
    return values


def format_float(value):
    return format(float(value), '.17g')
