"""Independent reference implementations and instance generators for tests."""

import itertools
import random

from muoppm.corestr import IndetString
from muoppm.oracle import InstanceGenSpec, gen_instance


def sgn(v):
    return (v > 0) - (v < 0)


def op_iso_all_pairs(x, y):
    m = len(x)
    return all(
        sgn(x[i] - x[j]) == sgn(y[i] - y[j]) for i in range(m) for j in range(i + 1, m)
    )


def first_witness_by_product(x, y):
    """First op-isomorphic pair in interleaved (x0, y0, x1, y1, ...) order."""
    per_pos = [list(itertools.product(a, b)) for a, b in zip(x.positions, y.positions)]
    for combo in itertools.product(*per_pos):
        ax = tuple(a for a, _ in combo)
        ay = tuple(b for _, b in combo)
        if op_iso_all_pairs(ax, ay):
            return ax, ay
    return None


def instances(mode, count, m_max, r_max, alpha_max, seed0=0, n_extra=0):
    """Seeded pairs with varying m, r and alphabet; n_extra lengthens the second string."""
    rng = random.Random(seed0)
    for k in range(count):
        m = rng.randint(1, m_max)
        n = m + rng.randint(0, n_extra) if n_extra else None
        spec = InstanceGenSpec(
            m=m,
            r_max=rng.randint(1, r_max),
            alphabet_size=rng.randint(1, alpha_max),
            seed=seed0 * 1_000_003 + k,
            mode=mode,
            n=n,
        )
        yield gen_instance(spec)


def S(text):
    from muoppm.corestr import parse_string

    return parse_string(text)


def det(values):
    return IndetString.from_values(values)
