import math
from fractions import Fraction

import numpy as np
import pytest

from curvint import PhaseState, SystemKind, SystemSpec


def pw_spec(kappa=0.0, m=Fraction(1), g=1.0, k_a=0.8, k_b=0.3):
    return SystemSpec(kind=SystemKind.PW, kappa=kappa, g=g,
                      k_a=k_a, k_b=k_b, m=Fraction(m))


def kepler_spec(kappa=0.0, g=1.0):
    return SystemSpec(kind=SystemKind.KEPLER, kappa=kappa, g=g)


def random_interior_states(spec, n, seed=0):
    """Interior phase points clear of both singular loci (not necessarily
    bounded); used for pointwise algebraic checks."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        if spec.kappa > 0:
            r = rng.uniform(0.2, 0.8) * math.pi / math.sqrt(spec.kappa)
        else:
            r = rng.uniform(0.3, 2.5)
        u = rng.uniform(0.15 * math.pi, 0.85 * math.pi)
        phi = u * spec.m_den / spec.m_num
        out.append(PhaseState(r, phi,
                              rng.uniform(-1.0, 1.0),
                              rng.uniform(0.1, 1.2) * rng.choice((-1, 1))))
    return out


@pytest.fixture
def standard_pw_state():
    """The hand-checked reference point of the m = 1 flat system."""
    return PhaseState(1.0, math.pi / 2, 0.0, 1.0)
