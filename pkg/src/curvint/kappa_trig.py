"""Curvature-tagged trigonometry.

One real parameter kappa selects the geometry: kappa > 0 sphere,
kappa = 0 Euclidean plane, kappa < 0 hyperbolic plane.  The functions

    cos_k(kappa, x) = cos(sqrt(kappa) x) | 1 | cosh(sqrt(-kappa) x)
    sin_k(kappa, x) = sin(sqrt(kappa) x)/sqrt(kappa) | x | sinh(sqrt(-kappa) x)/sqrt(-kappa)

interpolate smoothly through kappa = 0, so every formula built on them is
valid for all three geometries at once.
"""

import math

from .errors import DomainError, PoleError

# Below this value of |kappa| * x^2 the closed forms lose digits to
# cancellation (and divide 0/0 at kappa = 0); a two-term Taylor series is
# accurate to ~1e-16 relative there.
_SERIES_CUTOFF = 1e-8

# |cos_k| below this counts as a pole of tan_k.
_POLE_EPS = 1e-12


def _check_finite(kappa: float, x: float) -> None:
    if not (math.isfinite(kappa) and math.isfinite(x)):
        raise DomainError(f"non-finite input: kappa={kappa}, x={x}")


def cos_k(kappa: float, x: float) -> float:
    """Curvature cosine; even in x, dimensionless."""
    _check_finite(kappa, x)
    u = kappa * x * x
    if abs(u) < _SERIES_CUTOFF:
        return 1.0 - 0.5 * u
    if kappa > 0.0:
        return math.cos(math.sqrt(kappa) * x)
    return math.cosh(math.sqrt(-kappa) * x)


def sin_k(kappa: float, x: float) -> float:
    """Curvature sine; odd in x, carries units of length."""
    _check_finite(kappa, x)
    u = kappa * x * x
    if abs(u) < _SERIES_CUTOFF:
        return x * (1.0 - u / 6.0)
    if kappa > 0.0:
        s = math.sqrt(kappa)
        return math.sin(s * x) / s
    s = math.sqrt(-kappa)
    return math.sinh(s * x) / s


def tan_k(kappa: float, x: float) -> float:
    """sin_k / cos_k.  Raises PoleError where cos_k vanishes."""
    c = cos_k(kappa, x)
    if abs(c) < _POLE_EPS:
        raise PoleError(
            f"tan_k pole: cos_k({kappa}, {x}) = {c}", location=x)
    return sin_k(kappa, x) / c


def cot_k(kappa: float, x: float) -> float:
    """cos_k / sin_k.  Pole only where sin_k vanishes.

    Preferred over 1/tan_k inside potentials: the cos_k zero (equator of
    the sphere) is a regular point of every formula written with 1/Tan.
    """
    s = sin_k(kappa, x)
    if abs(s) < _POLE_EPS:
        raise PoleError(
            f"cot_k pole: sin_k({kappa}, {x}) = {s}", location=x)
    return cos_k(kappa, x) / s


def r_domain(kappa: float) -> tuple[float, float]:
    """Admissible radial interval [0, r_max).

    Half-open at the antipode pi/sqrt(kappa) for kappa > 0: the metric
    factor sin_k(r) vanishes there and every 1/Sin^2 potential diverges.
    """
    if kappa > 0.0:
        return (0.0, math.pi / math.sqrt(kappa))
    return (0.0, math.inf)
