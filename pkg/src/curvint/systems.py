"""Potentials and Hamiltonians on the constant-curvature surfaces.

Five system kinds share one separable radial/angular shape:

    H = (p_r^2 + p_phi^2 / Sin_k(r)^2) / 2 - g / Tan_k(r) + F(phi) / Sin_k(r)^2

with F identically zero for free geodesics and the Kepler problem, the
deformed angular profile F_m for the noncentral Kepler-related family
(of which the m = 1 member is the classic two-center-like potential),
and a caller-supplied profile for the generic separable family.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .errors import AngularSingularityError, DomainError
from .kappa_trig import cot_k, sin_k

# |sin(m phi)| below this counts as sitting on the angular singularity.
_ANGULAR_EPS = 1e-12


class SystemKind(Enum):
    FREE_GEODESIC = "free"
    KEPLER = "kepler"
    VC = "vc"
    PW = "pw"
    GENERIC_F = "generic"


@dataclass(frozen=True)
class PhaseState:
    """Point of phase space in geodesic polar coordinates."""
    r: float
    phi: float
    p_r: float
    p_phi: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.r, self.phi, self.p_r, self.p_phi)

    @staticmethod
    def from_tuple(y) -> "PhaseState":
        return PhaseState(float(y[0]), float(y[1]), float(y[2]), float(y[3]))


@dataclass(frozen=True)
class SystemSpec:
    """Immutable description of which system is being simulated.

    `m` is kept as an exact Fraction p/q (never a float): closure and the
    exponent pair of the higher-order constant depend on exact rationality.
    """
    kind: SystemKind
    kappa: float = 0.0
    g: float = 0.0
    k_a: float = 0.0
    k_b: float = 0.0
    m: Fraction = Fraction(1)
    # (F, dF/dphi) pair for GENERIC_F
    generic_F: Optional[tuple[Callable[[float], float],
                              Callable[[float], float]]] = None

    def __post_init__(self):
        if not math.isfinite(self.kappa):
            raise DomainError(f"non-finite curvature {self.kappa}")
        m = Fraction(self.m)
        object.__setattr__(self, "m", m)
        if self.kind in (SystemKind.PW, SystemKind.VC):
            if m.numerator < 1 or m.denominator < 1:
                raise DomainError(f"m must be a positive rational, got {m}")
        if self.kind is SystemKind.VC and m != 1:
            raise DomainError("the VC system fixes m = 1")
        if self.kind is SystemKind.GENERIC_F and self.generic_F is None:
            raise DomainError("GENERIC_F requires a (F, dF) callable pair")

    @property
    def m_num(self) -> int:
        return self.m.numerator

    @property
    def m_den(self) -> int:
        return self.m.denominator

    @property
    def has_angular_term(self) -> bool:
        return self.kind in (SystemKind.VC, SystemKind.PW,
                             SystemKind.GENERIC_F)


def angular_F_m(phi: float, k_a: float, k_b: float, m: Fraction) -> float:
    """Deformed angular profile k_a/sin^2(m phi) + k_b cos(m phi)/sin^2(m phi)."""
    u = (m.numerator * phi) / m.denominator if isinstance(m, Fraction) \
        else float(m) * phi
    s = math.sin(u)
    if abs(s) < _ANGULAR_EPS:
        raise AngularSingularityError(
            f"sin(m*phi) = {s} at phi = {phi}, m = {m}")
    return (k_a + k_b * math.cos(u)) / (s * s)


def angular_F_m_prime(phi: float, k_a: float, k_b: float, m: Fraction) -> float:
    """d/dphi of angular_F_m."""
    mf = m.numerator / m.denominator if isinstance(m, Fraction) else float(m)
    u = mf * phi
    s = math.sin(u)
    if abs(s) < _ANGULAR_EPS:
        raise AngularSingularityError(
            f"sin(m*phi) = {s} at phi = {phi}, m = {m}")
    c = math.cos(u)
    return -mf * (2.0 * k_a * c + k_b * (1.0 + c * c)) / (s * s * s)


def reparam_alpha_beta(alpha: float, beta: float) -> tuple[float, float]:
    """Map the (alpha, beta) angular coefficients to (k_a, k_b).

    With k_a = 2(alpha+beta), k_b = 2(beta-alpha), the profile at doubled
    index satisfies F_2m'(phi; k_a, k_b) = alpha/cos^2(m' phi) + beta/sin^2(m' phi).
    """
    return (2.0 * (alpha + beta), 2.0 * (beta - alpha))


def angular_profile(spec: SystemSpec, phi: float) -> tuple[float, float]:
    """(F(phi), F'(phi)) for the given system; (0, 0) for central kinds."""
    if spec.kind in (SystemKind.FREE_GEODESIC, SystemKind.KEPLER):
        return (0.0, 0.0)
    if spec.kind is SystemKind.GENERIC_F:
        F, dF = spec.generic_F
        return (F(phi), dF(phi))
    if spec.k_a == 0.0 and spec.k_b == 0.0:
        # identically zero profile: no angular singularity exists
        return (0.0, 0.0)
    return (angular_F_m(phi, spec.k_a, spec.k_b, spec.m),
            angular_F_m_prime(phi, spec.k_a, spec.k_b, spec.m))


def potential(state: PhaseState, spec: SystemSpec) -> float:
    """U(r, phi) for the given system kind."""
    if spec.kind is SystemKind.FREE_GEODESIC:
        return 0.0
    U = -spec.g * cot_k(spec.kappa, state.r)
    if spec.has_angular_term:
        S = sin_k(spec.kappa, state.r)
        F, _ = angular_profile(spec, state.phi)
        U += F / (S * S)
    return U


def hamiltonian(state: PhaseState, spec: SystemSpec) -> float:
    """Total energy (p_r^2 + p_phi^2/Sin_k^2)/2 + U."""
    S = sin_k(spec.kappa, state.r)
    T = 0.5 * (state.p_r ** 2 + (state.p_phi / S) ** 2)
    return T + potential(state, spec)
