"""Conserved quantities of the curved Kepler-type systems.

Quadratic layer: Noether momenta P1/P2, angular momentum J, the pair
(J1, J2) of the separable family, the curved Runge-Lenz pair (I3, I4) of
the Kepler problem, and the (I2, I3) pair of the m = 1 deformation.

Higher-order layer: the complex radial and angular factors

    M_r    = p_r sqrt(J2)  +  i (g - J2 Cot_k(r))
    N_phi  = (k_b + J2 cos(m phi))  +  i p_phi sqrt(J2) sin(m phi)

which evolve by pure phase rotation with common rate lambda = sqrt(J2)/Sin_k^2(r)
(and m*lambda for N_phi), so that for m = p/q the product

    K = M_r^p * conj(N_phi)^q

is a constant of the motion.  Its real and imaginary parts are the third
and fourth real integrals (J3, J4).  Complex values use the builtin
`complex`; integer powers are taken by repeated multiplication, never via
log/exp branch cuts.
"""

import math

from .errors import NegativeCasimirError
from .kappa_trig import cot_k, sin_k
from .systems import (PhaseState, SystemKind, SystemSpec, angular_profile,
                      hamiltonian)


def noether_p1(state: PhaseState, spec: SystemSpec) -> float:
    """First Noether momentum; reduces to p_x in the plane."""
    ck = cot_k(spec.kappa, state.r)
    return (math.cos(state.phi) * state.p_r
            - ck * math.sin(state.phi) * state.p_phi)


def noether_p2(state: PhaseState, spec: SystemSpec) -> float:
    """Second Noether momentum; reduces to p_y in the plane."""
    ck = cot_k(spec.kappa, state.r)
    return (math.sin(state.phi) * state.p_r
            + ck * math.cos(state.phi) * state.p_phi)


def angular_j(state: PhaseState) -> float:
    """Angular momentum: canonically just p_phi."""
    return state.p_phi


def j1(state: PhaseState, spec: SystemSpec) -> float:
    """First separability integral; equals 2H by construction."""
    return 2.0 * hamiltonian(state, spec)


def j2(state: PhaseState, spec: SystemSpec) -> float:
    """Angular-sector Casimir p_phi^2 + 2 F(phi)."""
    F, _ = angular_profile(spec, state.phi)
    return state.p_phi ** 2 + 2.0 * F


def runge_lenz(state: PhaseState, spec: SystemSpec) -> tuple[float, float]:
    """Curved Runge-Lenz pair (I3, I4) of the Kepler problem."""
    J = angular_j(state)
    return (noether_p2(state, spec) * J - spec.g * math.cos(state.phi),
            noether_p1(state, spec) * J + spec.g * math.sin(state.phi))


def vc_integrals(state: PhaseState, spec: SystemSpec) -> tuple[float, float]:
    """Quadratic pair (I2, I3) of the m = 1 deformed Kepler system.

    k_a, k_b of the spec play the roles of the k2, k3 coefficients.
    """
    J = angular_j(state)
    s = math.sin(state.phi)
    c = math.cos(state.phi)
    s2 = s * s
    ck = cot_k(spec.kappa, state.r)
    i2 = J * J + (2.0 * spec.k_a + 2.0 * spec.k_b * c) / s2
    i3 = (noether_p2(state, spec) * J - spec.g * c
          + 2.0 * spec.k_a * ck * (c / s2)
          + spec.k_b * ck * ((1.0 + c * c) / s2))
    return (i2, i3)


def _sqrt_j2(state: PhaseState, spec: SystemSpec) -> float:
    J2 = j2(state, spec)
    if J2 <= 0.0:
        raise NegativeCasimirError(f"J2 = {J2} <= 0 at {state}")
    return math.sqrt(J2)


def m_r(state: PhaseState, spec: SystemSpec) -> complex:
    """Radial complex factor M_r."""
    sq = _sqrt_j2(state, spec)
    return complex(state.p_r * sq,
                   spec.g - sq * sq * cot_k(spec.kappa, state.r))


def n_phi(state: PhaseState, spec: SystemSpec) -> complex:
    """Angular complex factor N_phi."""
    sq = _sqrt_j2(state, spec)
    u = (spec.m_num * state.phi) / spec.m_den
    return complex(spec.k_b + sq * sq * math.cos(u),
                   state.p_phi * sq * math.sin(u))


def lambda_k(state: PhaseState, spec: SystemSpec) -> float:
    """Common phase-rotation rate sqrt(J2) / Sin_k(r)^2."""
    S = sin_k(spec.kappa, state.r)
    return _sqrt_j2(state, spec) / (S * S)


def _ipow(z: complex, n: int) -> complex:
    """z**n for n >= 0 by repeated multiplication."""
    out = complex(1.0, 0.0)
    for _ in range(n):
        out *= z
    return out


def k_constant(state: PhaseState, spec: SystemSpec,
               p: int | None = None, q: int | None = None) -> complex:
    """Higher-order complex constant M_r^p * conj(N_phi)^q for m = p/q.

    Defaults to the exponents of spec.m; q = 1 recovers the integer-m
    product M_r^m conj(N_phi).
    """
    if p is None:
        p = spec.m_num
    if q is None:
        q = spec.m_den
    if p < 1 or q < 1:
        raise ValueError("exponents must be positive integers")
    return _ipow(m_r(state, spec), p) * _ipow(n_phi(state, spec).conjugate(), q)


def evaluators_for(spec: SystemSpec) -> dict:
    """Named invariant evaluators appropriate to the system kind.

    Keys double as trajectory CSV column names.
    """
    evals = {"H": lambda s: hamiltonian(s, spec),
             "J2": lambda s: j2(s, spec)}
    if spec.kind is SystemKind.KEPLER:
        evals["I3"] = lambda s: runge_lenz(s, spec)[0]
        evals["I4"] = lambda s: runge_lenz(s, spec)[1]
    if spec.kind is SystemKind.VC:
        evals["I2"] = lambda s: vc_integrals(s, spec)[0]
        evals["I3"] = lambda s: vc_integrals(s, spec)[1]
    if spec.kind in (SystemKind.VC, SystemKind.PW):
        evals["K_re"] = lambda s: k_constant(s, spec).real
        evals["K_im"] = lambda s: k_constant(s, spec).imag
    return evals
