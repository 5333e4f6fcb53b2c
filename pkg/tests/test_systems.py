import math
from fractions import Fraction

import numpy as np
import pytest

from curvint import (AngularSingularityError, DomainError, PhaseState,
                     SystemKind, SystemSpec, angular_F_m, angular_F_m_prime,
                     hamiltonian, potential, reparam_alpha_beta)
from conftest import kepler_spec, pw_spec, random_interior_states


class TestAngularProfile:
    def test_pure_ka_at_right_angle(self):
        assert angular_F_m(math.pi / 2, 2.0, 5.0, Fraction(1)) \
            == pytest.approx(2.0, rel=1e-15)

    def test_m2_diagonal_matches_cartesian_form(self):
        # at phi = pi/4 the m = 2 profile equals the Cartesian
        # (k_a-k_b)/(4x^2) + (k_a+k_b)/(4y^2) at x = y, scaled by r^2
        k_a, k_b, r = 1.3, 0.4, 1.7
        x = y = r / math.sqrt(2.0)
        cart = (k_a - k_b) / (4 * x * x) + (k_a + k_b) / (4 * y * y)
        got = angular_F_m(math.pi / 4, k_a, k_b, Fraction(2)) / r ** 2
        assert got == pytest.approx(cart, rel=1e-13)

    def test_unit_coefficients(self):
        assert angular_F_m(math.pi / 8, 1.0, 1.0, Fraction(2)) \
            == pytest.approx(2.0 + math.sqrt(2.0), rel=1e-14)

    def test_singularity_raises(self):
        with pytest.raises(AngularSingularityError):
            angular_F_m(math.pi, 1.0, 0.0, Fraction(1))
        with pytest.raises(AngularSingularityError):
            angular_F_m_prime(2 * math.pi, 1.0, 0.0, Fraction(1, 2))

    def test_derivative_matches_finite_difference(self):
        h = 1e-6
        for m in (Fraction(1), Fraction(2), Fraction(3, 2)):
            for phi in np.linspace(0.3, 1.4, 7):
                fd = (angular_F_m(phi + h, 0.8, 0.3, m)
                      - angular_F_m(phi - h, 0.8, 0.3, m)) / (2 * h)
                assert angular_F_m_prime(phi, 0.8, 0.3, m) \
                    == pytest.approx(fd, rel=1e-7, abs=1e-7)


class TestReparam:
    def test_alpha_only(self):
        k_a, k_b = reparam_alpha_beta(1.0, 0.0)
        assert (k_a, k_b) == (2.0, -2.0)
        lhs = angular_F_m(math.pi / 4, k_a, k_b, Fraction(2))
        assert lhs == pytest.approx(2.0, rel=1e-13)

    def test_zero(self):
        assert reparam_alpha_beta(0.0, 0.0) == (0.0, 0.0)

    def test_symmetric_kills_cos(self):
        assert reparam_alpha_beta(0.5, 0.5) == (2.0, 0.0)

    @pytest.mark.parametrize("alpha,beta", [(1.0, 0.0), (0.3, 0.9),
                                            (-0.2, 0.7)])
    @pytest.mark.parametrize("m", [Fraction(1), Fraction(2), Fraction(1, 2)])
    def test_trig_equality_on_grid(self, alpha, beta, m):
        # F_{2m}(phi; k_a, k_b) == alpha/cos^2(m phi) + beta/sin^2(m phi)
        k_a, k_b = reparam_alpha_beta(alpha, beta)
        mf = float(m)
        for phi in np.linspace(0.011, 3.1, 1000):
            s, c = math.sin(mf * phi), math.cos(mf * phi)
            if min(abs(s), abs(c), abs(math.sin(2 * mf * phi))) < 1e-2:
                continue
            rhs = alpha / c ** 2 + beta / s ** 2
            lhs = angular_F_m(phi, k_a, k_b, 2 * m)
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


class TestPotentialAndHamiltonian:
    def test_kepler_sphere(self):
        s = PhaseState(math.pi / 4, 0.0, 0.0, 0.0)
        assert potential(s, kepler_spec(kappa=1.0)) == pytest.approx(-1.0)
        assert hamiltonian(s, kepler_spec(kappa=1.0)) == pytest.approx(-1.0)

    def test_kepler_flat(self):
        s = PhaseState(2.0, 0.0, 0.0, 0.0)
        assert potential(s, kepler_spec(g=3.0)) == pytest.approx(-1.5)

    def test_pw_flat_cancellation(self):
        spec = pw_spec(k_a=1.0, k_b=0.0, m=1)
        s = PhaseState(1.0, math.pi / 2, 0.0, 0.0)
        assert potential(s, spec) == pytest.approx(0.0, abs=1e-15)

    def test_hand_evaluated_energy(self, standard_pw_state):
        spec = pw_spec(k_a=1.0, k_b=0.0, m=1)
        assert hamiltonian(standard_pw_state, spec) == pytest.approx(0.5)

    def test_free_geodesic(self):
        spec = SystemSpec(kind=SystemKind.FREE_GEODESIC, kappa=0.0)
        assert hamiltonian(PhaseState(1.0, 0.0, 0.0, 2.0), spec) \
            == pytest.approx(2.0)

    @pytest.mark.parametrize("kind", list(SystemKind))
    def test_flat_limit_matches_euclidean_formulas(self, kind):
        if kind is SystemKind.GENERIC_F:
            F = (lambda p: 0.5 * math.cos(p), lambda p: -0.5 * math.sin(p))
            spec = SystemSpec(kind=kind, kappa=0.0, g=1.0, generic_F=F)
        else:
            spec = SystemSpec(kind=kind, kappa=0.0, g=1.0, k_a=0.8,
                              k_b=0.3, m=Fraction(1))
        for s in random_interior_states(spec, 20, seed=3):
            T = 0.5 * (s.p_r ** 2 + (s.p_phi / s.r) ** 2)
            if kind is SystemKind.FREE_GEODESIC:
                U = 0.0
            elif kind is SystemKind.KEPLER:
                U = -1.0 / s.r
            elif kind is SystemKind.GENERIC_F:
                U = -1.0 / s.r + 0.5 * math.cos(s.phi) / s.r ** 2
            else:
                F = (0.8 + 0.3 * math.cos(s.phi)) / math.sin(s.phi) ** 2
                U = -1.0 / s.r + F / s.r ** 2
            assert hamiltonian(s, spec) == pytest.approx(T + U, rel=1e-12)

    def test_potential_ordering_across_curvatures(self):
        # sphere above plane above hyperbolic on (0, pi/2), attractive g
        for r in np.linspace(0.05, math.pi / 2 - 0.05, 200):
            s = PhaseState(r, 0.0, 0.0, 0.0)
            u1 = potential(s, kepler_spec(kappa=1.0))
            u0 = potential(s, kepler_spec(kappa=0.0))
            um = potential(s, kepler_spec(kappa=-1.0))
            assert u1 > u0 > um
        # only the flat branch vanishes at long range
        far = PhaseState(60.0, 0.0, 0.0, 0.0)
        assert abs(potential(far, kepler_spec(kappa=0.0))) < 0.02
        assert potential(far, kepler_spec(kappa=-1.0)) == pytest.approx(-1.0)


class TestSpecValidation:
    def test_m_stored_exactly(self):
        spec = pw_spec(m=Fraction(3, 2))
        assert spec.m_num == 3 and spec.m_den == 2
        assert isinstance(spec.m, Fraction)

    def test_vc_fixes_m(self):
        with pytest.raises(DomainError):
            SystemSpec(kind=SystemKind.VC, kappa=0.0, g=1.0, m=Fraction(2))

    def test_generic_requires_callables(self):
        with pytest.raises(DomainError):
            SystemSpec(kind=SystemKind.GENERIC_F, kappa=0.0, g=1.0)

    def test_non_finite_curvature_rejected(self):
        with pytest.raises(DomainError):
            pw_spec(kappa=math.nan)
