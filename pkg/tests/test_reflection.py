import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_ase import (
    DimensionlessState,
    Prescription,
    PrescriptionVariant,
    alpha_coefficient,
    drude_permittivity,
    drude_reflection,
    impedance_ase,
    impedance_reflection,
    zero_term_free_energy,
)
from casimir_ase.constants import C_LIGHT, HBAR, K_B, PI, ZETA3
from casimir_ase.reflection import (
    DrudeKernel,
    IdealKernel,
    ImpedanceKernel,
    ZeroKernel,
    drude_R,
)
from .test_materials import make_material


class TestDimensionlessState:
    def test_geometry_derivation(self, gold):
        st_ = DimensionlessState.from_geometry(gold, 300e-9, 50.0)
        omega_a = C_LIGHT / (2 * 300e-9)
        assert st_.omega_a == pytest.approx(omega_a)
        assert st_.T_eff == pytest.approx(HBAR * omega_a / K_B)
        assert st_.tau == pytest.approx(2 * PI * 50.0 * K_B / (HBAR * omega_a))
        assert st_.xi(3) == pytest.approx(3 * st_.tau)

    def test_product_identity_within_ulps(self, gold):
        for a in (100e-9, 300e-9, 1e-6, 5e-6):
            for T in (0.01, 1.0, 50.0, 77.0):
                s = DimensionlessState.from_geometry(gold, a, T)
                tau2 = s.tau**2
                assert abs(s.A * s.B - tau2) <= 4 * math.ulp(tau2)

    def test_from_parameters(self):
        s = DimensionlessState.from_parameters(A=2.5, tau=1e-3)
        assert s.B == pytest.approx(1e-6 / 2.5)
        assert s.a is None and s.omega_a is None

    def test_invalid_inputs(self, gold):
        with pytest.raises(ValueError):
            DimensionlessState.from_parameters(A=-1.0, tau=0.1)
        with pytest.raises(ValueError):
            DimensionlessState.from_geometry(gold, 300e-9, 0.0)

    def test_impedance_scale_consistency(self, gold):
        s = DimensionlessState.from_geometry(gold, 500e-9, 10.0)
        z0 = ((gold.v / C_LIGHT) * (s.omega_a / gold.omega_p) ** 2) ** (1 / 3)
        assert s.impedance_scale == pytest.approx(z0, rel=1e-12)


class TestDrudePermittivity:
    def test_vacuum_limit(self, gold):
        eps = drude_permittivity(1e4 * gold.omega_p, gold, 3.42e13)
        assert abs(eps - 1.0) < 1e-6

    def test_unit_ratio(self):
        m = make_material(rho_ref=None)
        assert drude_permittivity(m.omega_p, m, 0.0) == pytest.approx(2.0)

    def test_gold_reference_point(self, gold):
        eps = drude_permittivity(1e15, gold, 3.42e13)
        assert eps == pytest.approx(182.48, abs=0.1)

    def test_zero_frequency_rejected(self, gold):
        with pytest.raises(ValueError):
            drude_permittivity(0.0, gold, 3.42e13)

    def test_always_above_one(self, gold):
        for z in np.logspace(12, 18, 20):
            assert drude_permittivity(z, gold, 3.42e13) > 1.0


class TestDrudeReflection:
    def test_transparent_limit(self):
        r1, r2 = drude_reflection(0.5, 2.0, 0.0)
        assert r1 == 0.0
        assert r2 == 0.0

    def test_R_equals_y(self):
        r1, _ = drude_reflection(1.0, 3.0, 3.0)
        assert r1 == pytest.approx((math.sqrt(2) - 1) / (math.sqrt(2) + 1))

    def test_perfect_reflector_limit(self):
        r1, _ = drude_reflection(1.0, 2.0, 1e9)
        assert r1 > 1 - 1e-6

    @given(
        R=st.floats(min_value=0.0, max_value=1e6),
        y=st.floats(min_value=1e-6, max_value=50.0),
        xi=st.floats(min_value=1e-6, max_value=10.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_amplitude_bounds(self, R, y, xi):
        r1, r2 = drude_reflection(xi, y, R)
        assert 0.0 <= r1 < 1.0
        assert abs(r2) <= 1.0

    def test_r1_increasing_in_R(self):
        y, xi = 1.7, 0.3
        values = [drude_reflection(xi, y, R)[0] for R in np.linspace(0.1, 50.0, 25)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_R_definition(self, gold):
        omega_a = C_LIGHT / (2 * 300e-9)
        R = drude_R(0.5, gold, omega_a, 3.42e13)
        wt = 3.42e13 / omega_a
        assert R == pytest.approx((gold.omega_p / omega_a) * math.sqrt(0.5 / (0.5 + wt)))


class TestImpedance:
    def test_zero_frequency(self, gold):
        assert impedance_ase(0.0, gold, C_LIGHT / 1e-6) == 0.0

    def test_two_thirds_scaling(self, gold):
        omega_a = C_LIGHT / 1e-6
        assert impedance_ase(8 * 0.01, gold, omega_a) == pytest.approx(
            4 * impedance_ase(0.01, gold, omega_a), rel=1e-12
        )

    def test_gold_500nm_value(self, gold):
        # xi = 1 sits beyond the strong-ASE window for gold at this gap,
        # which the function reports; the value itself is still defined.
        omega_a = C_LIGHT / (2 * 500e-9)
        with pytest.warns(UserWarning, match="validity"):
            z = impedance_ase(1.0, gold, omega_a)
        assert z == pytest.approx(1.3381e-2, rel=1e-4)

    def test_negative_frequency_rejected(self, gold):
        with pytest.raises(ValueError):
            impedance_ase(-0.1, gold, 1e15)

    def test_validity_warning(self, gold):
        omega_a = C_LIGHT / (2 * 500e-9)
        with pytest.warns(UserWarning, match="validity"):
            impedance_ase(10 * gold.Omega / omega_a, gold, omega_a)

    def test_ideal_metal_limit(self):
        r1, r2 = impedance_reflection(0.5, 2.0, 0.0)
        assert r1 == 1.0 and r2 == 1.0

    def test_continuity_at_tiny_impedance(self):
        r1, r2 = impedance_reflection(0.5, 2.0, 1e-12)
        assert abs(r1 - 1.0) < 1e-11
        assert abs(r2 - 1.0) < 1e-11

    def test_zero_crossing(self):
        xi, y = 0.3, 2.0
        r1, _ = impedance_reflection(xi, y, xi / y)
        assert r1 == pytest.approx(0.0, abs=1e-15)

    def test_diagonal_symmetry(self):
        xi = 0.7
        z = 0.01
        r1, r2 = impedance_reflection(xi, xi, z)
        assert r1 == pytest.approx((1 - z) / (1 + z))
        assert r2 == pytest.approx((1 - z) / (1 + z))

    def test_degenerate_momentum(self):
        assert impedance_reflection(0.5, 0.0, 0.01) == (1.0, 1.0)

    def test_large_impedance_warns(self):
        with pytest.warns(UserWarning, match="small-impedance"):
            impedance_reflection(0.5, 2.0, 0.5)

    def test_r1_decreasing_in_Z(self):
        xi, y = 0.4, 3.0
        vals = [impedance_reflection(xi, y, z)[0] for z in np.linspace(0.0, 0.2, 20)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    @given(
        xi=st.floats(min_value=1e-4, max_value=5.0),
        y_over_xi=st.floats(min_value=1.0, max_value=1e4),
        Z=st.floats(min_value=0.0, max_value=0.29),
    )
    @settings(max_examples=200, deadline=None)
    def test_amplitude_bounds(self, xi, y_over_xi, Z):
        r1, r2 = impedance_reflection(xi, xi * y_over_xi, Z)
        assert r1 <= 1.0
        assert abs(r2) <= 1.0


class TestZeroTerm:
    def test_zero_alpha(self):
        assert zero_term_free_energy(0.0, 1e-6, 300.0) == 0.0

    def test_zero_temperature(self):
        assert zero_term_free_energy(1.0, 1e-6, 0.0) == 0.0

    def test_reference_value(self):
        val = zero_term_free_energy(1.0, 1e-6, 300.0)
        assert val == pytest.approx(-1.98102e-10, rel=1e-4)

    def test_zeta3_constant(self):
        assert ZETA3 == 1.2020569031595943


class TestAlphaCoefficient:
    def test_unmodified(self):
        alpha, note = alpha_coefficient(Prescription.from_name("unmodified"), None, None)
        assert alpha == 0.5 and note is None

    def test_ideal_static(self):
        alpha, note = alpha_coefficient(Prescription.from_name("ideal-static"), None, None)
        assert alpha == 1.0 and note is None

    def test_plasma_like_leading_term(self, gold):
        p = Prescription.from_name("plasma-like")
        alpha, note = alpha_coefficient(p, gold, 0.01 * gold.omega_p, omega_tau=3.42e13)
        assert alpha == pytest.approx(0.96)
        assert note is not None  # dropped subleading term is recorded

    def test_plasma_like_with_hook(self, gold):
        hook = lambda x: 0.5
        p = Prescription(PrescriptionVariant.PLASMA_LIKE, subleading_hook=hook)
        omega_a = 0.01 * gold.omega_p
        wt = 3.42e13
        alpha, note = alpha_coefficient(p, gold, omega_a, omega_tau=wt)
        expected = 1 - 0.04 - (wt / gold.omega_p) * (2 / ZETA3) * 0.5
        assert alpha == pytest.approx(expected, rel=1e-12)
        assert note is None

    def test_plasma_like_ratio_guard(self, gold):
        with pytest.raises(ValueError, match="0.25"):
            alpha_coefficient(Prescription.from_name("plasma-like"), gold, 0.3 * gold.omega_p)

    def test_ordering(self, gold):
        for ratio in (1e-3, 0.01, 0.05, 0.09):
            a3, _ = alpha_coefficient(
                Prescription.from_name("plasma-like"), gold, ratio * gold.omega_p, omega_tau=0.0
            )
            assert 0.5 < a3 < 1.0


class TestKernels:
    def test_ideal_and_zero(self):
        assert IdealKernel().r2_pair(0.3, 2.0) == (1.0, 1.0)
        assert ZeroKernel().r2_pair(0.3, 2.0) == (0.0, 0.0)

    def test_impedance_kernel_matches_reflection_functions(self, gold):
        s = DimensionlessState.from_geometry(gold, 500e-9, 10.0)
        kern = ImpedanceKernel.from_state(s)
        xi, y = 3 * s.tau, 1.3
        z = impedance_ase(xi, gold, s.omega_a)
        r1, r2 = impedance_reflection(xi, y, z)
        k1, k2 = kern.r2_pair(xi, y)
        assert k1 == pytest.approx(r1**2, rel=1e-10)
        assert k2 == pytest.approx(r2**2, rel=1e-10)

    def test_drude_kernel_matches_reflection_functions(self, gold):
        s = DimensionlessState.from_geometry(gold, 500e-9, 50.0)
        wt = 3.42e12
        kern = DrudeKernel.from_state(s, gold, wt)
        xi, y = 2 * s.tau, 0.8
        R = drude_R(xi, gold, s.omega_a, wt)
        r1, r2 = drude_reflection(xi, y, R)
        k1, k2 = kern.r2_pair(xi, y)
        assert k1 == pytest.approx(r1**2, rel=1e-10)
        assert k2 == pytest.approx(r2**2, rel=1e-10)

    def test_static_limits(self):
        kern = ImpedanceKernel(0.01)
        assert kern.r2_pair(0.0, 1.0) == (1.0, 1.0)
        dk = DrudeKernel(100.0, 0.1)
        assert dk.r2_pair(0.0, 1.0) == (0.0, 1.0)

    def test_complex_arguments_supported(self):
        kern = ImpedanceKernel(0.01)
        r1sq, r2sq = kern.r2_pair(complex(1e-3, 1e-3), complex(0.5, 1e-3))
        assert isinstance(r1sq, complex)
        assert abs(r1sq) <= 1.0 + 1e-12
