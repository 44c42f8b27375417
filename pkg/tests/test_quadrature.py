import math

import numpy as np
import pytest

from casimir_ase import (
    BranchCutError,
    DimensionlessState,
    QuadratureConfig,
    QuadratureConvergenceError,
    constants_p,
    constants_q,
    free_energy_T0,
    integral_i1,
    integral_i2,
    integral_i3,
    integral_set,
)
from casimir_ase.constants import C_LIGHT, HBAR, PI, ZETA3
from casimir_ase.quadrature import exp_tail_cutoff
from casimir_ase.reflection import IdealKernel, ImpedanceKernel, ZeroKernel, static_kernel

from . import oracles


def impedance_kernel(A, tau):
    return ImpedanceKernel.from_state(DimensionlessState.from_parameters(A, tau))


class TestTruncation:
    def test_tail_bound_holds(self):
        for eps in (1e-5, 1e-7, 1e-9):
            y = exp_tail_cutoff(eps)
            assert 2.0 * (y + 1.0) * math.exp(-y) < eps


class TestZeroReflectivity:
    def test_all_integrals_vanish(self, cfg):
        kern = ZeroKernel()
        for j in (1, 2):
            assert integral_i1(j, 0.05, kern, cfg) == 0.0
            assert integral_i2(j, 0.05, kern, cfg) == 0.0
            assert integral_i3(j, 0.05, kern, cfg) == 0.0


class TestIdealMirror:
    def test_i1_i2_reach_zeta3_at_small_tau(self, cfg):
        tau = 1e-3
        kern = IdealKernel()
        slack = abs(tau**2 * math.log(tau)) + cfg.abs_tol
        for j in (1, 2):
            assert abs(integral_i1(j, tau, kern, cfg) + ZETA3) < slack
            assert abs(integral_i2(j, tau, kern, cfg) + ZETA3) < slack

    @pytest.mark.parametrize("tau", [0.05, 0.1])
    def test_i3_is_second_order_in_tau(self, cfg, tau):
        val = integral_i3(1, tau, IdealKernel(), cfg)
        assert abs(val) < 10.0 * tau**2


class TestImpedanceAnchors:
    def test_small_A_expansions(self, cfg):
        A, tau = 0.01, 1e-6
        kern = impedance_kernel(A, tau)
        lnA, l2 = math.log(A), 2 * math.log(2)
        assert integral_i1(1, tau, kern, cfg) == pytest.approx(-ZETA3 - 2 * A * (lnA + l2 - 1), abs=1e-3)
        assert integral_i2(1, tau, kern, cfg) == pytest.approx(-ZETA3 - 1.5 * A * (lnA + l2 - 1.25), abs=1e-3)

    def test_i3_small_A_form(self, cfg):
        A, tau = 0.01, 1e-6
        q1, q2 = constants_q()
        predicted = 4 * A * (q1 * math.log(A) + q2)
        value = integral_i3(1, tau, impedance_kernel(A, tau), cfg)
        assert value == pytest.approx(predicted, rel=0.10)

    def test_large_A_expansions(self, cfg):
        A, tau = 100.0, 1e-4
        kern = impedance_kernel(A, tau)
        p1, p2 = constants_p()
        i1_form = -ZETA3 + 8 * ZETA3 * (1 / A - 6 / A**2)
        i2_form = -ZETA3 + 12 * ZETA3 * (1 / A - 12 / A**2)
        i3_form = 16 * ZETA3 * (p1 / A - 6 * p2 / A**2)
        assert integral_i1(1, tau, kern, cfg) == pytest.approx(i1_form, rel=5e-3)
        assert integral_i2(1, tau, kern, cfg) == pytest.approx(i2_form, rel=5e-3)
        assert integral_i3(1, tau, kern, cfg) == pytest.approx(i3_form, rel=2e-2)

    def test_parallel_polarization_stays_ideal(self, cfg):
        # B = tau^2/A is tiny, so the j=2 integrals sit at their mirror limits
        tau = 1e-3
        kern = impedance_kernel(10.0, tau)
        assert integral_i1(2, tau, kern, cfg) == pytest.approx(-ZETA3, abs=1e-4)
        assert integral_i2(2, tau, kern, cfg) == pytest.approx(-ZETA3, abs=1e-4)
        assert abs(integral_i3(2, tau, kern, cfg)) < 1e-4


class TestProperties:
    @pytest.mark.parametrize("A,tau", [(0.5, 0.02), (3.0, 0.05), (40.0, 0.01)])
    def test_real_integrals_nonpositive(self, cfg, A, tau):
        kern = impedance_kernel(A, tau)
        for j in (1, 2):
            assert integral_i1(j, tau, kern, cfg) <= 0.0
            assert integral_i2(j, tau, kern, cfg) <= 0.0

    def test_tolerance_honesty(self):
        A, tau = 3.0, 0.05
        kern = impedance_kernel(A, tau)
        base = QuadratureConfig(abs_tol=1e-6)
        tight = QuadratureConfig(abs_tol=5e-7)
        for fn in (integral_i1, integral_i2, integral_i3):
            coarse = fn(1, tau, kern, base)
            fine = fn(1, tau, kern, tight)
            assert abs(coarse - fine) < base.abs_tol

    def test_integral_set_collects_all(self, cfg):
        s = integral_set(0.05, impedance_kernel(2.0, 0.05), cfg)
        assert s.model == "impedance"
        assert all(math.isfinite(v) for pair in (s.I1, s.I2, s.I3) for v in pair)
        assert s.abs_tol_achieved < 5 * cfg.abs_tol


class TestOracleEquivalence:
    def test_adaptive_matches_fixed_grid(self, cfg):
        rng = np.random.default_rng(20250810)
        pairs = [
            (10 ** rng.uniform(-0.5, 1.5), 10 ** rng.uniform(-2.0, -1.0))
            for _ in range(10)
        ]
        band = 3 * cfg.abs_tol
        for A, tau in pairs:
            kern = impedance_kernel(A, tau)
            for j in (1, 2):
                assert abs(integral_i1(j, tau, kern, cfg) - oracles.oracle_i1(j, tau, kern)) < band
                assert abs(integral_i2(j, tau, kern, cfg) - oracles.oracle_i2(j, tau, kern)) < band
                assert abs(integral_i3(j, tau, kern, cfg) - oracles.oracle_i3(j, tau, kern)) < band


class TestFailureModes:
    def test_subdivision_exhaustion_reports_achieved(self):
        cfg = QuadratureConfig(abs_tol=1e-13, max_subdivisions=3)
        with pytest.raises(QuadratureConvergenceError, match="achieved"):
            integral_i1(1, 1e-3, impedance_kernel(2.0, 1e-3), cfg)

    def test_branch_cut_detected(self, cfg):
        class OverUnityKernel:
            name = "over-unity"

            def r2_pair(self, xi, y):
                return 4.0, 4.0

            def y_breakpoints(self, xi):
                return ()

            def outer_breakpoints(self, tau):
                return ()

        with pytest.raises(BranchCutError, match="xi="):
            integral_i3(1, 0.5, OverUnityKernel(), cfg)


class TestConstants:
    def test_q_constants(self):
        q1, q2 = constants_q()
        assert q1 == pytest.approx(0.0137, abs=5e-4)
        assert q2 == pytest.approx(0.0191, abs=5e-4)

    def test_p_constants(self):
        p1, p2 = constants_p()
        assert p1 == pytest.approx(0.0133, abs=5e-4)
        assert p2 == pytest.approx(0.0262, abs=5e-4)

    def test_integrand_origin_limit(self):
        # (1+t^2)^(1/6) sin(arctan(t)/3) / (e^{2 pi t} - 1) -> 1/(6 pi)
        t = 1e-8
        val = (1 + t * t) ** (1 / 6) * math.sin(math.atan(t) / 3) / math.expm1(2 * PI * t)
        assert val == pytest.approx(1.0 / (6 * PI), rel=1e-6)

    def test_determinism(self):
        assert constants_q() == constants_q()
        assert constants_p() == constants_p()


class TestZeroTemperatureEnergy:
    def test_ideal_mirror_normalization(self, cfg):
        a = 1e-6
        val = free_energy_T0(a, IdealKernel(), cfg)
        target = -PI**2 * HBAR * C_LIGHT / (720 * a**3)
        assert val == pytest.approx(target, rel=1e-3)

    def test_zero_reflectivity(self, cfg):
        assert free_energy_T0(1e-6, ZeroKernel(), cfg) == 0.0

    def test_lossy_mirror_is_less_bound(self, cfg, gold):
        a = 500e-9
        val = free_energy_T0(a, static_kernel("impedance", a, gold), cfg)
        ideal = free_energy_T0(a, IdealKernel(), cfg)
        assert ideal < val < 0.0

    def test_drude_static_kernel_path(self, cfg, gold):
        a = 500e-9
        val = free_energy_T0(a, static_kernel("drude", a, gold, omega_tau=3.42e13), cfg)
        ideal = free_energy_T0(a, IdealKernel(), cfg)
        assert ideal < val < 0.0
