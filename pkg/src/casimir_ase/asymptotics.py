"""Closed-form limits of the temperature correction and the maximum finder.

The relative correction G(A, tau->0) admits expansions on both sides of the
crossover:

    small A:  G = -A ((1/2 + 4 q1) ln A + ln 2 - 7/8 + 4 q2)
    large A:  G = 8 zeta(3) ((1 - 2 p1)/A - (15 - 12 p2)/A^2)

with the constants from the quadrature engine.  The trusted-range defaults
are set where the subleading term drops under a tenth of the leading one:
A <= 0.04 for the small-A form and A >= 10 (15 - 12 p2)/(1 - 2 p1) ~ 151 for
the large-A form (at A = 20 the two terms are still comparable and the form
deviates tens of percent from the numeric curve).  In between only the
numeric path is authoritative.  The perfect-mirror correction g_ideal is the
reference for the impedance-free limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from scipy.optimize import minimize_scalar

from .constants import C_LIGHT, HBAR, K_B, PI, ZETA3
from .materials import MaterialParams, impedance_form_boundary
from .quadrature import QuadratureConfig, DEFAULT_CONFIG, constants_p, constants_q


class Regime(str, Enum):
    SMALL_A = "small-a"
    LARGE_A = "large-a"
    IDEAL = "ideal"
    NUMERIC = "numeric"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class TrustedRanges:
    """A-ranges where the expansions are used by the automatic method picker.

    Defaults keep the switch discontinuity against the numeric curve under
    2 percent on both sides.
    """

    small_a_max: float = 0.04
    large_a_min: float = 151.0

    def classify(self, A: float) -> Regime:
        if A <= self.small_a_max:
            return Regime.SMALL_A
        if A >= self.large_a_min:
            return Regime.LARGE_A
        return Regime.NUMERIC


DEFAULT_RANGES = TrustedRanges()


def g_small_a(A: float) -> float:
    """Small-A relative correction; exact at A = 0."""
    if A < 0:
        raise ValueError("A must be non-negative")
    if A == 0.0:
        return 0.0
    q1, q2 = constants_q()
    return -A * ((0.5 + 4.0 * q1) * math.log(A) + math.log(2.0) - 7.0 / 8.0 + 4.0 * q2)


def g_large_a(A: float) -> float:
    """Large-A relative correction, two orders in 1/A."""
    if A <= 0:
        raise ValueError("A must be positive")
    p1, p2 = constants_p()
    return 8.0 * ZETA3 * ((1.0 - 2.0 * p1) / A - (15.0 - 12.0 * p2) / A**2)


def delta_F_small_A(A: float, alpha: float, prefactor: float) -> float:
    """Free-energy correction in the small-A limit; prefactor is kT/(8 pi a^2)."""
    return prefactor * ((1.0 - alpha) * ZETA3 - g_small_a(A))


def delta_F_large_A(A: float, alpha: float, prefactor: float) -> float:
    """Free-energy correction in the large-A limit."""
    return prefactor * ((1.0 - alpha) * ZETA3 - g_large_a(A))


def g_ideal(tau: float) -> float:
    """Perfect-mirror relative correction, zeta(3)(tau/2pi)^2 - (pi^3/45)(tau/2pi)^3."""
    if tau < 0:
        raise ValueError("tau must be non-negative")
    x = tau / (2.0 * PI)
    return ZETA3 * x**2 - (PI**3 / 45.0) * x**3


def entropy_small_a(A: float, alpha: float, a: float) -> float:
    """Low-temperature entropy per unit area from the small-A expansion [J/K/m^2].

    Includes the contribution of the temperature dependence of A itself
    (A grows as T^(1/3)); the resulting bracket carries an extra q1 term
    relative to a naive derivative at fixed A.
    """
    q1, q2 = constants_q()
    if A > 0:
        bracket = (0.5 + 4.0 * q1) * math.log(A) + math.log(2.0) - 0.75 + 4.0 * q2 + q1
    else:
        bracket = 0.0
    lead = (alpha - 1.0) * ZETA3
    return K_B / (8.0 * PI * a**2) * (lead - (4.0 / 3.0) * A * bracket)


def estimate_T_max(a: float, m: MaterialParams) -> float:
    """Order-of-magnitude estimate of the temperature of maximal correction [K].

    k T_m ~ 18 (hbar omega_a / 2 pi) (v/c)(omega_a/omega_p)^2, i.e. the
    temperature where A^3 ~ 18.
    """
    omega_a = C_LIGHT / (2.0 * a)
    return 18.0 * (HBAR * omega_a / (2.0 * PI)) * (m.v / C_LIGHT) * (omega_a / m.omega_p) ** 2 / K_B


@dataclass(frozen=True)
class MaxCorrection:
    T_m: float
    G_max: float
    T_estimate: float


def find_max_correction(
    a: float,
    m: MaterialParams,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    rel_tol: float = 1e-3,
    T_upper: float | None = None,
) -> MaxCorrection:
    """Locate the temperature maximising the relative correction G at fixed a.

    Bracketed search on ln T around the closed-form estimate, using the full
    numeric G (the maximum sits in the crossover where neither expansion is
    trusted).  Raises if the maximum is not interior to the bracket.
    """
    from .thermo import compute_G  # local import: thermo builds on this module
    from .reflection import DimensionlessState, ImpedanceKernel

    t_est = estimate_T_max(a, m)
    hi = min(T_upper if T_upper is not None else impedance_form_boundary(m), 40.0 * t_est)
    lo = t_est / 40.0
    if not lo < t_est < hi:
        raise ValueError(f"search bracket [{lo:.3g}, {hi:.3g}] K does not contain the estimate {t_est:.3g} K")

    def neg_g(ln_t):
        state = DimensionlessState.from_geometry(m, a, math.exp(ln_t))
        return -compute_G(state, ImpedanceKernel.from_state(state), cfg)

    res = minimize_scalar(neg_g, bounds=(math.log(lo), math.log(hi)), method="bounded",
                          options={"xatol": rel_tol})
    ln_tm = res.x
    pad = 3.0 * rel_tol
    if not math.log(lo) + pad < ln_tm < math.log(hi) - pad:
        raise RuntimeError(
            f"no interior maximum of G in T bracket [{lo:.3g}, {hi:.3g}] K "
            f"(search stopped at {math.exp(ln_tm):.3g} K)"
        )
    return MaxCorrection(T_m=math.exp(ln_tm), G_max=-res.fun, T_estimate=t_est)
