"""Dielectric response, surface impedance, reflection coefficients and the n=0 rules.

Frequencies are made dimensionless with omega_a = c/(2a); the momentum-like
integration variable y runs over [xi, inf).  Three reflection models are
provided as kernels for the quadrature engine:

* ``impedance`` -- nonlocal metal described by the low-frequency surface
  impedance Z(i zeta_n) = ((v/c) (omega_a/omega_p)^2 xi_n^2)^(1/3);
* ``drude``     -- local Drude permittivity;
* ``ideal``     -- perfect mirror, r1^2 = r2^2 = 1.

The zero-frequency term of the thermal sum is never computed from these
kernels; it is fixed by an explicit prescription through ``alpha_coefficient``
and ``zero_term_free_energy``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .constants import C_LIGHT, HBAR, K_B, PI, ZETA3
from .materials import MaterialParams

# Leontovich boundary condition is trusted only for small impedance.
LEONTOVICH_MAX_Z = 0.3


class ReflectionModel(str, Enum):
    IMPEDANCE = "impedance"
    DRUDE = "drude"
    IDEAL = "ideal"


@dataclass(frozen=True)
class DimensionlessState:
    """Derived dimensionless quantities consumed by the thermal integrals.

    tau      = 2 pi T / T_eff with k T_eff = hbar omega_a
    A        = ((c/v) (omega_p/omega_a)^2 tau)^(1/3), controls the transverse
               polarization integrals
    B        = ((v/c) (omega_a/omega_p)^2 tau^5)^(1/3) = tau^2 / A, controls
               the parallel polarization
    The physical fields (a, T, omega_a, T_eff) are None for states built
    directly from (A, tau).
    """

    tau: float
    A: float
    B: float
    a: float | None = None
    T: float | None = None
    omega_a: float | None = None
    T_eff: float | None = None

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if not (self.A > 0 and self.B > 0):
            raise ValueError("A and B must be positive")

    def xi(self, n: int) -> float:
        """Dimensionless Matsubara frequency n * tau."""
        return n * self.tau

    @property
    def impedance_scale(self) -> float:
        """z0 such that Z(xi) = z0 * xi^(2/3); equals tau^(1/3)/A."""
        return self.tau ** (1.0 / 3.0) / self.A

    @classmethod
    def from_geometry(cls, m: MaterialParams, a: float, T: float) -> "DimensionlessState":
        if a <= 0:
            raise ValueError("separation must be positive")
        if T <= 0:
            raise ValueError("temperature must be positive (T=0 is handled by the trivial path)")
        omega_a = C_LIGHT / (2.0 * a)
        T_eff = HBAR * omega_a / K_B
        tau = 2.0 * PI * T / T_eff
        ratio2 = (m.omega_p / omega_a) ** 2
        A = ((C_LIGHT / m.v) * ratio2 * tau) ** (1.0 / 3.0)
        # B follows from the exact relation A B = tau^2; evaluating its own
        # cube-root formula instead would cost ~10 ulp on the identity.
        return cls(tau=tau, A=A, B=tau**2 / A, a=a, T=T, omega_a=omega_a, T_eff=T_eff)

    @classmethod
    def from_parameters(cls, A: float, tau: float) -> "DimensionlessState":
        return cls(tau=tau, A=A, B=tau**2 / A)


# --------------------------------------------------------------------------
# permittivity, impedance, reflection amplitudes
# --------------------------------------------------------------------------

def drude_permittivity(zeta: float, m: MaterialParams, omega_tau: float) -> float:
    """Drude permittivity at imaginary frequency, 1 + omega_p^2/(zeta(zeta+omega_tau)).

    zeta = 0 is rejected: the static limit is prescription-defined and must
    not be reached through this function.
    """
    if zeta <= 0:
        raise ValueError("zeta must be positive; the zero-frequency term is set by prescription")
    return 1.0 + m.omega_p**2 / (zeta * (zeta + omega_tau))


def drude_R(xi, m: MaterialParams, omega_a: float, omega_tau: float):
    """Reflectivity scale R(xi) = (omega_p/omega_a) sqrt(xi/(xi + omega_tau/omega_a))."""
    wt = omega_tau / omega_a
    return (m.omega_p / omega_a) * (xi / (xi + wt)) ** 0.5


def drude_reflection(xi, y, R):
    """Drude amplitudes (r1, r2) at dimensionless frequency xi and momentum y."""
    s = (R * R + y * y) ** 0.5
    r1 = (s - y) / (s + y)
    g = 1.0 + (R / xi) * (R / xi)
    r2 = (s - g * y) / (s + g * y)
    return r1, r2


def impedance_ase(xi_n: float, m: MaterialParams, omega_a: float) -> float:
    """Surface impedance at imaginary frequency, ((v/c)(omega_a/omega_p)^2 xi_n^2)^(1/3).

    Valid for xi_n < Omega/omega_a; outside that window a warning is emitted
    but the value is still returned (the temperature-dependent integrals only
    probe xi ~ tau, which stays inside for all supported inputs).
    """
    if xi_n < 0:
        raise ValueError("xi_n must be non-negative")
    if xi_n * omega_a >= m.Omega:
        warnings.warn(
            f"impedance evaluated at xi_n={xi_n:.3g} beyond its validity window "
            f"xi < Omega/omega_a = {m.Omega / omega_a:.3g}",
            stacklevel=2,
        )
    return ((m.v / C_LIGHT) * (omega_a / m.omega_p) ** 2 * xi_n**2) ** (1.0 / 3.0)


def impedance_reflection(xi_n, y, Z):
    """Impedance-boundary amplitudes (r1, r2); y = 0 returns (1, 1) by continuity."""
    if abs(Z) >= LEONTOVICH_MAX_Z:
        warnings.warn(f"impedance |Z|={abs(Z):.3g} outside the small-impedance regime", stacklevel=2)
    if y == 0:
        return 1.0, 1.0
    r1 = (xi_n - y * Z) / (xi_n + y * Z)
    r2 = (y - xi_n * Z) / (y + xi_n * Z)
    return r1, r2


# --------------------------------------------------------------------------
# n = 0 prescriptions
# --------------------------------------------------------------------------

class PrescriptionVariant(str, Enum):
    UNMODIFIED = "unmodified"        # r1^2 = 0, r2^2 = 1 at zero frequency
    IDEAL_STATIC = "ideal-static"    # r1^2 = r2^2 = 1 (static limit of ideal metal)
    PLASMA_LIKE = "plasma-like"      # r1^2(0,y) -> r1^2(y,y), plasma-model limit


@dataclass(frozen=True)
class Prescription:
    """Zero-frequency rule plus an optional hook for the plasma-like subleading term.

    The hook supplies the slowly varying function of omega_tau/omega_a whose
    closed form is outside this package; without it the relaxation-frequency
    correction to alpha is dropped and the drop is recorded in the returned
    note.
    """

    variant: PrescriptionVariant = PrescriptionVariant.IDEAL_STATIC
    subleading_hook: Callable[[float], float] | None = None

    @classmethod
    def from_name(cls, name: str) -> "Prescription":
        return cls(variant=PrescriptionVariant(name))


def alpha_coefficient(
    p: Prescription,
    m: MaterialParams | None,
    omega_a: float | None,
    omega_tau: float | None = None,
) -> tuple[float, str | None]:
    """Static-term coefficient alpha for the given prescription.

    Returns (alpha, note); the note is non-None when the plasma-like
    subleading term was omitted because no hook was supplied.
    """
    if p.variant is PrescriptionVariant.UNMODIFIED:
        return 0.5, None
    if p.variant is PrescriptionVariant.IDEAL_STATIC:
        return 1.0, None
    if m is None or omega_a is None:
        raise ValueError("plasma-like prescription needs material parameters and omega_a")
    ratio = omega_a / m.omega_p
    if ratio >= 0.25:
        raise ValueError(
            f"plasma-like alpha is a small-ratio expansion; omega_a/omega_p = {ratio:.3g} >= 0.25"
        )
    alpha = 1.0 - 4.0 * ratio
    note = None
    if p.subleading_hook is not None:
        if omega_tau is None:
            raise ValueError("plasma-like subleading term requires omega_tau")
        alpha -= (omega_tau / m.omega_p) * (2.0 / ZETA3) * p.subleading_hook(omega_tau / omega_a)
    elif omega_tau:
        note = "relaxation-frequency subleading term omitted (no hook provided)"
    return alpha, note


def zero_term_free_energy(alpha: float, a: float, T: float) -> float:
    """Zero-frequency contribution to the free energy per unit area [J/m^2]."""
    if a <= 0:
        raise ValueError("separation must be positive")
    if T < 0:
        raise ValueError("temperature must be non-negative")
    return -alpha * (K_B * T / (8.0 * PI * a**2)) * ZETA3


# --------------------------------------------------------------------------
# kernels used by the quadrature engine
# --------------------------------------------------------------------------

class IdealKernel:
    """Perfect mirror: r1^2 = r2^2 = 1 for every argument."""

    name = "ideal"

    def r2_pair(self, xi, y):
        return 1.0, 1.0

    def y_breakpoints(self, xi):
        return ()

    def outer_breakpoints(self, tau):
        return ()


class ZeroKernel:
    """Zero reflectivity; the thermal integrals vanish identically."""

    name = "zero"

    def r2_pair(self, xi, y):
        return 0.0, 0.0

    def y_breakpoints(self, xi):
        return ()

    def outer_breakpoints(self, tau):
        return ()


class ImpedanceKernel:
    """Surface-impedance reflection with Z(xi) = z0 * xi^(2/3).

    Works for real and complex arguments (principal branch of the fractional
    power); the transverse coefficient depends on xi only through the ratio
    xi/Z, whose value at xi = tau is the parameter A.
    """

    name = "impedance"

    def __init__(self, z0: float):
        if z0 <= 0:
            raise ValueError("impedance scale must be positive")
        self.z0 = z0

    @classmethod
    def from_state(cls, state: DimensionlessState) -> "ImpedanceKernel":
        return cls(state.impedance_scale)

    def impedance(self, xi):
        return self.z0 * xi ** (2.0 / 3.0)

    def r2_pair(self, xi, y):
        if xi == 0:
            return 1.0, 1.0
        Z = self.z0 * xi ** (2.0 / 3.0)
        yZ = y * Z
        r1 = (xi - yZ) / (xi + yZ)
        xZ = xi * Z
        r2 = (y - xZ) / (y + xZ)
        return r1 * r1, r2 * r2

    def y_breakpoints(self, xi):
        # r1 crosses zero at y = xi/Z and varies on the sqrt of that scale.
        scale = abs(xi) ** (1.0 / 3.0) / self.z0
        return (scale, scale**0.5)

    def outer_breakpoints(self, tau):
        # inner structure reaches y ~ 1 when (xi/Z)(tau t) = A t^(1/3) ~ 1
        A3 = tau / self.z0**3
        t_star = 1.0 / A3
        return (t_star,) if 1e-12 < t_star < 1.0 else ()


class DrudeKernel:
    """Local Drude reflection, parameterised by omega_p/omega_a and omega_tau/omega_a."""

    name = "drude"

    def __init__(self, wp_over_wa: float, wt_over_wa: float):
        if wp_over_wa <= 0:
            raise ValueError("omega_p/omega_a must be positive")
        if wt_over_wa < 0:
            raise ValueError("omega_tau/omega_a must be non-negative")
        self.wp2 = wp_over_wa**2
        self.wt = wt_over_wa

    @classmethod
    def from_state(cls, state: DimensionlessState, m: MaterialParams, omega_tau: float) -> "DrudeKernel":
        if state.omega_a is None:
            raise ValueError("Drude kernel needs a geometric state (omega_a)")
        return cls(m.omega_p / state.omega_a, omega_tau / state.omega_a)

    def r2_pair(self, xi, y):
        if xi == 0:
            return 0.0, 1.0
        R2 = self.wp2 * xi / (xi + self.wt)
        s = (R2 + y * y) ** 0.5
        r1 = (s - y) / (s + y)
        g = 1.0 + R2 / (xi * xi)
        r2 = (s - g * y) / (s + g * y)
        return r1 * r1, r2 * r2

    def y_breakpoints(self, xi):
        R2 = self.wp2 * abs(xi) / (abs(xi) + self.wt)
        return (R2**0.5,)

    def outer_breakpoints(self, tau):
        return ()


def build_kernel(
    model: ReflectionModel | str,
    state: DimensionlessState,
    m: MaterialParams | None = None,
    omega_tau: float | None = None,
):
    """Construct the reflection kernel for the requested model at this state."""
    model = ReflectionModel(model)
    if model is ReflectionModel.IDEAL:
        return IdealKernel()
    if model is ReflectionModel.IMPEDANCE:
        return ImpedanceKernel.from_state(state)
    if m is None or omega_tau is None:
        raise ValueError("Drude kernel requires material parameters and omega_tau")
    return DrudeKernel.from_state(state, m, omega_tau)


def static_kernel(
    model: ReflectionModel | str,
    a: float,
    m: MaterialParams | None = None,
    omega_tau: float | None = None,
):
    """Kernel for a given gap without a temperature (zero-T reference energy).

    The Drude variant defaults omega_tau to the material's residual value.
    """
    model = ReflectionModel(model)
    if model is ReflectionModel.IDEAL:
        return IdealKernel()
    if m is None:
        raise ValueError(f"{model.value} kernel requires material parameters")
    omega_a = C_LIGHT / (2.0 * a)
    if model is ReflectionModel.IMPEDANCE:
        z0 = ((m.v / C_LIGHT) * (omega_a / m.omega_p) ** 2) ** (1.0 / 3.0)
        return ImpedanceKernel(z0)
    wt = m.omega_tau_0 if omega_tau is None else omega_tau
    return DrudeKernel(m.omega_p / omega_a, wt / omega_a)
