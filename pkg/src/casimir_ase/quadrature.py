"""Adaptive evaluation of the thermal integrals, their expansion constants,
and the zero-temperature reference energy.

Three integrals per polarization j enter the temperature-dependent part of
the free energy (y is the dimensionless momentum, tau the reduced
temperature, r_j the reflection amplitude of the selected kernel):

    i1 = int_tau^inf dy y ln(1 - r_j^2(tau, y) e^-y)
    i2 = int_0^1 dt int_{tau t}^inf dy y ln(1 - r_j^2(tau t, y) e^-y)
    i3 = imaginary-part term of the shifted-index Abel-Plana transform,
         a double integral along xi = tau(1 + it), y -> y + i tau t with
         weight 1/(e^{2 pi t} - 1)

Semi-infinite ranges are truncated where the rigorous bound
|y ln(1 - r^2 e^-y)| <= 2 y e^-y falls below a tenth of the requested
absolute tolerance, then handed to adaptive Gauss-Kronrod quadrature.
Inner integrals of nested pairs run at a tenth of the outer tolerance.

Sign conventions are pinned by two exact limits, both enforced in the test
suite: zero reflectivity makes every integral vanish, and the perfect-mirror
(small tau) limit drives i1 and i2 to -zeta(3) while i3 is O(tau^2).  The
orientation of the imaginary part in i3 is the one for which the assembled
correction reproduces the known perfect-mirror temperature correction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.integrate import quad

from .constants import C_LIGHT, HBAR, PI


class QuadratureConvergenceError(RuntimeError):
    """Adaptive subdivision failed to reach the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved absolute error {achieved:.3e})")
        self.achieved = achieved


class BranchCutError(RuntimeError):
    """The complex integrand approached the logarithm's branch cut."""

    def __init__(self, xi, y, value):
        super().__init__(
            f"1 - r^2 e^(-y) at xi={xi!r}, y={y!r} lies on the branch cut "
            f"neighbourhood (value {value!r}); the analytic continuation is unsafe"
        )
        self.point = (xi, y)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation policy for the thermal integrals.

    abs_tol           target absolute error per integral
    cut_margin        truncation bounds are pushed below abs_tol/cut_margin
    t_cutoff          fixed upper limit for the exponentially weighted outer
                      integrals; None selects it from the weight bound
    max_subdivisions  QUADPACK subdivision limit
    """

    abs_tol: float = 1e-6
    cut_margin: float = 10.0
    t_cutoff: float | None = None
    max_subdivisions: int = 400

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not self.cut_margin >= 1:
            raise ValueError("cut_margin must be >= 1")


@dataclass(frozen=True)
class IntegralSet:
    """All six thermal integrals at one state, with the worst achieved error."""

    I1: tuple[float, float]
    I2: tuple[float, float]
    I3: tuple[float, float]
    abs_tol_achieved: float
    model: str


DEFAULT_CONFIG = QuadratureConfig()


# --------------------------------------------------------------------------
# primitives
# --------------------------------------------------------------------------

def _quad(f, lo, hi, epsabs, limit, points=None):
    """quad() with absolute-error control; raises when the estimate misses it."""
    if points:
        pts = sorted(p for p in points if lo < p < hi)
        points = pts or None
    out = quad(f, lo, hi, epsabs=epsabs, epsrel=0.0, limit=limit, points=points, full_output=True)
    val, err = out[0], out[1]
    if not math.isfinite(val) or err > max(epsabs, 1e-14):
        raise QuadratureConvergenceError(
            f"adaptive quadrature on [{lo:.3g}, {hi:.3g}] did not reach epsabs={epsabs:.1e}",
            achieved=err,
        )
    return val, err


def exp_tail_cutoff(eps: float) -> float:
    """Smallest Y with int_Y^inf 2 y e^-y dy = 2 (Y+1) e^-Y < eps."""
    y = 20.0
    for _ in range(4):
        y = math.log(2.0 * (y + 1.0) / eps)
    return y + 1.0


def _log1m_guarded(z, xi, y):
    """Principal log(1 - z), refusing to evaluate in a wedge around the branch cut."""
    w = 1.0 - z
    re, im = w.real, w.imag
    if w == 0 or (re <= 0.0 and abs(im) <= 0.3 * abs(re)):
        raise BranchCutError(xi, y, z)
    return cmath.log(w)


# --------------------------------------------------------------------------
# thermal integrals
# --------------------------------------------------------------------------

def _i1(polarization, tau, kernel, cfg):
    jdx = polarization - 1
    eps_cut = cfg.abs_tol / cfg.cut_margin
    ycut = exp_tail_cutoff(eps_cut)

    def f(y):
        rsq = kernel.r2_pair(tau, y)[jdx]
        x = rsq * math.exp(-y)
        if x >= 1.0:  # only reachable by rounding at y below ~1e-16
            return 0.0
        return y * math.log1p(-x)

    val, err = _quad(f, tau, ycut, epsabs=cfg.abs_tol, limit=cfg.max_subdivisions,
                     points=kernel.y_breakpoints(tau))
    return val, err + eps_cut


def _i2(polarization, tau, kernel, cfg):
    jdx = polarization - 1
    eps_cut = cfg.abs_tol / cfg.cut_margin
    ycut = exp_tail_cutoff(eps_cut)
    inner_tol = cfg.abs_tol / 10.0

    def inner(t):
        xi = tau * t

        def f(y):
            rsq = kernel.r2_pair(xi, y)[jdx]
            x = rsq * math.exp(-y)
            if x >= 1.0:
                return 0.0
            return y * math.log1p(-x)

        val, _ = _quad(f, xi, ycut, epsabs=inner_tol, limit=cfg.max_subdivisions,
                       points=kernel.y_breakpoints(xi))
        return val

    val, err = _quad(inner, 0.0, 1.0, epsabs=cfg.abs_tol, limit=cfg.max_subdivisions,
                     points=kernel.outer_breakpoints(tau))
    return val, err + inner_tol + eps_cut


def _auto_t_cutoff(tau, cfg):
    eps = cfg.abs_tol / cfg.cut_margin
    tc = 4.0
    for _ in range(3):
        bound = 6.0 * (1.0 + tau * tc)
        tc = math.log(bound / (2.0 * PI * eps)) / (2.0 * PI)
    return tc + 0.5


def _i3(polarization, tau, kernel, cfg):
    jdx = polarization - 1
    eps_cut = cfg.abs_tol / cfg.cut_margin
    ycut = exp_tail_cutoff(eps_cut)
    tcut = cfg.t_cutoff if cfg.t_cutoff is not None else _auto_t_cutoff(tau, cfg)
    inner_tol = cfg.abs_tol / 10.0

    def inner_im(t):
        xic = complex(tau, tau * t)
        shift = 1j * tau * t
        phase = cmath.exp(-shift)

        def f(y):
            yc = y + shift
            rsq = kernel.r2_pair(xic, yc)[jdx]
            z = rsq * math.exp(-y) * phase
            return (yc * _log1m_guarded(z, xic, yc)).imag

        val, _ = _quad(f, tau, ycut, epsabs=inner_tol, limit=cfg.max_subdivisions,
                       points=kernel.y_breakpoints(xic))
        return val

    def g(t):
        return inner_im(t) / math.expm1(2.0 * PI * t)

    val, err = _quad(g, 0.0, tcut, epsabs=cfg.abs_tol, limit=cfg.max_subdivisions)
    return -2.0 * val, 2.0 * (err + inner_tol) + eps_cut


def integral_i1(polarization: int, tau: float, kernel, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Single thermal integral at the first Matsubara frequency (xi = tau)."""
    _check_args(polarization, tau)
    return _i1(polarization, tau, kernel, cfg)[0]


def integral_i2(polarization: int, tau: float, kernel, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Frequency-averaged thermal integral (outer variable t over [0, 1])."""
    _check_args(polarization, tau)
    return _i2(polarization, tau, kernel, cfg)[0]


def integral_i3(polarization: int, tau: float, kernel, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Imaginary-part term of the shifted-index transform.

    Twice the imaginary part of the weighted double integral, oriented so the
    small-A limit reproduces 4A(q1 ln A + q2) with the constants from
    ``constants_q``.  Raises BranchCutError when the integrand's logarithm
    cannot be continued safely.
    """
    _check_args(polarization, tau)
    return _i3(polarization, tau, kernel, cfg)[0]


def _check_args(polarization, tau):
    if polarization not in (1, 2):
        raise ValueError("polarization must be 1 or 2")
    if not tau > 0:
        raise ValueError("tau must be positive")


def integral_set(tau: float, kernel, cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralSet:
    """Evaluate all six integrals at one state."""
    _check_args(1, tau)
    v1 = [_i1(j, tau, kernel, cfg) for j in (1, 2)]
    v2 = [_i2(j, tau, kernel, cfg) for j in (1, 2)]
    v3 = [_i3(j, tau, kernel, cfg) for j in (1, 2)]
    achieved = max(e for _, e in v1 + v2 + v3)
    return IntegralSet(
        I1=(v1[0][0], v1[1][0]),
        I2=(v2[0][0], v2[1][0]),
        I3=(v3[0][0], v3[1][0]),
        abs_tol_achieved=achieved,
        model=getattr(kernel, "name", type(kernel).__name__),
    )


# --------------------------------------------------------------------------
# expansion constants
# --------------------------------------------------------------------------

def _angle(t):
    return math.atan(t) / 3.0


@lru_cache(maxsize=4)
def constants_q(cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """Constants (q1, q2) of the small-A expansion's log coefficient.

    q1 = int_0^inf dt (1+t^2)^(1/6) sin(theta) / (e^{2 pi t} - 1)
    q2 = same weight against sin(theta)(ln(4 (1+t^2)^(1/6)) - 1) + theta cos(theta)
    with theta = arctan(t)/3.  Evaluated once to 1e-12 absolute and cached.
    """

    def f1(t):
        return (1 + t * t) ** (1.0 / 6.0) * math.sin(_angle(t)) / math.expm1(2 * PI * t)

    def f2(t):
        th = _angle(t)
        mfac = (1 + t * t) ** (1.0 / 6.0)
        return mfac * (math.sin(th) * (math.log(4.0 * mfac) - 1.0) + th * math.cos(th)) / math.expm1(2 * PI * t)

    q1, _ = _quad(f1, 0.0, 20.0, epsabs=1e-12, limit=200)
    q2, _ = _quad(f2, 0.0, 20.0, epsabs=1e-12, limit=200)
    return q1, q2


@lru_cache(maxsize=4)
def constants_p(cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """Constants (p1, p2) of the large-A expansion.

    p1 = int_0^inf dt sin(theta) / ((e^{2 pi t} - 1)(1+t^2)^(1/6))
    p2 = int_0^inf dt sin(2 theta) / ((e^{2 pi t} - 1)(1+t^2)^(1/3))
    """

    def f1(t):
        return math.sin(_angle(t)) / (math.expm1(2 * PI * t) * (1 + t * t) ** (1.0 / 6.0))

    def f2(t):
        return math.sin(2 * _angle(t)) / (math.expm1(2 * PI * t) * (1 + t * t) ** (1.0 / 3.0))

    p1, _ = _quad(f1, 0.0, 20.0, epsabs=1e-12, limit=200)
    p2, _ = _quad(f2, 0.0, 20.0, epsabs=1e-12, limit=200)
    return p1, p2


# --------------------------------------------------------------------------
# zero-temperature reference energy
# --------------------------------------------------------------------------

def free_energy_T0(a: float, kernel, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Temperature-independent free energy per unit area [J/m^2].

    Double integral over the continuous dimensionless frequency xi and the
    shifted momentum y of (xi + y) ln(1 - r_j^2(xi, y + xi) e^{-y-xi}),
    summed over both polarizations.  The prefactor hbar c / (32 pi^2 a^3) is
    fixed by requiring the perfect-mirror limit -pi^2 hbar c / (720 a^3);
    see the packaged acceptance test for the numeric pin.
    """
    if a <= 0:
        raise ValueError("separation must be positive")
    eps_cut = cfg.abs_tol / cfg.cut_margin
    # |(xi+y) ln(...)| <= 2 (xi+y) e^{-xi-y}; the tail beyond xi+y = U is
    # 2 (U^2 + 2U + 2) e^-U, driven below eps_cut.
    u = 25.0
    for _ in range(4):
        u = math.log(2.0 * (u * u + 2 * u + 2.0) / eps_cut)
    inner_tol = cfg.abs_tol / 10.0

    def dimensionless():
        def outer(xi):
            def f(y):
                r1sq, r2sq = kernel.r2_pair(xi, y + xi)
                w = math.exp(-y - xi)
                total = 0.0
                for rsq in (r1sq, r2sq):
                    x = rsq * w
                    if x < 1.0:
                        total += math.log1p(-x)
                return (xi + y) * total

            val, _ = _quad(f, 0.0, u, epsabs=inner_tol, limit=cfg.max_subdivisions,
                           points=kernel.y_breakpoints(xi))
            return val

        val, _ = _quad(outer, 0.0, u, epsabs=cfg.abs_tol, limit=cfg.max_subdivisions)
        return val

    return HBAR * C_LIGHT / (32.0 * PI**2 * a**3) * dimensionless()
