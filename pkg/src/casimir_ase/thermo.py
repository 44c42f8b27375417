"""Assembly of the temperature correction: free energy, entropy and forces.

The correction is parametrised as

    delta_F(a, T) = (k T / 8 pi a^2) [ (1 - alpha) zeta(3) - G(A, tau) ]

where alpha encodes the zero-frequency prescription and G collects the
thermal integrals relative to their perfect-mirror limits:

    G = zeta(3) - (i1_1 + i1_2)/2 + (i2_1 + i2_2) - (i3_1 + i3_2)

Zero reflectivity gives G = +zeta(3) (so delta_F vanishes together with
alpha), and the perfect mirror at small tau gives G -> 0; both limits are
enforced in the tests.  Entropy and the plate-plate force come either from
closed forms in their validity range or from central finite differences of
delta_F.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

from .asymptotics import (
    DEFAULT_RANGES,
    Regime,
    TrustedRanges,
    entropy_small_a,
    g_ideal,
    g_large_a,
    g_small_a,
)
from .constants import K_B, PI, ZETA3
from .materials import ApplicabilityReport, MaterialParams, RelaxationModel, applicability, omega_tau
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, constants_p, integral_set
from .reflection import (
    DimensionlessState,
    Prescription,
    ReflectionModel,
    alpha_coefficient,
    build_kernel,
    zero_term_free_energy,
)


@dataclass(frozen=True)
class CorrectionResult:
    """Full record of one (a, T) evaluation."""

    delta_F: float                      # free-energy correction [J/m^2]
    G: float                            # relative correction (dimensionless)
    F0: float                           # zero-frequency term [J/m^2]
    alpha: float
    method: str
    prescription: str
    model: str
    state: DimensionlessState | None
    applicability: ApplicabilityReport | None
    S: float | None = None              # entropy per area [J/K/m^2]
    F_pp: float | None = None           # plate-plate pressure correction [N/m^2]
    F_sp: float | None = None           # sphere-plate force correction [N]
    alpha_note: str | None = None
    abs_tol: float | None = None


@dataclass(frozen=True)
class EntropyResult:
    numeric: float
    small_a: float


def prefactor(a: float, T: float) -> float:
    """Scale of the correction, k T / (8 pi a^2)."""
    return K_B * T / (8.0 * PI * a**2)


def compute_G(state: DimensionlessState, kernel, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Relative temperature correction from the six thermal integrals."""
    s = integral_set(state.tau, kernel, cfg)
    return ZETA3 - 0.5 * (s.I1[0] + s.I1[1]) + (s.I2[0] + s.I2[1]) - (s.I3[0] + s.I3[1])


def _g_by_method(state, kernel, cfg, method, ranges, model):
    """Return (G, method_used)."""
    if method == "numeric":
        return compute_G(state, kernel, cfg), Regime.NUMERIC.value
    if method == "auto":
        if model is ReflectionModel.IDEAL:
            return g_ideal(state.tau), Regime.IDEAL.value
        if model is ReflectionModel.IMPEDANCE:
            # the closed-form expansions describe the impedance response only
            regime = ranges.classify(state.A)
            if regime is Regime.SMALL_A:
                return g_small_a(state.A), regime.value
            if regime is Regime.LARGE_A:
                return g_large_a(state.A), regime.value
        return compute_G(state, kernel, cfg), Regime.NUMERIC.value
    if method == "small-a":
        return g_small_a(state.A), Regime.SMALL_A.value
    if method == "large-a":
        return g_large_a(state.A), Regime.LARGE_A.value
    if method == "ideal":
        return g_ideal(state.tau), Regime.IDEAL.value
    raise ValueError(f"unknown method '{method}'")


def delta_free_energy(
    a: float,
    T: float,
    m: MaterialParams,
    prescription: Prescription | str = Prescription(),
    model: ReflectionModel | str = ReflectionModel.IMPEDANCE,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    relaxation: RelaxationModel | str = RelaxationModel.BLOCH_GRUNEISEN,
    method: str = "numeric",
    ranges: TrustedRanges = DEFAULT_RANGES,
) -> CorrectionResult:
    """Temperature correction to the free energy at one (a, T) point.

    Applicability is checked and attached, never fatal.  T = 0 returns the
    exact zero correction with method 'trivial'.
    """
    if isinstance(prescription, str):
        prescription = Prescription.from_name(prescription)
    model = ReflectionModel(model)
    relaxation = RelaxationModel(relaxation)
    if T < 0:
        raise ValueError("temperature must be non-negative")
    if T == 0.0:
        return CorrectionResult(
            delta_F=0.0, G=0.0, F0=0.0, alpha=float("nan"), method=Regime.TRIVIAL.value,
            prescription=prescription.variant.value, model=model.value,
            state=None, applicability=None,
        )

    state = DimensionlessState.from_geometry(m, a, T)
    wt = omega_tau(T, m, relaxation)
    report = applicability(T, a, m, relaxation)
    alpha, note = alpha_coefficient(prescription, m, state.omega_a, wt)
    kernel = build_kernel(model, state, m, wt)
    G, used = _g_by_method(state, kernel, cfg, method, ranges, model)

    pref = prefactor(a, T)
    return CorrectionResult(
        delta_F=pref * ((1.0 - alpha) * ZETA3 - G),
        G=G,
        F0=zero_term_free_energy(alpha, a, T),
        alpha=alpha,
        method=used,
        prescription=prescription.variant.value,
        model=model.value,
        state=state,
        applicability=report,
        alpha_note=note,
        abs_tol=cfg.abs_tol,
    )


def entropy(
    a: float,
    T: float,
    m: MaterialParams,
    prescription: Prescription | str = Prescription(),
    model: ReflectionModel | str = ReflectionModel.IMPEDANCE,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    relaxation: RelaxationModel | str = RelaxationModel.BLOCH_GRUNEISEN,
    rel_step: float = 1e-3,
    min_step: float = 1e-3,
    method: str = "numeric",
) -> EntropyResult:
    """Entropy per unit area, -dF/dT, as finite difference plus the small-A closed form.

    The default step max(rel_step*T, min_step) matches quadrature noise
    against truncation at the default tolerance; pass min_step=0 for the
    deep-cryogenic regime where a 1 mK floor would overshoot T itself.
    """
    if T <= 0:
        raise ValueError("temperature must be positive")
    h = max(rel_step * T, min_step)
    if h >= T:
        h = 0.5 * T

    def dF(t):
        return delta_free_energy(a, t, m, prescription, model, cfg, relaxation, method=method).delta_F

    numeric = -(dF(T + h) - dF(T - h)) / (2.0 * h)
    state = DimensionlessState.from_geometry(m, a, T)
    if isinstance(prescription, str):
        prescription = Prescription.from_name(prescription)
    alpha, _ = alpha_coefficient(prescription, m, state.omega_a, omega_tau(T, m, relaxation))
    return EntropyResult(numeric=numeric, small_a=entropy_small_a(state.A, alpha, a))


def force_plate_plate(
    a: float,
    T: float,
    m: MaterialParams,
    prescription: Prescription | str = Prescription(),
    model: ReflectionModel | str = ReflectionModel.IMPEDANCE,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    relaxation: RelaxationModel | str = RelaxationModel.BLOCH_GRUNEISEN,
    rel_step: float = 1e-4,
    method: str = "auto",
    ranges: TrustedRanges = DEFAULT_RANGES,
) -> float:
    """Pressure correction between plates, -d(delta_F)/da [N/m^2].

    In the large-A regime a closed form derived from the large-A free energy
    is used; elsewhere a central finite difference in a.  ``method`` may be
    'closed', 'finite-difference' or 'auto'.
    """
    state = DimensionlessState.from_geometry(m, a, T)
    if method == "auto":
        method = "closed" if state.A >= ranges.large_a_min else "finite-difference"
    if method == "closed":
        if isinstance(prescription, str):
            prescription = Prescription.from_name(prescription)
        alpha, _ = alpha_coefficient(prescription, m, state.omega_a, omega_tau(T, m, relaxation))
        p1, p2 = constants_p()
        A = state.A
        bracket = (1.0 - alpha) - 8.0 * (1.5 * (1.0 - 2.0 * p1) / A - 2.0 * (15.0 - 12.0 * p2) / A**2)
        return K_B * T / (4.0 * PI * a**3) * ZETA3 * bracket
    if method != "finite-difference":
        raise ValueError(f"unknown method '{method}'")
    h = rel_step * a

    def dF(x):
        return delta_free_energy(x, T, m, prescription, model, cfg, relaxation).delta_F

    return -(dF(a + h) - dF(a - h)) / (2.0 * h)


def force_sphere_plate(delta_F: float, R_sphere: float, a: float | None = None) -> float:
    """Proximity-force sphere-plate correction, 2 pi R delta_F [N]."""
    if R_sphere <= 0:
        raise ValueError("sphere radius must be positive")
    if a is not None and R_sphere < 100.0 * a:
        warnings.warn(
            f"proximity-force approximation is marginal: R = {R_sphere:.3g} m < 100 a = {100 * a:.3g} m",
            stacklevel=2,
        )
    return 2.0 * PI * R_sphere * delta_F


def full_correction(
    a: float,
    T: float,
    m: MaterialParams,
    prescription: Prescription | str = Prescription(),
    model: ReflectionModel | str = ReflectionModel.IMPEDANCE,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    relaxation: RelaxationModel | str = RelaxationModel.BLOCH_GRUNEISEN,
    sphere_radius: float | None = None,
    method: str = "numeric",
    with_derivatives: bool = True,
) -> CorrectionResult:
    """delta_free_energy plus entropy and force observables."""
    res = delta_free_energy(a, T, m, prescription, model, cfg, relaxation, method=method)
    if T == 0.0 or not with_derivatives:
        if sphere_radius is not None:
            res = replace(res, F_sp=force_sphere_plate(res.delta_F, sphere_radius, a))
        return res
    s = entropy(a, T, m, prescription, model, cfg, relaxation, method=method)
    fpp = force_plate_plate(a, T, m, prescription, model, cfg, relaxation)
    fsp = force_sphere_plate(res.delta_F, sphere_radius, a) if sphere_radius is not None else None
    return replace(res, S=s.numeric, F_pp=fpp, F_sp=fsp)
