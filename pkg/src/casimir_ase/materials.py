"""Metal parameters, temperature-dependent relaxation frequency, and validity gates.

A metal is characterised by its plasma frequency, Fermi velocity and a
relaxation (scattering) frequency whose temperature dependence is modelled
either by a power-law sum (impurity + electron + phonon channels) or by the
Bloch-Grueneisen phonon formula anchored at a reference temperature.  The
``applicability`` gate decides whether the nonlocal surface-impedance
description is justified: the electron mean free path l = v_F/omega_tau must
exceed the field penetration depth delta = c/omega_p, and the thermal
frequency window must stay below the characteristic frequency
Omega = (v_F/c) * omega_p.

All public values are SI; unit conversion happens only in the config loader.
"""

from __future__ import annotations

import configparser
import math
import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path

from scipy.integrate import quad
from scipy.optimize import brentq

from .constants import C_LIGHT, EPS0, HBAR, K_B, PI


class ConfigError(ValueError):
    """Raised when a material config file is malformed; names the offending field."""


class RelaxationModel(str, Enum):
    POLY = "poly"
    BLOCH_GRUNEISEN = "bloch-gruneisen"


@dataclass(frozen=True)
class MaterialParams:
    """Everything defining a metal (SI units).

    omega_p        plasma frequency [rad/s]
    v_F            Fermi velocity [m/s]
    T_D            Debye temperature [K]
    omega_tau_ref  relaxation frequency at the reference temperature T0 [rad/s]
    rho_ref        resistivity at T0 [ohm m]; alternative way to fix omega_tau_ref
    T0             reference temperature [K], defaults to 0 deg C
    omega_tau_0    residual relaxation frequency at T = 0 [rad/s]
    C_e            electron-scattering coefficient [rad/s/K^2]
    C_ph           phonon-scattering coefficient [rad/s/K^5]
    beta           order-unity Fermi-surface factor; the velocity entering the
                   impedance is v = beta * v_F
    """

    omega_p: float
    v_F: float
    T_D: float
    omega_tau_ref: float | None = None
    rho_ref: float | None = None
    T0: float = 273.15
    omega_tau_0: float = 0.0
    C_e: float = 0.0
    C_ph: float = 0.0
    beta: float = 1.0
    name: str = ""

    # omega_tau_ref reconstructed from rho_ref must agree with an explicit
    # value to this relative precision.
    _RHO_CONSISTENCY = 0.01

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ValueError("omega_p must be positive")
        if not 0 < self.v_F < C_LIGHT:
            raise ValueError("v_F must satisfy 0 < v_F < c")
        if not self.T_D > 0:
            raise ValueError("T_D must be positive")
        if not self.T0 > 0:
            raise ValueError("T0 must be positive")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        for field in ("omega_tau_0", "C_e", "C_ph"):
            if getattr(self, field) < 0:
                raise ValueError(f"{field} must be non-negative")
        if self.rho_ref is not None:
            if self.rho_ref < 0:
                raise ValueError("rho_ref must be non-negative")
            reconstructed = omega_tau_from_resistivity(self.rho_ref, self.omega_p)
            if self.omega_tau_ref is None:
                object.__setattr__(self, "omega_tau_ref", reconstructed)
            elif abs(self.omega_tau_ref - reconstructed) > self._RHO_CONSISTENCY * reconstructed:
                raise ValueError(
                    "omega_tau_ref and rho_ref disagree: "
                    f"{self.omega_tau_ref:.4e} vs eps0*omega_p^2*rho = {reconstructed:.4e}"
                )
        if self.omega_tau_ref is not None and self.omega_tau_ref < 0:
            raise ValueError("omega_tau_ref must be non-negative")

    @property
    def v(self) -> float:
        """Velocity entering the anomalous-skin-effect impedance, beta * v_F."""
        return self.beta * self.v_F

    @property
    def Omega(self) -> float:
        """Characteristic frequency of the anomalous skin effect, (v_F/c) omega_p."""
        return (self.v_F / C_LIGHT) * self.omega_p


@dataclass(frozen=True)
class ApplicabilityReport:
    """Validity gates for the impedance description at a given (T, a).

    The report is always produced; callers decide what to do with invalid
    regimes.  ``omega_tau`` and ``Omega`` are exposed so that refinements
    (e.g. a frequency-dependent penetration depth) can be applied downstream.
    """

    l_over_delta: float
    ase_valid: bool
    impedance_form_valid: bool
    below_debye: bool
    Omega: float
    omega_tau: float
    ase_threshold: float


# --------------------------------------------------------------------------
# relaxation frequency models
# --------------------------------------------------------------------------

def omega_tau_from_resistivity(rho: float, omega_p: float) -> float:
    """Relaxation frequency from the DC resistivity, eps0 * omega_p^2 * rho."""
    if rho < 0:
        raise ValueError("rho must be non-negative")
    return EPS0 * omega_p**2 * rho


def omega_tau_poly(T: float, m: MaterialParams) -> float:
    """Power-law relaxation frequency: residual + electron (T^2) + phonon (T^5) terms."""
    if T < 0:
        raise ValueError("temperature must be non-negative")
    return m.omega_tau_0 + m.C_e * T**2 + m.C_ph * T**5


@lru_cache(maxsize=4096)
def debye_phonon_integral(x: float) -> float:
    """F5(x) = int_0^x du u^5 / ((e^u - 1)(1 - e^-u)), evaluated to 1e-9 relative.

    Saturates at 120*zeta(5) for large x; the integrand beyond u ~ 60 is
    below double precision, so the range is capped there.
    """
    if x <= 0:
        return 0.0

    def integrand(u):
        return u**5 / (math.expm1(u) * (1.0 - math.exp(-u)))

    val, _ = quad(integrand, 0.0, min(x, 60.0), epsabs=0.0, epsrel=1e-9, limit=200)
    return val


def omega_tau_bloch_gruneisen(T: float, m: MaterialParams) -> float:
    """Phonon-limited relaxation frequency anchored at T0.

    omega_tau(T) = omega_tau(T0) * (T/T0)^5 * F5(T_D/T) / F5(T_D/T0).
    Recovers the T^5 law well below the Debye temperature and a linear-in-T
    dependence above it.
    """
    if T <= 0:
        raise ValueError("temperature must be positive")
    if m.omega_tau_ref is None:
        raise ValueError("omega_tau_ref (or rho_ref) is required for the Bloch-Gruneisen model")
    ratio = (T / m.T0) ** 5
    return m.omega_tau_ref * ratio * debye_phonon_integral(m.T_D / T) / debye_phonon_integral(m.T_D / m.T0)


def omega_tau(T: float, m: MaterialParams, model: RelaxationModel | str = RelaxationModel.BLOCH_GRUNEISEN) -> float:
    """Dispatch to the selected relaxation model."""
    model = RelaxationModel(model)
    if model is RelaxationModel.POLY:
        return omega_tau_poly(T, m)
    return omega_tau_bloch_gruneisen(T, m)


# --------------------------------------------------------------------------
# applicability gates
# --------------------------------------------------------------------------

def applicability(
    T: float,
    a: float,
    m: MaterialParams,
    relaxation_model: RelaxationModel | str = RelaxationModel.BLOCH_GRUNEISEN,
    ase_threshold: float = 5.0,
) -> ApplicabilityReport:
    """Evaluate the validity gates at temperature T and plate separation a.

    l/delta = (v_F/omega_tau) / (c/omega_p) must exceed ``ase_threshold`` for
    the nonlocal regime; 2*pi*k*T < hbar*Omega for the power-law impedance
    form; T < T_D for the phonon model.  Always returns a report.
    """
    if T <= 0:
        raise ValueError("temperature must be positive")
    if a <= 0:
        raise ValueError("separation must be positive")
    wt = omega_tau(T, m, relaxation_model)
    delta = C_LIGHT / m.omega_p
    l_over_delta = float("inf") if wt == 0.0 else (m.v_F / wt) / delta
    Om = m.Omega
    return ApplicabilityReport(
        l_over_delta=l_over_delta,
        ase_valid=l_over_delta > ase_threshold,
        impedance_form_valid=2 * PI * K_B * T < HBAR * Om,
        below_debye=T < m.T_D,
        Omega=Om,
        omega_tau=wt,
        ase_threshold=ase_threshold,
    )


def impedance_form_boundary(m: MaterialParams) -> float:
    """Temperature where 2*pi*k*T = hbar*Omega (impedance form valid below)."""
    return HBAR * m.Omega / (2 * PI * K_B)


def ase_ratio_boundary(
    m: MaterialParams,
    ratio: float,
    relaxation_model: RelaxationModel | str = RelaxationModel.BLOCH_GRUNEISEN,
    bracket: tuple[float, float] = (1.0, 400.0),
) -> float:
    """Temperature where l/delta crosses ``ratio`` (valid below, for increasing omega_tau)."""
    delta = C_LIGHT / m.omega_p

    def f(T):
        return (m.v_F / omega_tau(T, m, relaxation_model)) / delta - ratio

    return brentq(f, *bracket, xtol=1e-6)


# --------------------------------------------------------------------------
# config files
# --------------------------------------------------------------------------

MATERIAL_DIR_ENV = "CASIMIR_ASE_MATERIAL_DIR"

_REQUIRED_FIELDS = ("omega_p", "v_F", "T_D")
_FLOAT_FIELDS = (
    "omega_p",
    "omega_tau_ref",
    "rho_ref",
    "T0",
    "omega_tau_0",
    "C_e",
    "C_ph",
    "v_F",
    "beta",
    "T_D",
)

# Accepted unit spellings per field and their factor to SI.
_UNIT_FACTORS: dict[str, dict[str, float]] = {
    "omega_p": {"rad/s": 1.0},
    "omega_tau_ref": {"rad/s": 1.0},
    "omega_tau_0": {"rad/s": 1.0},
    "v_F": {"m/s": 1.0, "cm/s": 1e-2},
    "rho_ref": {"ohm.m": 1.0, "uohm.cm": 1e-8},
    "T0": {"K": 1.0},
    "T_D": {"K": 1.0},
    "C_e": {"rad/s/K^2": 1.0},
    "C_ph": {"rad/s/K^5": 1.0},
    "beta": {"1": 1.0, "": 1.0},
}


def load_material(path: str | Path) -> MaterialParams:
    """Load a material from a key-value config file with a [material] and [units] block."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"material config not found: {path}")
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str  # field names are case-sensitive (v_F, T_D, ...)
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if "material" not in parser:
        raise ConfigError(f"{path}: missing [material] section")
    sec = parser["material"]
    units = parser["units"] if "units" in parser else {}

    kwargs: dict[str, object] = {}
    for key in sec:
        if key == "name":
            kwargs["name"] = sec[key]
            continue
        if key not in _FLOAT_FIELDS:
            raise ConfigError(f"{path}: unknown field '{key}' in [material]")
        try:
            value = float(sec[key])
        except ValueError as exc:
            raise ConfigError(f"{path}: field '{key}' is not a number: {sec[key]!r}") from exc
        unit = units.get(key, "") if units else ""
        if unit:
            factors = _UNIT_FACTORS.get(key, {})
            if unit not in factors:
                raise ConfigError(f"{path}: unsupported unit '{unit}' for field '{key}'")
            value *= factors[unit]
        kwargs[key] = value

    for field in _REQUIRED_FIELDS:
        if field not in kwargs:
            raise ConfigError(f"{path}: missing required field '{field}'")
    kwargs.setdefault("name", path.stem)
    try:
        return MaterialParams(**kwargs)  # type: ignore[arg-type]
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def preset_dir() -> Path:
    """Directory of the presets shipped with the package."""
    return Path(__file__).resolve().parent / "presets"


def resolve_material(name_or_path: str | Path) -> MaterialParams:
    """Resolve a material by explicit path, by name in $CASIMIR_ASE_MATERIAL_DIR, or by preset."""
    p = Path(name_or_path)
    if p.suffix == ".ini" or p.exists():
        return load_material(p)
    candidates = []
    env_dir = os.environ.get(MATERIAL_DIR_ENV)
    if env_dir:
        candidates.append(Path(env_dir) / f"{name_or_path}.ini")
    candidates.append(preset_dir() / f"{name_or_path}.ini")
    for cand in candidates:
        if cand.exists():
            return load_material(cand)
    raise ConfigError(f"material '{name_or_path}' not found (searched {[str(c) for c in candidates]})")
