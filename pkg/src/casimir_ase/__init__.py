"""Temperature correction to the Casimir force between metal plates in the
cryogenic regime, where the anomalous skin effect governs the reflection.

Core layers: ``materials`` (metal parameters and validity gates),
``reflection`` (dielectric/impedance reflection coefficients and the
zero-frequency prescriptions), ``quadrature`` (the thermal integrals),
``asymptotics`` (closed-form limits), ``thermo`` (free energy, entropy,
forces).  A FastAPI service (``casimir_ase.service``) wraps the package for
multi-client use; the installed ``casimir-ase`` CLI is a thin client of it.
"""

from .asymptotics import (
    MaxCorrection,
    Regime,
    TrustedRanges,
    delta_F_large_A,
    delta_F_small_A,
    estimate_T_max,
    find_max_correction,
    g_ideal,
    g_large_a,
    g_small_a,
)
from .constants import ZETA3
from .materials import (
    ApplicabilityReport,
    ConfigError,
    MaterialParams,
    RelaxationModel,
    applicability,
    load_material,
    omega_tau,
    omega_tau_bloch_gruneisen,
    omega_tau_from_resistivity,
    omega_tau_poly,
    resolve_material,
)
from .quadrature import (
    BranchCutError,
    IntegralSet,
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
from .reflection import (
    DimensionlessState,
    DrudeKernel,
    IdealKernel,
    ImpedanceKernel,
    Prescription,
    PrescriptionVariant,
    ReflectionModel,
    ZeroKernel,
    alpha_coefficient,
    build_kernel,
    drude_permittivity,
    drude_reflection,
    impedance_ase,
    impedance_reflection,
    static_kernel,
    zero_term_free_energy,
)
from .thermo import (
    CorrectionResult,
    EntropyResult,
    compute_G,
    delta_free_energy,
    entropy,
    force_plate_plate,
    force_sphere_plate,
    full_correction,
)

__version__ = "0.1.0"
