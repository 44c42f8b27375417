"""Grid evaluations behind the sweep and figure-data commands.

Rows are plain dicts so the service can ship them as JSON and the CLI can
render CSV.  Sweep rows are computed concurrently but collected in axis
order; every row carries the prescription, model and applicability flags.
Failures are recorded per row in an 'error' column instead of aborting the
whole grid.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .asymptotics import g_large_a, g_small_a
from .materials import MaterialParams, RelaxationModel
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .reflection import DimensionlessState, ImpedanceKernel, ReflectionModel
from .thermo import compute_G, full_correction

_MAX_WORKERS = 4

FIGURE1_DEFAULTS = dict(a_min=1e-3, a_max=1e3, count=61, tau=1e-4)
FIGURE2_DEFAULTS = dict(separations=(100e-9, 300e-9, 500e-9), T_min=1.0, T_max=80.0, count=40)


@dataclass(frozen=True)
class SweepSpec:
    """Axis definition for a parameter sweep.

    axis      one of 'T' (kelvin), 'a' (metres) or 'A' (dimensionless)
    fixed     held-constant parameters: 'a' and/or 'T' for physical axes,
              'tau' for the dimensionless axis
    """

    axis: str
    minimum: float
    maximum: float
    count: int
    spacing: str = "linear"
    fixed: dict | None = None
    prescriptions: tuple[str, ...] = ("ideal-static",)
    model: str = "impedance"
    relaxation: str = "bloch-gruneisen"

    def __post_init__(self):
        if self.axis not in ("T", "a", "A"):
            raise ValueError("axis must be 'T', 'a' or 'A'")
        if not self.minimum < self.maximum:
            raise ValueError("sweep range must satisfy min < max")
        if self.count < 2:
            raise ValueError("sweep needs at least 2 points")
        if self.spacing not in ("linear", "log"):
            raise ValueError("spacing must be 'linear' or 'log'")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            if self.minimum <= 0:
                raise ValueError("log spacing needs a positive range")
            return np.logspace(math.log10(self.minimum), math.log10(self.maximum), self.count)
        return np.linspace(self.minimum, self.maximum, self.count)


def _map_ordered(fn, items):
    with ThreadPoolExecutor(max_workers=_MAX_WORKERS) as pool:
        return list(pool.map(fn, items))


def _state_columns(state: DimensionlessState | None) -> dict:
    if state is None:
        return {"tau": 0.0, "A": None, "B": None}
    return {"tau": state.tau, "A": state.A, "B": state.B}


def _physical_row(m, a, T, prescription, spec, cfg, with_derivatives):
    row = {"a": a, "T": T, "prescription": prescription, "model": spec.model, "error": ""}
    try:
        res = full_correction(
            a, T, m, prescription, spec.model, cfg, spec.relaxation,
            with_derivatives=with_derivatives,
        )
        row.update(_state_columns(res.state))
        row.update(
            alpha=res.alpha,
            G=res.G,
            delta_F=res.delta_F,
            F0=res.F0,
            S=res.S,
            F_pp=res.F_pp,
            method=res.method,
        )
        rep = res.applicability
        row.update(
            l_over_delta=rep.l_over_delta if rep else None,
            ase_valid=rep.ase_valid if rep else None,
            impedance_form_valid=rep.impedance_form_valid if rep else None,
            below_debye=rep.below_debye if rep else None,
        )
    except Exception as exc:  # recorded per row; the sweep keeps going
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _dimensionless_row(A, tau, cfg):
    row = {"A": A, "tau": tau, "B": tau**2 / A, "model": "impedance", "error": ""}
    try:
        state = DimensionlessState.from_parameters(A, tau)
        row["G"] = compute_G(state, ImpedanceKernel.from_state(state), cfg)
        row["method"] = "numeric"
    except Exception as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(spec: SweepSpec, m: MaterialParams | None, cfg: QuadratureConfig = DEFAULT_CONFIG,
              with_derivatives: bool = False) -> list[dict]:
    """Evaluate the sweep; rows come back in axis order with an error column."""
    fixed = dict(spec.fixed or {})
    grid = spec.grid()
    if spec.axis == "A":
        tau = float(fixed.get("tau", FIGURE1_DEFAULTS["tau"]))
        return _map_ordered(lambda A: _dimensionless_row(float(A), tau, cfg), grid)

    if m is None:
        raise ValueError("physical sweeps need a material")
    jobs = []
    for value in grid:
        a = float(fixed["a"]) if spec.axis == "T" else float(value)
        T = float(value) if spec.axis == "T" else float(fixed["T"])
        for prescription in spec.prescriptions:
            jobs.append((a, T, prescription))
    return _map_ordered(
        lambda job: _physical_row(m, job[0], job[1], job[2], spec, cfg, with_derivatives),
        jobs,
    )


def figure1_rows(
    tau: float = FIGURE1_DEFAULTS["tau"],
    a_min: float = FIGURE1_DEFAULTS["a_min"],
    a_max: float = FIGURE1_DEFAULTS["a_max"],
    count: int = FIGURE1_DEFAULTS["count"],
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> list[dict]:
    """Relative correction versus A at small fixed tau, with both expansions.

    Columns: A, G_numeric, G_small_a, G_large_a.  The default grid is 61
    points, log-spaced over [1e-3, 1e3].
    """
    grid = np.logspace(math.log10(a_min), math.log10(a_max), count)

    def row(A):
        A = float(A)
        state = DimensionlessState.from_parameters(A, tau)
        g = compute_G(state, ImpedanceKernel.from_state(state), cfg)
        return {"A": A, "G_numeric": g, "G_small_a": g_small_a(A), "G_large_a": g_large_a(A)}

    return _map_ordered(row, grid)


def figure2_rows(
    m: MaterialParams,
    separations=FIGURE2_DEFAULTS["separations"],
    T_min: float = FIGURE2_DEFAULTS["T_min"],
    T_max: float = FIGURE2_DEFAULTS["T_max"],
    count: int = FIGURE2_DEFAULTS["count"],
    model: ReflectionModel | str = ReflectionModel.IMPEDANCE,
    relaxation: RelaxationModel | str = RelaxationModel.BLOCH_GRUNEISEN,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> list[dict]:
    """Relative correction versus temperature at a few separations.

    One row per (a, T) pair with the applicability flags, so invalid-regime
    points can be filtered or marked when plotting.
    """
    model = ReflectionModel(model).value
    relaxation = RelaxationModel(relaxation).value
    rows = []
    for a in separations:
        rows.extend(run_sweep(
            SweepSpec(axis="T", minimum=T_min, maximum=T_max, count=count,
                      fixed={"a": a}, model=model, relaxation=relaxation),
            m, cfg,
        ))
    return rows
