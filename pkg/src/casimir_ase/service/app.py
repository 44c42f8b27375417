"""FastAPI service exposing the package over HTTP.

All computation stays in the core modules; this layer only translates
between pydantic models and core dataclasses.  Run it with

    uvicorn casimir_ase.service:app

or through the CLI's ``serve`` subcommand.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..materials import ConfigError, MaterialParams, applicability, resolve_material
from ..quadrature import QuadratureConfig, constants_p, constants_q
from ..sweeps import SweepSpec, figure1_rows, figure2_rows, run_sweep
from ..thermo import CorrectionResult, full_correction
from .schemas import (
    ApplicabilityOut,
    ApplicabilityRequest,
    ComputeRequest,
    ComputeResponse,
    ConstantsResponse,
    Figure1Request,
    Figure2Request,
    HealthResponse,
    MaterialIn,
    RowsResponse,
    SweepRequest,
)

# Three-digit reference values the computed constants are compared against.
REFERENCE_CONSTANTS = {"q1": 0.0137, "q2": 0.0191, "p1": 0.0133, "p2": 0.0262}

app = FastAPI(
    title="casimir-ase",
    description="Cryogenic temperature correction to the Casimir force "
    "(anomalous-skin-effect impedance regime)",
    version=__version__,
)


def _material(sel: MaterialIn) -> MaterialParams:
    try:
        if sel.params is not None:
            return MaterialParams(**sel.params)
        if sel.path is not None:
            return resolve_material(sel.path)
        return resolve_material(sel.name or "gold")
    except (ConfigError, ValueError, TypeError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _result_response(res: CorrectionResult, material_name: str) -> ComputeResponse:
    rep = res.applicability
    return ComputeResponse(
        delta_F=res.delta_F,
        G=res.G,
        F0=res.F0,
        alpha=res.alpha,
        S=res.S,
        F_pp=res.F_pp,
        F_sp=res.F_sp,
        tau=res.state.tau if res.state else 0.0,
        A=res.state.A if res.state else None,
        B=res.state.B if res.state else None,
        omega_a=res.state.omega_a if res.state else None,
        method=res.method,
        prescription=res.prescription,
        model=res.model,
        alpha_note=res.alpha_note,
        applicability=ApplicabilityOut(**vars(rep)) if rep else None,
        material_name=material_name,
    )


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.get("/constants", response_model=ConstantsResponse)
def constants() -> ConstantsResponse:
    q1, q2 = constants_q()
    p1, p2 = constants_p()
    computed = {"q1": q1, "q2": q2, "p1": p1, "p2": p2}
    return ConstantsResponse(
        **computed,
        reference=REFERENCE_CONSTANTS,
        abs_difference={k: abs(computed[k] - v) for k, v in REFERENCE_CONSTANTS.items()},
    )


@app.post("/compute", response_model=ComputeResponse)
def compute(req: ComputeRequest) -> ComputeResponse:
    m = _material(req.material)
    cfg = QuadratureConfig(abs_tol=req.abs_tol)
    try:
        res = full_correction(
            req.a, req.T, m,
            prescription=req.prescription,
            model=req.model,
            cfg=cfg,
            relaxation=req.relaxation,
            sphere_radius=req.sphere_radius,
            method=req.method,
            with_derivatives=req.with_derivatives,
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return _result_response(res, m.name)


@app.post("/applicability", response_model=ApplicabilityOut)
def applicability_report(req: ApplicabilityRequest) -> ApplicabilityOut:
    m = _material(req.material)
    try:
        rep = applicability(req.T, req.a, m, req.relaxation, req.ase_threshold)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return ApplicabilityOut(**vars(rep))


def _rows_response(rows: list[dict], meta: dict[str, str]) -> RowsResponse:
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return RowsResponse(columns=columns, rows=rows, meta=meta)


@app.post("/sweep", response_model=RowsResponse)
def sweep(req: SweepRequest) -> RowsResponse:
    m = _material(req.material) if req.axis != "A" else None
    try:
        spec = SweepSpec(
            axis=req.axis,
            minimum=req.min,
            maximum=req.max,
            count=req.count,
            spacing=req.spacing,
            fixed=req.fixed,
            prescriptions=tuple(req.prescriptions),
            model=req.model,
            relaxation=req.relaxation,
        )
        rows = run_sweep(spec, m, QuadratureConfig(abs_tol=req.abs_tol), req.with_derivatives)
    except (ValueError, KeyError) as exc:
        raise HTTPException(status_code=400, detail=f"invalid sweep spec: {exc}") from exc
    meta = {
        "axis": req.axis, "min": str(req.min), "max": str(req.max),
        "count": str(req.count), "spacing": req.spacing,
        "fixed": ";".join(f"{k}={v}" for k, v in sorted(req.fixed.items())),
        "prescriptions": ",".join(req.prescriptions),
        "model": req.model, "relaxation": req.relaxation,
        "abs_tol": str(req.abs_tol), "material": m.name if m else "",
    }
    return _rows_response(rows, meta)


@app.post("/figure1", response_model=RowsResponse)
def figure1(req: Figure1Request) -> RowsResponse:
    rows = figure1_rows(req.tau, req.a_min, req.a_max, req.count, QuadratureConfig(abs_tol=req.abs_tol))
    meta = {
        "tau": str(req.tau), "A_min": str(req.a_min), "A_max": str(req.a_max),
        "count": str(req.count), "abs_tol": str(req.abs_tol),
    }
    return _rows_response(rows, meta)


@app.post("/figure2", response_model=RowsResponse)
def figure2(req: Figure2Request) -> RowsResponse:
    m = _material(req.material)
    rows = figure2_rows(
        m, req.separations, req.T_min, req.T_max, req.count,
        req.model, req.relaxation, QuadratureConfig(abs_tol=req.abs_tol),
    )
    meta = {
        "material": m.name, "model": req.model, "relaxation": req.relaxation,
        "separations_m": ",".join(f"{s:g}" for s in req.separations),
        "T_min": str(req.T_min), "T_max": str(req.T_max), "count": str(req.count),
        "abs_tol": str(req.abs_tol),
    }
    return _rows_response(rows, meta)
