"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

PrescriptionName = Literal["unmodified", "ideal-static", "plasma-like"]
ModelName = Literal["impedance", "drude", "ideal"]
RelaxationName = Literal["poly", "bloch-gruneisen"]


class MaterialIn(BaseModel):
    """Material selector: inline SI parameters win over a config path, which
    wins over a preset/registry name."""

    name: str | None = None
    path: str | None = None
    params: dict[str, float] | None = None


class ComputeRequest(BaseModel):
    material: MaterialIn = MaterialIn(name="gold")
    a: float = Field(gt=0, description="plate separation [m]")
    T: float = Field(ge=0, description="temperature [K]")
    prescription: PrescriptionName = "ideal-static"
    model: ModelName = "impedance"
    relaxation: RelaxationName = "bloch-gruneisen"
    abs_tol: float = Field(default=1e-6, gt=0)
    sphere_radius: float | None = Field(default=None, gt=0, description="sphere radius [m]")
    method: Literal["numeric", "auto"] = "numeric"
    with_derivatives: bool = True


class ApplicabilityOut(BaseModel):
    l_over_delta: float
    ase_valid: bool
    impedance_form_valid: bool
    below_debye: bool
    Omega: float
    omega_tau: float
    ase_threshold: float


class ComputeResponse(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    delta_F: float
    G: float
    F0: float
    alpha: float
    S: float | None = None
    F_pp: float | None = None
    F_sp: float | None = None
    tau: float
    A: float | None = None
    B: float | None = None
    omega_a: float | None = None
    method: str
    prescription: str
    model: str
    alpha_note: str | None = None
    applicability: ApplicabilityOut | None = None
    material_name: str


class ApplicabilityRequest(BaseModel):
    material: MaterialIn = MaterialIn(name="gold")
    a: float = Field(gt=0)
    T: float = Field(gt=0)
    relaxation: RelaxationName = "bloch-gruneisen"
    ase_threshold: float = 5.0


class SweepRequest(BaseModel):
    axis: Literal["T", "a", "A"]
    min: float
    max: float
    count: int = Field(ge=2)
    spacing: Literal["linear", "log"] = "linear"
    fixed: dict[str, float] = {}
    prescriptions: list[PrescriptionName] = ["ideal-static"]
    model: ModelName = "impedance"
    relaxation: RelaxationName = "bloch-gruneisen"
    material: MaterialIn = MaterialIn(name="gold")
    abs_tol: float = Field(default=1e-6, gt=0)
    with_derivatives: bool = False


class RowsResponse(BaseModel):
    columns: list[str]
    rows: list[dict]
    meta: dict[str, str]


class Figure1Request(BaseModel):
    tau: float = Field(default=1e-4, gt=0)
    a_min: float = Field(default=1e-3, gt=0)
    a_max: float = Field(default=1e3, gt=0)
    count: int = Field(default=61, ge=2)
    abs_tol: float = Field(default=1e-6, gt=0)


class Figure2Request(BaseModel):
    material: MaterialIn = MaterialIn(name="gold")
    separations: list[float] = [100e-9, 300e-9, 500e-9]
    T_min: float = Field(default=1.0, gt=0)
    T_max: float = 80.0
    count: int = Field(default=40, ge=2)
    model: ModelName = "impedance"
    relaxation: RelaxationName = "bloch-gruneisen"
    abs_tol: float = Field(default=1e-6, gt=0)


class ConstantsResponse(BaseModel):
    q1: float
    q2: float
    p1: float
    p2: float
    reference: dict[str, float]
    abs_difference: dict[str, float]


class HealthResponse(BaseModel):
    status: str
    version: str
