"""Pydantic request/response models for the HTTP service and the CLI."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

Coefficient = Union[float, str]  # floats or rational strings like "-113/100"


class StrictRequest(BaseModel):
    """Request base: unknown keys are rejected, not silently dropped."""

    model_config = {"extra": "forbid"}


# -- lambda-table -------------------------------------------------------------


class LambdaTableRequest(StrictRequest):
    dmin: int = Field(2, ge=2, le=120, description="smallest dimension")
    dmax: int = Field(9, ge=2, le=120, description="largest dimension")

    @model_validator(mode="after")
    def _ordered(self):
        if self.dmax < self.dmin:
            raise ValueError("precondition dmin <= dmax violated")
        return self


class BoundRow(BaseModel):
    d: int
    lambda_d: float
    bound_new: float
    bound_bck: float
    bound_upper: float
    u_d: float


class LambdaTableResponse(BaseModel):
    rows: list[BoundRow]


# -- candidate ----------------------------------------------------------------


class CandidateRequest(StrictRequest):
    coeffs: Optional[list[Coefficient]] = Field(
        None, description="basis coefficients; omit for the built-in reference example")
    normalize: bool = Field(False, description="re-solve the top coefficient so f(0)=0")
    grid_step: float = Field(1e-3, gt=0.0, le=0.1)
    report: bool = Field(True, description="include L1 norm and mean integral")


class CandidateResponse(BaseModel):
    coeffs: list[float]
    value_at_zero: float
    largest_root: float
    roots: list[float]
    double_roots: list[tuple[float, float]]
    near_double_roots: list[tuple[float, float]]
    scan_bound: float
    tail_reason: str
    l1_norm: Optional[float] = None
    mean_integral: Optional[float] = None


# -- optimize -------------------------------------------------------------------


class OptimizeRequest(StrictRequest):
    coeffs: Optional[list[Coefficient]] = Field(
        None, description="start coefficients; omit for the built-in reference example")
    max_basis_index: int = Field(3, ge=1, le=40)
    step_init: float = Field(1e-2, gt=0.0)
    step_shrink: float = Field(0.5, gt=0.0, lt=1.0)
    step_min: float = Field(1e-7, gt=0.0)
    max_passes: int = Field(400, ge=1, le=100000)
    seed: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _steps(self):
        if self.step_init <= self.step_min:
            raise ValueError("precondition step_init > step_min violated")
        return self


class OptimizeLogEntry(BaseModel):
    pass_: int = Field(alias="pass")
    coordinate: int
    step: float
    objective: float

    model_config = {"populate_by_name": True}


class OptimizeResponse(BaseModel):
    coeffs: list[float]
    objective: float
    start_objective: float
    improvement: float
    passes: int
    accepted: int
    gap_to_lower_bound: float
    log: list[OptimizeLogEntry]


# -- lower-bound ----------------------------------------------------------------


class LowerBoundRequest(StrictRequest):
    A: Optional[float] = Field(None, gt=0.25, le=0.5)
    tau: Optional[float] = Field(None, ge=0.0, le=0.25)
    report: bool = Field(False, description="run the full grid sweep instead of one point")
    a_min: float = Field(0.26, gt=0.25, le=0.5)
    a_max: float = Field(0.4499, gt=0.25, le=0.5)
    a_count: int = Field(200, ge=2, le=2000)

    @model_validator(mode="after")
    def _mode(self):
        if not self.report and (self.A is None or self.tau is None):
            raise ValueError("precondition violated: point mode needs both A and tau")
        if self.a_max < self.a_min:
            raise ValueError("precondition a_min <= a_max violated")
        return self


class InequalityRow(BaseModel):
    A: float
    tau: float
    h1: float
    h2: float
    sup_term: float
    lhs: float
    rhs: float
    margin: float
    status: Literal["holds", "fails"]


class LowerBoundResponse(BaseModel):
    point: Optional[InequalityRow] = None
    report: Optional[dict] = None


# -- sign-search ----------------------------------------------------------------


class SignSearchRequest(StrictRequest):
    family: Literal["hermite", "phi", "laguerre"]
    points: list[float] = Field(min_length=1)
    pattern: Optional[list[Literal["+", "-"]]] = None
    nmax: Optional[int] = Field(None, ge=1)
    nu: Optional[float] = None

    @model_validator(mode="after")
    def _family_args(self):
        if self.family == "hermite" and self.pattern is None:
            raise ValueError("precondition violated: hermite search needs a pattern")
        if self.family == "laguerre" and self.nu is None:
            raise ValueError("precondition violated: laguerre search needs nu")
        return self


class SignSearchResponse(BaseModel):
    family: str
    matches: list[int]
    predictor_matches: list[int]
    uncertain: list[int]
    frequencies: dict[str, float]
    expected_sign: Optional[str] = None


# -- ft-check -------------------------------------------------------------------


class FtCheckRequest(StrictRequest):
    target: Literal["candidate", "psi", "laguerre"] = "candidate"
    coeffs: Optional[list[Coefficient]] = None
    ys: Optional[list[float]] = None
    n: int = Field(0, ge=0, description="psi or Laguerre degree")
    nu: Optional[float] = None
    d: int = Field(2, ge=2, le=120)
    tol: float = Field(1e-6, gt=0.0)

    @model_validator(mode="after")
    def _psi_even(self):
        if self.target == "psi" and self.n % 2 == 1:
            raise ValueError("precondition violated: psi check needs even n "
                             "(odd functions transform to imaginary multiples)")
        return self


class FtCheckRow(BaseModel):
    point: float
    transform: float
    reference: float
    abs_diff: float


class FtCheckResponse(BaseModel):
    target: str
    rows: list[FtCheckRow]
    max_abs_diff: float
    tol: float
    passed: bool


# -- plot-data ------------------------------------------------------------------


class PlotDataRequest(StrictRequest):
    target: Literal["candidate", "upsilon", "psi"] = "candidate"
    coeffs: Optional[list[Coefficient]] = None
    A: Optional[float] = Field(None, gt=0.0, le=0.5)
    n: int = Field(0, ge=0, le=180)
    lo: float = 0.0
    hi: float = 2.5
    step: float = Field(0.005, gt=0.0)

    @model_validator(mode="after")
    def _range(self):
        if self.hi <= self.lo:
            raise ValueError("precondition lo < hi violated")
        if self.target == "upsilon" and self.A is None:
            raise ValueError("precondition violated: upsilon plot needs A")
        if (self.hi - self.lo) / self.step > 2e6:
            raise ValueError("precondition violated: more than 2e6 sample rows")
        return self


class PlotDataResponse(BaseModel):
    target: str
    xs: list[float]
    values: list[float]
    roots: list[float]


# -- run config ---------------------------------------------------------------


SUBCOMMANDS = ("lambda-table", "candidate", "optimize", "lower-bound",
               "sign-search", "ft-check", "plot-data", "verify-all")


class RunConfig(StrictRequest):
    """A complete reproducible run: subcommand, typed parameters, output.

    The file schema is versioned; unknown keys anywhere are rejected.  A
    top-level seed is injected into the parameters of subcommands that
    accept one (currently optimize) unless they already set it.
    """

    schema_version: int = Field(1, ge=1, le=1,
                                description="config schema version (currently 1)")
    subcommand: Literal["lambda-table", "candidate", "optimize", "lower-bound",
                        "sign-search", "ft-check", "plot-data", "verify-all"]
    parameters: dict = Field(default_factory=dict)
    format: Literal["json", "csv"] = "json"
    output: Optional[str] = None
    seed: Optional[int] = Field(None, ge=0)


# -- verify-all -----------------------------------------------------------------


class VerifyAllRequest(StrictRequest):
    criteria: Optional[list[int]] = Field(None, description="subset of 1..9; omit for all")


class CriterionResult(BaseModel):
    criterion: int
    name: str
    passed: bool
    detail: str
    seconds: float


class VerifyAllResponse(BaseModel):
    results: list[CriterionResult]
    all_passed: bool


class VersionResponse(BaseModel):
    version: str
