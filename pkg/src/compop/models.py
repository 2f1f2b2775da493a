"""Pydantic models for reports, run configs and the HTTP API."""

import math
from typing import Literal

from pydantic import BaseModel, Field, field_validator

Verdict = Literal["bounded", "unbounded", "undecidable"]
Command = Literal["validate", "decay", "lowerbound", "carleson", "transfer", "selftest"]


class ComplexPoint(BaseModel):
    """A finite complex number on the wire."""

    re: float
    im: float = 0.0

    @field_validator("re", "im")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("point coordinates must be finite")
        return v

    @classmethod
    def of(cls, z: complex) -> "ComplexPoint":
        z = complex(z)
        return cls(re=z.real, im=z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------


class SymbolSpec(BaseModel):
    """Symbol spec file.

    Linear: {"c0": 0, "c1": [re, im], "terms": [[q, re, im], ...]}.
    General: {"c0": int, "psi": [[freq, re, im], ...]}.
    Restricted range: {"kind": "restricted", "c1": [re, im], "truncation": K}.
    """

    kind: Literal["auto", "restricted"] = "auto"
    c0: int = Field(default=0, ge=0)
    c1: tuple[float, float] | None = None
    terms: list[tuple[int, float, float]] | None = None
    psi: list[tuple[str | int, float, float]] | None = None
    truncation: int = Field(default=32, ge=1)


class DiscMapSpec(BaseModel):
    """{"taylor": [[re, im], ...], "grid_radius": r, "grid_points": k}."""

    taylor: list[tuple[float, float]] = Field(min_length=1)
    grid_radius: float = 0.99
    grid_points: int = 512


class ValidationVerdict(BaseModel):
    """Boundedness verdict for a symbol, with the rule that decided it."""

    verdict: Verdict
    reason: str
    kappa: float | None = None
    probe_min: float | None = None

    @property
    def exit_code(self) -> int:
        return {"bounded": 0, "unbounded": 1, "undecidable": 2}[self.verdict]


class FixedPointReport(BaseModel):
    alpha: ComplexPoint
    derivative: ComplexPoint
    iterations: int
    cross_checked: bool


# ---------------------------------------------------------------------------
# Decay
# ---------------------------------------------------------------------------


class PowerFit(BaseModel):
    """log a_n = α·log n + β·log log n + γ."""

    alpha: float
    beta: float
    gamma: float
    residual: float


class GeometricFit(BaseModel):
    """log a_n = n·log r + c."""

    log_r: float
    c: float
    residual: float

    @property
    def ratio(self) -> float:
        return math.exp(self.log_r)


class DecayFits(BaseModel):
    power: PowerFit
    power_plain: PowerFit
    geometric: GeometricFit
    window: tuple[int, int]
    points_used: int


class DecayReport(BaseModel):
    """Singular values of a compression plus fitted rates and convergence."""

    n_columns: int
    n_rows: int
    row_tolerance: float
    singular_values: list[float]
    eigenvalue_moduli: list[float]
    fits: DecayFits | None = None
    window: tuple[int, int] | None = None
    convergence: list[float] = Field(default_factory=list)
    column_deficit_max: float = 0.0


# ---------------------------------------------------------------------------
# Lower bounds
# ---------------------------------------------------------------------------


class LowerBoundRow(BaseModel):
    n: int
    lower_bound: float
    normalized: float
    preimages: int
    jitter: float = 0.0
    nu: float | None = None


class LowerBoundReport(BaseModel):
    construction: Literal["grid", "chain", "restricted"]
    d: int
    rows: list[LowerBoundRow]


# ---------------------------------------------------------------------------
# Carleson
# ---------------------------------------------------------------------------


class PullbackProfile(BaseModel):
    """Per-ε maximal box mass of the pulled-back torus measure."""

    d: int
    epsilons: list[float]
    max_masses: list[float]
    ratios: list[float]
    normalized: list[float]
    stderr: list[float]
    samples: int
    seed: int
    box_factor: float = 2.0


# ---------------------------------------------------------------------------
# Transference
# ---------------------------------------------------------------------------


class TransferReport(BaseModel):
    n: int
    disc_values: list[float]
    transferred_values: list[float]
    compression_values: list[float]
    ratios: list[float]
    disc_fit: GeometricFit | None = None
    transferred_fit: GeometricFit | None = None
    window: tuple[int, int] | None = None
    tail_estimate: float
    exact_reference: bool


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------


class RunConfig(BaseModel):
    """Everything needed to reproduce a CLI run."""

    command: Command
    spec_path: str | None = None
    n: int | None = None
    n_list: list[int] = Field(default_factory=list)
    row_tolerance: float = 1e-12
    window: tuple[int, int] | None = None
    samples: int | None = None
    seed: int = 0
    epsilons: list[float] = Field(default_factory=list)
    out: str | None = None
    json_out: str | None = None


class SelfTestCheck(BaseModel):
    name: str
    passed: bool
    detail: str


# ---------------------------------------------------------------------------
# HTTP requests
# ---------------------------------------------------------------------------


class DecayRequest(BaseModel):
    symbol: SymbolSpec
    n: int = Field(ge=1)
    window: tuple[int, int] | None = None
    row_tolerance: float | None = None


class LowerBoundRequest(BaseModel):
    symbol: SymbolSpec
    n_list: list[int] = Field(min_length=1)
    sigma0: float = 1.0


class CarlesonRequest(BaseModel):
    symbol: SymbolSpec
    epsilons: list[float] = Field(min_length=1)
    samples: int | None = None
    seed: int | None = None


class TransferRequest(BaseModel):
    omega: DiscMapSpec
    n: int = Field(ge=1)
    window: tuple[int, int] | None = None
