"""Symbol endpoints: boundedness verdict and attracting fixed point."""

from fastapi import APIRouter

from compop.models import FixedPointReport, SymbolSpec, ValidationVerdict
from compop.services import experiments
from compop.specs import symbol_from_spec

router = APIRouter(prefix="/symbols", tags=["symbols"])


@router.post("/validate")
def validate_symbol(body: SymbolSpec) -> ValidationVerdict:
    return experiments.run_validate(symbol_from_spec(body))


@router.post("/fixed-point")
def symbol_fixed_point(body: SymbolSpec) -> FixedPointReport:
    """Denjoy–Wolff point α and φ′(α); 422 for symbols without one in the half-plane."""
    return experiments.run_fixed_point(symbol_from_spec(body))
