"""Experiment endpoints mirroring the CLI commands.

Handlers are sync so FastAPI runs the numerical work in its threadpool.
"""

from fastapi import APIRouter

from compop.models import (
    CarlesonRequest,
    DecayReport,
    DecayRequest,
    LowerBoundReport,
    LowerBoundRequest,
    PullbackProfile,
    TransferReport,
    TransferRequest,
)
from compop.services import experiments
from compop.specs import disc_map_from_spec, symbol_from_spec, target_from_spec

router = APIRouter(prefix="/experiments", tags=["experiments"])


@router.post("/decay")
def decay(body: DecayRequest) -> DecayReport:
    return experiments.run_decay(
        symbol_from_spec(body.symbol), body.n, body.window, body.row_tolerance
    )


@router.post("/lowerbound")
def lowerbound(body: LowerBoundRequest) -> LowerBoundReport:
    return experiments.run_lowerbound(target_from_spec(body.symbol), body.n_list, body.sigma0)


@router.post("/carleson")
def carleson(body: CarlesonRequest) -> PullbackProfile:
    return experiments.run_carleson(
        target_from_spec(body.symbol), body.epsilons, body.samples, body.seed
    )


@router.post("/transfer")
def transfer(body: TransferRequest) -> TransferReport:
    return experiments.run_transfer(disc_map_from_spec(body.omega), body.n, body.window)
