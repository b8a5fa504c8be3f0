"""FastAPI service exposing the CHSH analysis operations.

Run with:  uvicorn chshlab.service:app
The bundled CLI talks to this app in-process by default, so no server is
needed for command-line use.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .bell import (
    analytic_max_violation,
    horodecki_M,
    max_violation_pure,
    optimal_settings_for,
)
from .errors import ChshlabError
from .optimize import OptimizerConfig, maximize_chsh
from .reports import scan_mixed, sweep_rows
from .schemas import (
    AnalyticRequest,
    AnalyticResponse,
    CheckModel,
    HorodeckiRequest,
    HorodeckiResponse,
    MaximizeRequest,
    MaximizeResponse,
    OptimalRequest,
    OptimalResponse,
    ScanMixedRequest,
    ScanMixedResponse,
    ScanRowModel,
    SchemeModel,
    SchmidtRequest,
    SchmidtResponse,
    SweepRequest,
    SweepResponse,
    SweepRowModel,
    UnitaryModel,
    VerifyRequest,
    VerifyResponse,
    density_of,
)
from .states import LocalUnitary, entanglement_entropy, purity, schmidt_decompose
from .verification import run_invariant_checks

app = FastAPI(title="chshlab", version=__version__)


@app.exception_handler(ChshlabError)
async def _invalid_input_handler(_: Request, exc: ChshlabError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


def _unitary_model(u: LocalUnitary) -> UnitaryModel:
    return UnitaryModel(
        alpha=u.alpha,
        beta=u.beta,
        gamma=u.gamma,
        delta=u.delta,
        matrix=[[(z.real, z.imag) for z in row] for row in u.matrix],
    )


def _scheme_model(scheme) -> SchemeModel:
    return SchemeModel(
        a=tuple(scheme.a),
        a_prime=tuple(scheme.a_prime),
        b=tuple(scheme.b),
        b_prime=tuple(scheme.b_prime),
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/analytic", response_model=AnalyticResponse)
def analytic(req: AnalyticRequest) -> AnalyticResponse:
    return AnalyticResponse(
        theta=req.theta,
        bound=analytic_max_violation(req.theta),
        entropy=entanglement_entropy(req.theta),
    )


@app.post("/schmidt", response_model=SchmidtResponse)
def schmidt(req: SchmidtRequest) -> SchmidtResponse:
    form = schmidt_decompose(req.state.to_state())
    return SchmidtResponse(
        theta=form.theta,
        u_a=_unitary_model(form.u_a),
        u_b=_unitary_model(form.u_b),
    )


@app.post("/maximize", response_model=MaximizeResponse)
def maximize(req: MaximizeRequest) -> MaximizeResponse:
    rho = density_of(req.state)
    result = maximize_chsh(rho, OptimizerConfig(restarts=req.restarts, seed=req.seed))
    return MaximizeResponse(
        value=result.best_value,
        scheme=_scheme_model(result.scheme),
        restarts_used=result.restarts_used,
        converged=result.converged,
    )


@app.post("/optimal", response_model=OptimalResponse)
def optimal(req: OptimalRequest) -> OptimalResponse:
    psi = req.state.to_state()
    settings = optimal_settings_for(psi)
    bound = max_violation_pure(psi)
    return OptimalResponse(
        scheme=_scheme_model(settings.scheme),
        lambda_angle=settings.lambda_angle,
        achieved=settings.achieved_value,
        bound=bound,
        residual=abs(settings.achieved_value - bound),
    )


@app.post("/horodecki", response_model=HorodeckiResponse)
def horodecki(req: HorodeckiRequest) -> HorodeckiResponse:
    rho = req.state.to_state()
    m = horodecki_M(rho)
    return HorodeckiResponse(m=m, max_chsh=2.0 * math.sqrt(m), purity=purity(rho))


@app.post("/sweep", response_model=SweepResponse)
def sweep(req: SweepRequest) -> SweepResponse:
    rows = sweep_rows(req.steps)
    return SweepResponse(
        rows=[
            SweepRowModel(theta=r.theta, bound=r.bound, entropy=r.entropy)
            for r in rows
        ]
    )


@app.post("/scan-mixed", response_model=ScanMixedResponse)
def scan_mixed_endpoint(req: ScanMixedRequest) -> ScanMixedResponse:
    rows = scan_mixed(req.count, req.seed, req.rank)
    top = max(rows, key=lambda r: r.max_chsh)
    return ScanMixedResponse(
        rows=[
            ScanRowModel(
                index=r.index, rank=r.rank, purity=r.purity, max_chsh=r.max_chsh
            )
            for r in rows
        ],
        max_chsh=top.max_chsh,
        max_purity=top.purity,
    )


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    checks = run_invariant_checks(req.seed, req.trials)
    return VerifyResponse(
        checks=[
            CheckModel(name=c.name, passed=c.passed, detail=c.detail) for c in checks
        ],
        all_passed=all(c.passed for c in checks),
    )
