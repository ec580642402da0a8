"""FastAPI application exposing the library as a compute service.

All endpoints are POST with pydantic request bodies (the computations are
pure, but results are heavy enough that query strings would be awkward).
Precondition violations surface as 422, numerical non-convergence as 500.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import AccuracyError, DomainError, InternalError
from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="frlab",
        version=__version__,
        description="Sign-uncertainty verification service: Bessel-kernel bounds, "
                    "eigenfunction root certificates, lower-bound checks and "
                    "sign-pattern searches.",
    )

    def _guard(fn, req):
        try:
            return fn(req)
        except DomainError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except (AccuracyError, InternalError) as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc

    @app.get("/v1/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/v1/version", response_model=schemas.VersionResponse)
    def version() -> schemas.VersionResponse:
        return schemas.VersionResponse(version=__version__)

    @app.post("/v1/lambda-table", response_model=schemas.LambdaTableResponse)
    def lambda_table(req: schemas.LambdaTableRequest):
        return _guard(handlers.lambda_table, req)

    @app.post("/v1/candidate", response_model=schemas.CandidateResponse)
    def candidate(req: schemas.CandidateRequest):
        return _guard(handlers.candidate, req)

    @app.post("/v1/optimize", response_model=schemas.OptimizeResponse)
    def optimize(req: schemas.OptimizeRequest):
        return _guard(handlers.optimize, req)

    @app.post("/v1/lower-bound", response_model=schemas.LowerBoundResponse)
    def lower_bound(req: schemas.LowerBoundRequest):
        return _guard(handlers.lower_bound, req)

    @app.post("/v1/sign-search", response_model=schemas.SignSearchResponse)
    def sign_search(req: schemas.SignSearchRequest):
        return _guard(handlers.sign_search, req)

    @app.post("/v1/ft-check", response_model=schemas.FtCheckResponse)
    def ft_check(req: schemas.FtCheckRequest):
        return _guard(handlers.ft_check, req)

    @app.post("/v1/plot-data", response_model=schemas.PlotDataResponse)
    def plot_data(req: schemas.PlotDataRequest):
        return _guard(handlers.plot_data, req)

    @app.post("/v1/verify-all", response_model=schemas.VerifyAllResponse)
    def verify_all(req: schemas.VerifyAllRequest):
        return _guard(handlers.verify_all, req)

    return app


app = create_app()
