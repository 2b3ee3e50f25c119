"""FastAPI application exposing one endpoint per pipeline.

Every response is an envelope {schema_version, request, result}; the
echoed request has all defaults filled in, so the response alone is a
complete record of what was computed.  Module errors map to status 400
with a stable machine-readable code.
"""

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import __version__, pipelines
from ..errors import HorolabError
from . import schemas

_ENDPOINTS = (
    ("solve", schemas.SolveRequest),
    ("certify-lg", schemas.CertifyRequest),
    ("construct", schemas.ConstructRequest),
    ("zero-lemma", schemas.ZeroLemmaRequest),
    ("growth", schemas.GrowthRequest),
    ("independence", schemas.IndependenceRequest),
    ("isomono", schemas.IsomonoRequest),
    ("example-1-3", schemas.FamilyRunRequest),
)


def _envelope(request_dict: dict, result: dict) -> dict:
    return {
        "schema_version": pipelines.SCHEMA_VERSION,
        "request": request_dict,
        "result": result,
    }


def create_app() -> FastAPI:
    app = FastAPI(title="horolab", version=__version__)

    @app.exception_handler(HorolabError)
    async def _module_error(request: Request, exc: HorolabError):
        detail = {key: str(value) for key, value in exc.detail.items()}
        return JSONResponse(
            status_code=400,
            content={
                "error": {"code": exc.code, "message": str(exc.message), "detail": detail}
            },
        )

    @app.exception_handler(Exception)
    async def _unexpected_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={
                "error": {
                    "code": "internal-error",
                    "message": f"{type(exc).__name__}: {exc}",
                    "detail": {},
                }
            },
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        issues = [
            {"location": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=422,
            content={
                "error": {
                    "code": "invalid-request",
                    "message": "request body failed validation",
                    "detail": {"issues": issues},
                }
            },
        )

    @app.get("/api/health")
    async def health():
        return {"status": "ok", "version": __version__}

    def _register(name: str, model):
        pipeline = pipelines.PIPELINES[name]

        @app.post(f"/api/{name}", name=name)
        async def run(body: model):  # noqa: B008
            request_dict = body.model_dump(exclude_none=True)
            result = pipeline(request_dict)
            return _envelope(request_dict, result)

    for name, model in _ENDPOINTS:
        _register(name, model)

    return app
