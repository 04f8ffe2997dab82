"""HTTP service wrapping the core operations.

Configuration errors map to 422, numerical failures to 400, both with a
structured body naming the error class.  The verify endpoint returns suite
reports unchanged, so clients can serialize them canonically.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import suites
from ..calculus import (
    delta_integral,
    delta_integral_via_rho,
    hilger_derivative,
    rn_derivative,
)
from ..corpus import (
    FAMILY_NAMES,
    PARAMETER_SCHEMA,
    NamedScale,
    builtin,
    make_scale_function,
)
from ..errors import ComputationError, ConfigError, TscalcError
from ..functions import TOL_LIMIT, extend
from ..measure import BorelSet, DeltaMeasure
from ..quadrature import TOL_QUAD
from ..scale import TimeScale
from . import schemas


def _resolve_scale(spec: schemas.ScaleSpec) -> tuple[TimeScale, NamedScale | None]:
    if spec.builtin is not None:
        family = builtin(spec.builtin, spec.params)
        return family.materialize(), family
    doc = {"components": [c.model_dump(exclude_none=True) for c in spec.components]}
    return TimeScale.from_json_dict(doc), None


def create_app() -> FastAPI:
    app = FastAPI(
        title="tscalc",
        description="Computable time-scale calculus operations and verification suites",
        version="0.1.0",
    )

    @app.exception_handler(TscalcError)
    async def _tscalc_error(request, exc: TscalcError):
        status = 422 if isinstance(exc, ConfigError) else 400
        if not isinstance(exc, (ConfigError, ComputationError)):
            status = 400
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "message": str(exc)},
        )

    @app.get("/healthz")
    def healthz():
        return {"schema": 1, "status": "ok"}

    @app.post("/eval", response_model=schemas.EvalResponse, response_model_by_alias=True)
    def evaluate(req: schemas.EvalRequest):
        ts, _family = _resolve_scale(req.scale)
        results = []
        for t in req.points:
            inside = ts.contains(t)
            sigma = ts.forward_jump(t)
            rho = ts.backward_jump(t)
            if inside:
                mu = ts.graininess(t)
                cls = ts.classify(t)
                right, left, label = cls.right, cls.left, cls.label
            else:
                mu = sigma - t
                right = left = label = "outside"
            results.append(
                schemas.PointReport(
                    t=t, sigma=sigma, rho=rho, mu=mu,
                    right=right, left=left, label=label, in_scale=inside,
                )
            )
        return schemas.EvalResponse(results=results)

    @app.post("/diff", response_model=schemas.DiffResponse, response_model_by_alias=True)
    def differentiate(req: schemas.DiffRequest):
        ts, family = _resolve_scale(req.scale)
        tol = req.tol_limit or TOL_LIMIT
        f = make_scale_function(req.fn, ts, family)
        hd = hilger_derivative(f, req.at, tol)
        rd = rn_derivative(extend(f), DeltaMeasure(ts), req.at, tol)
        deviation = abs(hd.value - rd.value)
        return schemas.DiffResponse(
            at=req.at,
            hilger=schemas.DerivativeReport(**hd.to_json_dict()),
            radon_nikodym=schemas.DerivativeReport(**rd.to_json_dict()),
            deviation=deviation,
            agree=hd.converged and rd.converged and deviation < 1e-6,
        )

    @app.post(
        "/integrate", response_model=schemas.IntegrateResponse, response_model_by_alias=True
    )
    def integrate(req: schemas.IntegrateRequest):
        ts, family = _resolve_scale(req.scale)
        tol = req.tol_quad or TOL_QUAD
        f = make_scale_function(req.fn, ts, family)
        a, b = req.window
        va = delta_integral(f, a, b, tol)
        vb = delta_integral_via_rho(f, a, b, tol)
        return schemas.IntegrateResponse(
            window=[a, b],
            decomposition=va,
            through_backward_jump=vb,
            deviation=abs(va - vb),
        )

    @app.post(
        "/measure", response_model=schemas.MeasureResponse, response_model_by_alias=True
    )
    def measure(req: schemas.MeasureRequest):
        ts, _family = _resolve_scale(req.scale)
        m = DeltaMeasure(ts)
        sets = BorelSet.from_json_dict(req.borel_set)
        va = m.of_borel(sets)
        vb = m.preimage_measure(sets)
        return schemas.MeasureResponse(
            distribution_value=va, image_value=vb, deviation=abs(va - vb)
        )

    @app.post("/verify")
    def verify(req: schemas.VerifyRequest):
        family = None
        if req.scale is not None:
            ts, family = _resolve_scale(req.scale)
            if family is None:
                # inline components: wrap so suites can materialize it
                family = NamedScale("inline", {}, lambda window, _ts=ts: _ts)
        report = suites.run_suite(
            req.suite,
            scale=family,
            params=req.params,
            seed=req.seed,
            tol_limit=req.tol_limit or TOL_LIMIT,
            tol_quad=req.tol_quad or TOL_QUAD,
        )
        return JSONResponse(content=report)

    @app.get("/corpus")
    def corpus_listing():
        return {
            "schema": 1,
            "families": [
                {"name": name, "parameters": PARAMETER_SCHEMA[name]}
                for name in FAMILY_NAMES
            ],
        }

    return app


app = create_app()
