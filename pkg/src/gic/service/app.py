"""FastAPI application wrapping the rate-region library.

Endpoints mirror the four CLI subcommands; all computation stays in the
core modules and the handlers only translate between pydantic models and
domain dataclasses. Domain errors map to HTTP 400.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import layers, optimizer, validation
from ..errors import GicError, NotOnFacet
from ..hk_region import WsrSolution, time_sharing_decomposition
from ..model import ChannelParams, make_split, rate_vector, validate_params
from . import schemas


def _params(m: schemas.ChannelParamsModel) -> ChannelParams:
    return validate_params(m.a, m.b, m.p1, m.p2, m.sigma2)


def _mu_grid(grid):
    mu = list(grid) if grid else optimizer.default_mu_grid()
    if not mu:
        raise ValueError("mu_grid must be nonempty")
    if any(m < 0.0 for m in mu) or any(y <= x for x, y in zip(mu, mu[1:])):
        raise ValueError("mu_grid must be nonnegative and strictly increasing")
    return mu


def _time_sharing(cp, point: optimizer.BoundaryPoint):
    sol = WsrSolution(mu=point.mu, rates=rate_vector(point.message_rates),
                      objective=point.objective, tight=point.tight,
                      dominant=point.dominant)
    try:
        ca, cb, lam = time_sharing_decomposition(cp, point.split, sol)
    except NotOnFacet:
        return None
    return schemas.TimeSharingModel(labels=ca.labels, corner_a=ca.rates,
                                    corner_b=cb.rates, lam=lam)


def create_app() -> FastAPI:
    app = FastAPI(title="gic", version="1.0")

    @app.exception_handler(GicError)
    async def _gic_error(request: Request, exc: GicError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.post("/region", response_model=schemas.RegionResponse)
    async def region(req: schemas.RegionRequest) -> schemas.RegionResponse:
        cp = _params(req.params)
        mu_grid = _mu_grid(req.mu_grid)
        opts = req.options
        boundary = optimizer.trace_boundary(cp, mu_grid, opts.coarse,
                                            opts.refine_rounds)
        points = []
        for bp in boundary:
            ru1, rv1, ru2, rv2 = bp.message_rates
            points.append(schemas.RegionPointModel(
                mu=bp.mu, r1=bp.r1, r2=bp.r2,
                r_u1=ru1, r_v1=rv1, r_u2=ru2, r_v2=rv2,
                pv1=bp.split.pv1, pv2=bp.split.pv2,
                dominant=bp.dominant, tight=list(bp.tight),
                objective=bp.objective,
                time_sharing=_time_sharing(cp, bp)))
        all_private = []
        comparison = []
        for mu, bp in zip(mu_grid, boundary):
            ap = optimizer.all_private_optimum(cp, mu)
            all_private.append(schemas.AllPrivatePointModel(
                mu=mu, q1=ap.used_powers[0], q2=ap.used_powers[1],
                r1=ap.rates[0], r2=ap.rates[1], objective=ap.objective))
            gap = bp.objective - ap.objective
            comparison.append(schemas.ComparisonRowModel(
                mu=mu, all_private=ap.objective, full_hk=bp.objective,
                gap=gap, agree=gap <= 1e-6))
        return schemas.RegionResponse(points=points, all_private=all_private,
                                      comparison=comparison)

    @app.post("/saturation", response_model=schemas.SaturationResponse)
    async def saturation(req: schemas.SaturationRequest
                         ) -> schemas.SaturationResponse:
        cp = _params(req.params)
        mu_grid = _mu_grid(req.mu_grid)
        opts = req.options
        rows = []
        for mu in mu_grid:
            r = optimizer.saturation_levels(cp, mu, opts.coarse,
                                            opts.refine_rounds)
            rows.append(schemas.SaturationRowModel(
                mu=r.mu, p_hat_1=r.p_hat_1, p_hat_2=r.p_hat_2,
                r_sat_1=r.r_sat_1, r_sat_2=r.r_sat_2,
                residual=r.residual_public_power, tolerance=r.tolerance,
                ok=r.ok))
        return schemas.SaturationResponse(rows=rows,
                                          all_ok=all(r.ok for r in rows))

    @app.post("/layers", response_model=schemas.LayersResponse)
    async def layer_convergence(req: schemas.LayersRequest
                                ) -> schemas.LayersResponse:
        cp = _params(req.params)
        pv1 = cp.p1 / 2.0 if req.pv1 is None else req.pv1
        pv2 = cp.p2 / 2.0 if req.pv2 is None else req.pv2
        ps = make_split(cp, pv1, pv2)
        rows = [schemas.LayersRowModel(**row)
                for row in layers.convergence_test(cp, ps, req.delta_list)]
        ref = layers.closed_form_rates(cp, ps)
        closed = {f"r_{label.lower()}": rate for label, rate
                  in zip(ref.base.labels, ref.base.rates)}
        closed["dummy_y1"] = ref.dummy_v2_at_y1
        closed["dummy_y2"] = ref.dummy_v1_at_y2
        return schemas.LayersResponse(rows=rows, closed_form=closed)

    @app.post("/validate", response_model=schemas.ValidateResponse)
    async def validate(req: schemas.ValidateRequest) -> schemas.ValidateResponse:
        results = validation.run_suite(seed=req.seed,
                                       inject_fault=req.inject_fault)
        return schemas.ValidateResponse(
            results=[schemas.CheckResultModel(name=r.name, passed=r.passed,
                                              detail=r.detail)
                     for r in results],
            report=validation.format_report(results),
            all_passed=all(r.passed for r in results))

    return app
