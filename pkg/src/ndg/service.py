"""FastAPI service wrapping the core library.

The CLI (see :mod:`ndg.cli`) is a thin client of this app: by default it
mounts the ASGI app in-process, so no network listener is needed; ``ndg
serve`` exposes the same app over HTTP.  Domain errors (:class:`NdgError`)
map to status 400 with ``{"error": <class name>, "detail": <message>}``;
malformed request bodies get FastAPI's standard 422.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .degeneracy import d_tau_grid, degeneracy_report
from .distributions import (
    DistributionSpec,
    builtin_spec,
    draw,
    spec_from_jsonable,
    support_points,
)
from .errors import BadParams, NdgError
from .geometry import find_rectangle_witness, occupied_fraction, snap
from .montecarlo import McConfig, degeneracy_curve, replicate_statistics
from .sample import validate_sample
from .schemas import (
    CurvePointModel,
    CurveRequest,
    CurveResponse,
    EstimateRequest,
    EstimateResponse,
    GridModel,
    HealthResponse,
    McRequest,
    McResponse,
    SampleRequest,
    SampleResponse,
    SpecPayload,
    SupportRequest,
    SupportResponse,
    WitnessModel,
)

__all__ = ["create_app", "app", "resolve_spec"]


def resolve_spec(payload: SpecPayload) -> DistributionSpec:
    if payload.name is not None:
        return builtin_spec(payload.name, payload.params)
    return spec_from_jsonable({"components": payload.components})


def create_app() -> FastAPI:
    app = FastAPI(title="ndg", version=__version__)

    @app.exception_handler(NdgError)
    async def _domain_error(_: Request, exc: NdgError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", name="ndg", version=__version__)

    @app.post("/sample", response_model=SampleResponse)
    def sample(req: SampleRequest) -> SampleResponse:
        s = draw(resolve_spec(req.spec), req.n, req.seed)
        return SampleResponse(
            n=s.n,
            seed=req.seed,
            xs=s.xs.tolist(),
            ys=s.ys.tolist(),
            ties_in_x=s.ties_in_x,
            ties_in_y=s.ties_in_y,
        )

    @app.post("/estimate", response_model=EstimateResponse)
    def estimate(req: EstimateRequest) -> EstimateResponse:
        if len(req.xs) != len(req.ys):
            raise BadParams("xs and ys must have equal length")
        pairs = np.column_stack((req.xs, req.ys)) if req.xs else np.empty((0, 2))
        s = validate_sample(pairs, req.tie_policy)
        rep = degeneracy_report(s, req.threshold)
        grid = None
        if req.grid_size is not None:
            gx, gy, dgrid = d_tau_grid(s, req.grid_size)
            grid = GridModel(xs=gx.tolist(), ys=gy.tolist(), d_tau=dgrid.tolist())
        return EstimateResponse(
            n=s.n,
            tie_policy=req.tie_policy,
            threshold=rep.threshold_used,
            tau_hat=rep.tau_hat,
            rho_hat=rep.rho_hat,
            sigma2_tau=rep.sigma2_tau,
            sigma2_rho=rep.sigma2_rho,
            d_tau_min=rep.d_tau_range[0],
            d_tau_max=rep.d_tau_range[1],
            d_rho_min=rep.d_rho_range[0],
            d_rho_max=rep.d_rho_range[1],
            classification_tau="degenerate" if rep.degenerate_tau else "nondegenerate",
            classification_rho="degenerate" if rep.degenerate_rho else "nondegenerate",
            grid=grid,
        )

    @app.post("/support", response_model=SupportResponse)
    def support(req: SupportRequest) -> SupportResponse:
        spec = resolve_spec(req.spec)
        pts = support_points(spec, req.resolution)
        snapped = snap(pts, req.cell, req.origin)
        wit = find_rectangle_witness(snapped)
        bbox = (
            float(pts[:, 0].min()),
            float(pts[:, 0].max()),
            float(pts[:, 1].min()),
            float(pts[:, 1].max()),
        )
        occ = None
        if bbox[0] < bbox[1] and bbox[2] < bbox[3]:
            occ = occupied_fraction(pts, req.cell, bbox)
        return SupportResponse(
            resolution=req.resolution,
            cell=req.cell,
            origin=req.origin,
            n_support_points=int(pts.shape[0]),
            n_snapped_cells=len(snapped.points),
            witness=None
            if wit is None
            else WitnessModel(
                x1=wit.x1, x2=wit.x2, y1=wit.y1, y2=wit.y2, interior=wit.interior_point
            ),
            bbox=bbox,
            occupied_fraction=occ,
        )

    @app.post("/mc", response_model=McResponse)
    def mc(req: McRequest) -> McResponse:
        rep = replicate_statistics(
            McConfig(spec=resolve_spec(req.spec), n=req.n, reps=req.reps, base_seed=req.seed)
        )
        return McResponse(
            n=rep.n,
            reps=rep.reps,
            seed=req.seed,
            scaled_var_tau=rep.scaled_var_tau,
            scaled_var_rho=rep.scaled_var_rho,
            mean_sigma2_tau=rep.mean_sigma2_tau,
            mean_sigma2_rho=rep.mean_sigma2_rho,
        )

    @app.post("/curve", response_model=CurveResponse)
    def curve(req: CurveRequest) -> CurveResponse:
        rep = degeneracy_curve(resolve_spec(req.spec), req.n_list, req.reps, req.seed)
        return CurveResponse(
            reps=req.reps,
            seed=req.seed,
            points=[
                CurvePointModel(
                    n=p.n, scaled_var_tau=p.scaled_var_tau, scaled_var_rho=p.scaled_var_rho
                )
                for p in rep.points
            ],
            slope_tau=rep.slope_tau,
            slope_rho=rep.slope_rho,
        )

    return app


app = create_app()
