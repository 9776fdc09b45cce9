"""FastAPI service wrapping the core calculators.

Run with: uvicorn hosweep.service:app
"""

from __future__ import annotations

from dataclasses import replace

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..config import ConfigError, hetnet_scenario, parse_scenario_ini
from ..linkbudget import (
    HoOffsets,
    InconsistentOffsetsError,
    NoBoundaryError,
    RadioScenario,
    boundary_distances,
    build_circle_set,
    ho_region_size,
)
from ..lte import evaluate_lte
from ..sweep import (
    DEFAULT_RSS_DIFFS_DB,
    LteSet,
    ScenarioEntry,
    SweepSpec,
    ZeusSet,
    emit_table4,
    preset_spec,
    run_sweep,
)
from ..zeus import evaluate_zeus
from . import schemas

PRESETS = {
    "fig7": "velocity sweep at macro-pico distance 250 m (all policies, 4 LTE + 2 ZEUS parameter sets)",
    "fig8": "velocity sweep at macro-pico distance 75 m (same parameter sets)",
    "fig9": "velocity sweep at macro-pico distance 125 m (same parameter sets)",
    "table4": "equal-offset boundary distances and circle radii for the bundled scenarios",
}


def _resolve_scenario(req) -> tuple[RadioScenario, HoOffsets] | None:
    """Scenario+offsets from an inline model, raw config text, or bundled
    preset distance; None when the request names no scenario."""
    preset_distance = getattr(req, "preset_distance_m", None)
    sources = [
        req.scenario is not None,
        req.config_ini is not None,
        preset_distance is not None,
    ]
    if sum(sources) > 1:
        raise ConfigError("give only one of scenario, config_ini, preset_distance_m")
    if req.config_ini is not None:
        scenario, offsets = parse_scenario_ini(req.config_ini)
    elif req.scenario is not None:
        scenario, offsets = req.scenario.to_core(), HoOffsets()
    elif preset_distance is not None:
        scenario, offsets = hetnet_scenario(preset_distance), HoOffsets()
    else:
        return None
    override = getattr(req, "offsets", None)
    if override is not None:
        offsets = override.to_core()
    return scenario, offsets


def _require_scenario(req) -> tuple[RadioScenario, HoOffsets]:
    resolved = _resolve_scenario(req)
    if resolved is None:
        raise ConfigError("scenario: none of scenario/config_ini/preset_distance_m given")
    return resolved


def _custom_spec(req: schemas.SweepRequest, entry: ScenarioEntry) -> SweepSpec:
    """Sweep spec for a custom (non-preset) scenario; the scenario's own
    trigger/execution offsets form the default parameter sets."""
    base = entry.base_offsets
    kwargs = {}
    if req.policies:
        kwargs["policies"] = tuple(req.policies)
    if req.velocities_kmh:
        kwargs["velocities_kmh"] = tuple(req.velocities_kmh)
    return SweepSpec(
        scenarios=(entry,),
        lte_sets=(
            tuple(s.to_core() for s in req.lte_sets)
            if req.lte_sets
            else (LteSet(base.hom_in_db, base.hoe_in_db, 480.0),)
        ),
        zeus_sets=(
            tuple(s.to_core() for s in req.zeus_sets)
            if req.zeus_sets
            else (ZeusSet(base.hom_in_db, base.hoe_in_db),)
        ),
        t_pp_s=req.t_pp_s,
        r_thresh_rule=req.r_thresh_rule,
        validate=req.validate_mc,
        samples=req.samples,
        seed=req.seed,
        **kwargs,
    )


def _preset_sweep_spec(req: schemas.SweepRequest, entry: ScenarioEntry | None) -> SweepSpec:
    if req.preset == "table4":
        raise ConfigError("preset: table4 is served by the /table4 endpoint")
    spec = preset_spec(
        req.preset,
        policies=tuple(req.policies) if req.policies else None,
        velocities_kmh=tuple(req.velocities_kmh) if req.velocities_kmh else None,
        validate=req.validate_mc,
        samples=req.samples,
        seed=req.seed,
        r_thresh_rule=req.r_thresh_rule,
        scenario_entry=entry,
    )
    overrides = {}
    if req.lte_sets:
        overrides["lte_sets"] = tuple(s.to_core() for s in req.lte_sets)
    if req.zeus_sets:
        overrides["zeus_sets"] = tuple(s.to_core() for s in req.zeus_sets)
    if req.t_pp_s != 1.0:
        overrides["t_pp_s"] = req.t_pp_s
    return replace(spec, **overrides) if overrides else spec


def create_app() -> FastAPI:
    app = FastAPI(
        title="hosweep",
        version=__version__,
        description="Geometric handover performance calculators for macro/pico HetNets",
    )

    @app.exception_handler(ConfigError)
    @app.exception_handler(InconsistentOffsetsError)
    @app.exception_handler(NoBoundaryError)
    async def _config_error(request, exc: ValueError) -> JSONResponse:
        return JSONResponse(
            status_code=422, content={"detail": f"configuration error: {exc}"}
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    async def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.get("/presets", response_model=list[schemas.PresetInfo])
    async def presets() -> list[schemas.PresetInfo]:
        return [schemas.PresetInfo(name=k, description=v) for k, v in PRESETS.items()]

    @app.post("/boundaries", response_model=schemas.BoundaryResponse)
    async def boundaries(req: schemas.BoundaryRequest) -> schemas.BoundaryResponse:
        scenario, _ = _require_scenario(req)
        m2p, p2m = boundary_distances(scenario, req.rss_diff_db)
        return schemas.BoundaryResponse(m2p_m=m2p, p2m_m=p2m, radius_m=0.5 * (p2m - m2p))

    @app.post("/ho-region", response_model=schemas.HoRegionResponse)
    async def ho_region(req: schemas.HoRegionRequest) -> schemas.HoRegionResponse:
        scenario, _ = _require_scenario(req)
        size = ho_region_size(scenario, req.trigger_diff_db, req.outage_diff_db)
        return schemas.HoRegionResponse(size_m=size)

    @app.post("/circles", response_model=schemas.CirclesResponse)
    async def circles(req: schemas.CirclesRequest) -> schemas.CirclesResponse:
        scenario, offsets = _require_scenario(req)
        cs = build_circle_set(scenario, offsets, r_thresh_rule=req.r_thresh_rule)
        return schemas.CirclesResponse(
            r_m=cs.r_m, r_me=cs.r_me, r_mp=cs.r_mp, big_r=cs.big_r,
            r_pp=cs.r_pp, r_pe=cs.r_pe, r_p=cs.r_p, r_thresh=cs.r_thresh,
        )

    @app.post("/outcomes", response_model=schemas.OutcomeResponse)
    async def outcomes(req: schemas.OutcomeRequest) -> schemas.OutcomeResponse:
        scenario, offsets = _require_scenario(req)
        if req.policy not in ("lte", "zeus", "zeus-ext"):
            raise ConfigError(f"policy: unknown policy {req.policy!r}")
        cs = build_circle_set(scenario, offsets, r_thresh_rule=req.r_thresh_rule)
        mob = req.mobility.to_core()
        if req.policy == "lte":
            report = evaluate_lte(cs, mob)
        else:
            report = evaluate_zeus(cs, mob, high_speed_ext=(req.policy == "zeus-ext"))
        return schemas.OutcomeResponse.from_report(report)

    @app.post("/sweep", response_model=schemas.SweepResponse)
    async def sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
        resolved = _resolve_scenario(req)
        entry = ScenarioEntry(*resolved) if resolved is not None else None
        if req.preset is not None:
            spec = _preset_sweep_spec(req, entry)
        elif entry is not None:
            spec = _custom_spec(req, entry)
        else:
            raise ConfigError("scenario: a sweep needs a preset or a scenario/config_ini")
        result = run_sweep(spec)
        validation = None
        if result.validation is not None:
            validation = schemas.ValidationModel(**vars(result.validation))
        return schemas.SweepResponse(
            csv=result.csv, n_rows=len(result.rows), validation=validation
        )

    @app.post("/table4", response_model=schemas.Table4Response)
    async def table4(req: schemas.Table4Request) -> schemas.Table4Response:
        resolved = _resolve_scenario(req)
        rss_diffs = tuple(req.rss_diffs_db) if req.rss_diffs_db else DEFAULT_RSS_DIFFS_DB
        if resolved is not None:
            scenario, _ = resolved
            csv = emit_table4(
                (scenario.macro_pico_distance_m,), rss_diffs,
                scenario_for=lambda d: scenario,
            )
        else:
            distances = tuple(req.distances_m) if req.distances_m else (75.0, 125.0, 250.0)
            csv = emit_table4(distances, rss_diffs)
        return schemas.Table4Response(csv=csv, n_rows=len(csv.splitlines()) - 1)

    return app


app = create_app()
