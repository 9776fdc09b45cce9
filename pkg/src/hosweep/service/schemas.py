"""Pydantic request/response models for the service API."""

from __future__ import annotations

from pydantic import BaseModel, Field

from .. import linkbudget, outcomes, sweep


class CellModel(BaseModel):
    tx_power_dbm: float
    antenna_gain_dbi: float
    pathloss_intercept_db: float
    pathloss_slope_db: float

    def to_core(self) -> linkbudget.CellLink:
        return linkbudget.CellLink(**self.model_dump())


class ScenarioModel(BaseModel):
    macro: CellModel
    pico: CellModel
    macro_pico_distance_m: float = Field(gt=0)
    min_pathloss_db: float = 35.0

    def to_core(self) -> linkbudget.RadioScenario:
        return linkbudget.RadioScenario(
            macro=self.macro.to_core(),
            pico=self.pico.to_core(),
            macro_pico_distance_m=self.macro_pico_distance_m,
            min_pathloss_db=self.min_pathloss_db,
        )


class OffsetsModel(BaseModel):
    hom_in_db: float = 2.0
    hom_out_db: float = -2.0
    hoe_in_db: float = 3.0
    hoe_out_db: float = -3.0
    qin_in_db: float = 6.0
    qin_out_db: float = -4.0

    def to_core(self) -> linkbudget.HoOffsets:
        return linkbudget.HoOffsets(**self.model_dump())


class MobilityModel(BaseModel):
    v_kmh: float = Field(gt=0)
    ttt_m_ms: float = 480.0
    ttt_p_ms: float | None = None
    t_pp_s: float = Field(default=1.0, gt=0)

    def to_core(self) -> outcomes.MobilityParams:
        return outcomes.MobilityParams.from_kmh(
            self.v_kmh, self.ttt_m_ms, self.ttt_p_ms, self.t_pp_s
        )


class ScenarioRequest(BaseModel):
    """A scenario given inline, as raw config text, or as a bundled
    preset distance; exactly one source."""

    scenario: ScenarioModel | None = None
    config_ini: str | None = None
    preset_distance_m: float | None = None
    offsets: OffsetsModel | None = None


class BoundaryRequest(ScenarioRequest):
    rss_diff_db: float


class BoundaryResponse(BaseModel):
    m2p_m: float
    p2m_m: float
    radius_m: float


class HoRegionRequest(ScenarioRequest):
    trigger_diff_db: float = 2.0
    outage_diff_db: float = 6.0


class HoRegionResponse(BaseModel):
    size_m: float


class CirclesRequest(ScenarioRequest):
    r_thresh_rule: str = "coverage"


class CirclesResponse(BaseModel):
    r_m: float
    r_me: float
    r_mp: float
    big_r: float
    r_pp: float
    r_pe: float
    r_p: float
    r_thresh: float


class OutcomeRequest(ScenarioRequest):
    policy: str = "lte"
    mobility: MobilityModel
    r_thresh_rule: str = "coverage"


class OutcomeResponse(BaseModel):
    policy: str
    p_nho: float
    p_hof_mue: float
    p_hof_pue: float
    p_pp: float
    p_ehop: float
    p_hof_mue_norm: float
    p_hof_pue_norm: float
    p_pp_norm: float

    @classmethod
    def from_report(cls, report: outcomes.OutcomeReport) -> "OutcomeResponse":
        return cls(**{f: getattr(report, f) for f in cls.model_fields})


class LteSetModel(BaseModel):
    hom_db: float
    hoe_db: float
    ttt_ms: float

    def to_core(self) -> sweep.LteSet:
        return sweep.LteSet(**self.model_dump())


class ZeusSetModel(BaseModel):
    hop_db: float
    hoe_db: float

    def to_core(self) -> sweep.ZeusSet:
        return sweep.ZeusSet(**self.model_dump())


class SweepRequest(BaseModel):
    """Sweep over a preset grid or a custom scenario.

    preset picks the full built-in grid (fig7/fig8/fig9); config_ini or
    scenario supplies a custom scenario instead (or overrides the preset's
    scenario). Unset fields fall back to preset/default values.
    """

    preset: str | None = None
    scenario: ScenarioModel | None = None
    config_ini: str | None = None
    offsets: OffsetsModel | None = None
    policies: list[str] | None = None
    lte_sets: list[LteSetModel] | None = None
    zeus_sets: list[ZeusSetModel] | None = None
    velocities_kmh: list[float] | None = None
    t_pp_s: float = Field(default=1.0, gt=0)
    r_thresh_rule: str = "coverage"
    validate_mc: bool = False
    samples: int = Field(default=1_000_000, ge=1)
    seed: int = 0


class ValidationModel(BaseModel):
    n_points: int
    n_checks: int
    max_abs_z: float
    threshold: float
    passed: bool
    worst: str


class SweepResponse(BaseModel):
    csv: str
    n_rows: int
    validation: ValidationModel | None = None


class Table4Request(BaseModel):
    scenario: ScenarioModel | None = None
    config_ini: str | None = None
    distances_m: list[float] | None = None
    rss_diffs_db: list[float] | None = None


class Table4Response(BaseModel):
    csv: str
    n_rows: int


class PresetInfo(BaseModel):
    name: str
    description: str


class HealthResponse(BaseModel):
    status: str
    version: str
