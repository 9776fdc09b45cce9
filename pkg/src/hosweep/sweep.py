"""Sweep engine: velocity grids over parameter sets, CSV output, validation.

A sweep point is (scenario, policy, parameter set, speed). Points are
evaluated with the closed forms and, when validation is on, re-evaluated by
the Monte Carlo oracle; each raw probability must sit within 3 standard
errors of its empirical twin (standard error from the analytic rate, so
structurally exact rates must match exactly). Output is CSV with fractions
at 6 significant digits, byte-identical for identical spec + seed.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .config import ConfigError, hetnet_scenario
from .linkbudget import CircleSet, HoOffsets, RadioScenario, boundary_distances, build_circle_set
from .lte import POLICY_LTE, evaluate_lte
from .oracle import OracleReport, run_oracle
from .outcomes import RAW_PROB_FIELDS, MobilityParams, OutcomeReport
from .zeus import POLICY_ZEUS, POLICY_ZEUS_EXT, evaluate_zeus

Z_THRESHOLD = 3.0

POLICY_TOKENS = {"lte": POLICY_LTE, "zeus": POLICY_ZEUS, "zeus-ext": POLICY_ZEUS_EXT}

CSV_COLUMNS = (
    "policy", "distance_m", "hom_db", "hoe_db", "ttt_ms", "v_kmh",
    "p_nho", "p_hof_mue_raw", "p_hof_mue_norm", "p_hof_pue_raw",
    "p_hof_pue_norm", "p_pp_raw", "p_pp_norm", "p_ehop",
)
# CSV column -> OutcomeReport/OracleReport attribute.
_COL_TO_FIELD = {
    "p_nho": "p_nho",
    "p_hof_mue_raw": "p_hof_mue",
    "p_hof_mue_norm": "p_hof_mue_norm",
    "p_hof_pue_raw": "p_hof_pue",
    "p_hof_pue_norm": "p_hof_pue_norm",
    "p_pp_raw": "p_pp",
    "p_pp_norm": "p_pp_norm",
    "p_ehop": "p_ehop",
}
_PROB_COLUMNS = tuple(_COL_TO_FIELD)

DEFAULT_VELOCITIES_KMH = tuple(float(v) for v in range(5, 125, 5))
DEFAULT_RSS_DIFFS_DB = (-8.0, -6.0, -4.0, -3.0, -2.0, -1.0, 0.0,
                        1.0, 2.0, 3.0, 4.0, 6.0, 8.0)


@dataclass(frozen=True)
class LteSet:
    """One baseline parameter set: symmetric trigger offset and TTT."""

    hom_db: float
    hoe_db: float  # carried for circle construction; unused by the model
    ttt_ms: float


@dataclass(frozen=True)
class ZeusSet:
    """One prepare-then-execute parameter set: trigger/execution offsets."""

    hop_db: float
    hoe_db: float


@dataclass(frozen=True)
class ScenarioEntry:
    """A radio scenario plus the base offsets supplying deep-outage bounds."""

    scenario: RadioScenario
    base_offsets: HoOffsets = HoOffsets()


@dataclass(frozen=True)
class SweepSpec:
    """Full description of one sweep run."""

    scenarios: tuple[ScenarioEntry, ...]
    policies: tuple[str, ...] = ("lte", "zeus", "zeus-ext")
    lte_sets: tuple[LteSet, ...] = (LteSet(2.0, 3.0, 480.0),)
    zeus_sets: tuple[ZeusSet, ...] = (ZeusSet(2.0, 3.0),)
    velocities_kmh: tuple[float, ...] = DEFAULT_VELOCITIES_KMH
    t_pp_s: float = 1.0
    r_thresh_rule: str = "coverage"
    validate: bool = False
    samples: int = 1_000_000
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.scenarios:
            raise ConfigError("scenarios: at least one scenario is required")
        if not self.velocities_kmh:
            raise ConfigError("velocities_kmh: the velocity grid is empty")
        if any(v <= 0 for v in self.velocities_kmh):
            raise ConfigError("velocities_kmh: speeds must be positive")
        if not self.policies:
            raise ConfigError("policies: at least one policy is required")
        for token in self.policies:
            if token not in POLICY_TOKENS:
                raise ConfigError(
                    f"policies: unknown policy {token!r}; "
                    f"expected one of {sorted(POLICY_TOKENS)}"
                )
        if "lte" in self.policies and not self.lte_sets:
            raise ConfigError("lte_sets: empty while policy 'lte' requested")
        if {"zeus", "zeus-ext"} & set(self.policies) and not self.zeus_sets:
            raise ConfigError("zeus_sets: empty while a zeus policy is requested")
        if self.samples < 1:
            raise ConfigError(f"samples: must be >= 1, got {self.samples}")
        if self.t_pp_s <= 0:
            raise ConfigError(f"t_pp_s: must be positive, got {self.t_pp_s}")
        if self.r_thresh_rule not in ("coverage", "trigger"):
            raise ConfigError(
                f"r_thresh_rule: must be 'coverage' or 'trigger', got {self.r_thresh_rule!r}"
            )


@dataclass(frozen=True)
class SweepPoint:
    """One evaluated grid point (internal)."""

    policy_token: str
    distance_m: float
    hom_db: float
    hoe_db: float | None
    ttt_ms: float | None
    v_kmh: float
    circles: CircleSet = field(repr=False)
    mob: MobilityParams = field(repr=False)


@dataclass(frozen=True)
class ValidationSummary:
    """Worst analytic-vs-empirical deviation over a sweep."""

    n_points: int
    n_checks: int
    max_abs_z: float
    threshold: float
    passed: bool
    worst: str


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[dict, ...]
    csv: str
    validation: ValidationSummary | None


def _offsets_for(base: HoOffsets, trigger_db: float, exec_db: float) -> HoOffsets:
    """Swap the trigger/execution offsets of a parameter set into the base
    offsets (deep-outage bounds stay)."""
    return HoOffsets(
        hom_in_db=trigger_db,
        hom_out_db=-trigger_db,
        hoe_in_db=exec_db,
        hoe_out_db=-exec_db,
        qin_in_db=base.qin_in_db,
        qin_out_db=base.qin_out_db,
    )


def _points(spec: SweepSpec) -> list[SweepPoint]:
    points: list[SweepPoint] = []
    for entry in spec.scenarios:
        d = entry.scenario.macro_pico_distance_m
        circle_cache: dict[tuple[float, float], CircleSet] = {}

        def circles_for(trigger_db: float, exec_db: float) -> CircleSet:
            key = (trigger_db, exec_db)
            if key not in circle_cache:
                circle_cache[key] = build_circle_set(
                    entry.scenario,
                    _offsets_for(entry.base_offsets, trigger_db, exec_db),
                    r_thresh_rule=spec.r_thresh_rule,
                )
            return circle_cache[key]

        for token in spec.policies:
            if token == "lte":
                for s in spec.lte_sets:
                    circles = circles_for(s.hom_db, s.hoe_db)
                    for v in spec.velocities_kmh:
                        points.append(SweepPoint(
                            token, d, s.hom_db, None, s.ttt_ms, v, circles,
                            MobilityParams.from_kmh(v, s.ttt_ms, t_pp_s=spec.t_pp_s),
                        ))
            else:
                for z in spec.zeus_sets:
                    circles = circles_for(z.hop_db, z.hoe_db)
                    for v in spec.velocities_kmh:
                        points.append(SweepPoint(
                            token, d, z.hop_db, z.hoe_db, None, v, circles,
                            MobilityParams.from_kmh(v, t_pp_s=spec.t_pp_s),
                        ))
    return points


def _evaluate(point: SweepPoint) -> OutcomeReport:
    if point.policy_token == "lte":
        return evaluate_lte(point.circles, point.mob)
    return evaluate_zeus(
        point.circles, point.mob, high_speed_ext=(point.policy_token == "zeus-ext")
    )


def _null_se(p: float, n: int) -> float:
    return math.sqrt(p * (1.0 - p) / n)


def _z_scores(report: OutcomeReport, oracle: OracleReport, n: int) -> dict[str, float]:
    """Score-test z per raw probability; exact rates must match exactly."""
    zs = {}
    for name in RAW_PROB_FIELDS:
        analytic = getattr(report, name)
        empirical = getattr(oracle, name)
        se = _null_se(analytic, n)
        if se == 0.0:
            zs[name] = 0.0 if empirical == analytic else math.inf
        else:
            zs[name] = (empirical - analytic) / se
    return zs


def _fmt(value: float | str | None) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{value:.6g}"


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate every grid point; returns rows, CSV text and (optionally)
    the validation summary."""
    points = _points(spec)
    reports = [_evaluate(p) for p in points]

    oracles: list[OracleReport | None] = [None] * len(points)
    if spec.validate:
        def _run(idx_point):
            idx, point = idx_point
            return run_oracle(
                POLICY_TOKENS[point.policy_token], point.circles, point.mob,
                spec.samples, spec.seed, salt=(idx,),
            )
        with ThreadPoolExecutor() as pool:
            oracles = list(pool.map(_run, enumerate(points)))

    rows = []
    n_checks = 0
    max_abs_z = 0.0
    worst = ""
    for idx, (point, report) in enumerate(zip(points, reports)):
        row = {
            "policy": point.policy_token,
            "distance_m": point.distance_m,
            "hom_db": point.hom_db,
            "hoe_db": point.hoe_db,
            "ttt_ms": point.ttt_ms,
            "v_kmh": point.v_kmh,
        }
        for col, attr in _COL_TO_FIELD.items():
            row[col] = getattr(report, attr)
        oracle = oracles[idx]
        if oracle is not None:
            for col, attr in _COL_TO_FIELD.items():
                row["mc_" + col] = getattr(oracle, attr)
            zs = _z_scores(report, oracle, spec.samples)
            n_checks += len(zs)
            for name, z in zs.items():
                if abs(z) > abs(max_abs_z) or (worst == ""):
                    max_abs_z = z
                    worst = (
                        f"{point.policy_token}/D={point.distance_m:g}m"
                        f"/hom={point.hom_db:g}dB/v={point.v_kmh:g}km/h/{name}"
                    )
        rows.append(row)

    validation = None
    if spec.validate:
        validation = ValidationSummary(
            n_points=len(points),
            n_checks=n_checks,
            max_abs_z=abs(max_abs_z),
            threshold=Z_THRESHOLD,
            passed=abs(max_abs_z) <= Z_THRESHOLD,
            worst=worst,
        )
    return SweepResult(rows=tuple(rows), csv=_to_csv(rows, validation), validation=validation)


def _to_csv(rows: list[dict], validation: ValidationSummary | None) -> str:
    columns = list(CSV_COLUMNS)
    if rows and "mc_p_nho" in rows[0]:
        columns += ["mc_" + c for c in _PROB_COLUMNS]
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row.get(col)) for col in columns))
    if validation is not None:
        lines.append(
            f"# validation: points={validation.n_points} checks={validation.n_checks}"
            f" max_abs_z={validation.max_abs_z:.3f} worst={validation.worst}"
            f" threshold={validation.threshold:g}"
            f" result={'PASS' if validation.passed else 'FAIL'}"
        )
    return "\n".join(lines) + "\n"


def emit_table4(
    distances_m: tuple[float, ...] = (75.0, 125.0, 250.0),
    rss_diffs_db: tuple[float, ...] = DEFAULT_RSS_DIFFS_DB,
    scenario_for: Callable[[float], RadioScenario] | None = None,
) -> str:
    """CSV of equal-offset boundaries and circle radii (2 decimals):
    columns distance_m, rss_diff_db, m2p_m, p2m_m, radius_m."""
    if not distances_m:
        raise ConfigError("distances_m: empty distance list")
    if any(d <= 0 for d in distances_m):
        raise ConfigError("distances_m: distances must be positive")
    if not rss_diffs_db:
        raise ConfigError("rss_diffs_db: empty offset list")
    scenario_for = scenario_for or hetnet_scenario
    lines = ["distance_m,rss_diff_db,m2p_m,p2m_m,radius_m"]
    for d in distances_m:
        scenario = scenario_for(d)
        for diff in rss_diffs_db:
            m2p, p2m = boundary_distances(scenario, diff)
            radius = 0.5 * (p2m - m2p)
            lines.append(
                f"{d:g},{diff:g},{m2p:.2f},{p2m:.2f},{radius:.2f}"
            )
    return "\n".join(lines) + "\n"


def preset_spec(
    name: str,
    *,
    policies: tuple[str, ...] | None = None,
    velocities_kmh: tuple[float, ...] | None = None,
    validate: bool = False,
    samples: int = 1_000_000,
    seed: int = 0,
    r_thresh_rule: str = "coverage",
    scenario_entry: ScenarioEntry | None = None,
) -> SweepSpec:
    """Built-in sweep grids: fig7 (250 m), fig8 (75 m), fig9 (125 m)."""
    distances = {"fig7": 250.0, "fig8": 75.0, "fig9": 125.0}
    if name not in distances:
        raise ConfigError(
            f"preset: unknown preset {name!r}; expected fig7, fig8, fig9 or table4"
        )
    entry = scenario_entry or ScenarioEntry(hetnet_scenario(distances[name]))
    return SweepSpec(
        scenarios=(entry,),
        policies=policies or ("lte", "zeus", "zeus-ext"),
        lte_sets=(
            LteSet(2.0, 3.0, 480.0),
            LteSet(1.0, 2.0, 480.0),
            LteSet(2.0, 3.0, 80.0),
            LteSet(1.0, 2.0, 80.0),
        ),
        zeus_sets=(ZeusSet(2.0, 3.0), ZeusSet(1.0, 2.0)),
        velocities_kmh=velocities_kmh or DEFAULT_VELOCITIES_KMH,
        validate=validate,
        samples=samples,
        seed=seed,
        r_thresh_rule=r_thresh_rule,
    )
