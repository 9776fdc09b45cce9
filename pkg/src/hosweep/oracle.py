"""Monte Carlo validation oracle for the closed-form outcome models.

Each sampled chord is walked through its circle crossings by event rules
(trigger, execute, outage, exit), never through the probability formulas, so
agreement between the empirical rates and the analytic arcs is an
independent check. Sampling is statically partitioned: partition i draws
its stream from PCG64(SeedSequence((seed, *salt, i))) over fixed-size index
blocks, so counts are bit-identical for a given (seed, n_samples) regardless
of how partitions are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chords import Chord, crossing_half_distance
from .linkbudget import CircleSet
from .lte import POLICY_LTE
from .outcomes import MobilityParams, normalized
from .zeus import POLICY_ZEUS, POLICY_ZEUS_EXT

PARTITION_SIZE = 1 << 16

OUT_PASS_THROUGH = "pass-through"
OUT_NHO = "nho"
OUT_HOF_MUE = "hof-mue"
OUT_EHOP = "ehop"
OUT_HO = "ho"

_CIRCLE_ORDER = ("r_p", "r_pe", "r_pp", "big_r", "r_mp", "r_me", "r_m")


@dataclass(frozen=True)
class TrajectoryEvents:
    """One classified trajectory: crossing positions along the chord
    (signed, origin at the chord midpoint, sorted by travel order), the
    primary outcome label, and sub-flags for outcomes that can coexist
    with a completed handover."""

    chord: Chord
    crossings: tuple[tuple[str, float], ...]
    outcome: str
    tos_distance: float | None = None
    hof_pue: bool = False
    ping_pong: bool = False


def _crossings(circles: CircleSet, r: float) -> tuple[tuple[str, float], ...]:
    events = []
    for name in _CIRCLE_ORDER:
        half = crossing_half_distance(getattr(circles, name), r)
        if half is not None:
            events.append((name, -half))
            events.append((name, half))
    return tuple(sorted(events, key=lambda e: e[1]))


def classify_lte(
    chord: Chord, circles: CircleSet, mob: MobilityParams
) -> TrajectoryEvents:
    """Walk one chord under the baseline policy.

    Entering the trigger circle starts the timer; the handover executes a
    travel distance v*t_m later. Crossing the deep-outage circle first is a
    failure; leaving the trigger circle first means no handover. A completed
    handover is then checked outbound (deep-outage gap vs v*t_p) and for
    ping-pong (stay distance vs v*t_pp).
    """
    r = chord.r
    crossings = _crossings(circles, r)
    if r >= circles.r_mp:
        return TrajectoryEvents(chord, crossings, OUT_PASS_THROUGH)
    vt_m = mob.v_ms * mob.t_m_s
    w_mp = crossing_half_distance(circles.r_mp, r)
    if r < circles.r_m:
        w_m = crossing_half_distance(circles.r_m, r)
        if vt_m > w_mp - w_m:
            return TrajectoryEvents(chord, crossings, OUT_HOF_MUE)
    if vt_m > 2.0 * w_mp:
        return TrajectoryEvents(chord, crossings, OUT_NHO)
    # Inbound handover completes at -w_mp + vt_m; the UE is now on the pico.
    w_pp = crossing_half_distance(circles.r_pp, r)
    w_p = crossing_half_distance(circles.r_p, r)
    hof_pue = mob.v_ms * mob.t_p_s > w_p - w_pp
    tos = w_pp + mob.v_ms * mob.t_p_s - (-w_mp + vt_m)
    ping_pong = tos < mob.v_ms * mob.t_pp_s
    return TrajectoryEvents(
        chord, crossings, OUT_HO,
        tos_distance=tos, hof_pue=hof_pue, ping_pong=ping_pong,
    )


def classify_zeus(
    chord: Chord,
    circles: CircleSet,
    mob: MobilityParams,
    high_speed_ext: bool = False,
) -> TrajectoryEvents:
    """Walk one chord under the prepare-then-execute policy.

    Crossing the preparation circle prepares; crossing the execution circle
    executes instantly, so failures cannot occur. Prepared-but-not-executed
    chords are EHOP. With the high-speed extension, a stay distance v*t_pp
    above r_thresh suppresses preparation entirely.
    """
    r = chord.r
    crossings = _crossings(circles, r)
    if high_speed_ext and mob.v_ms * mob.t_pp_s > circles.r_thresh:
        return TrajectoryEvents(chord, crossings, OUT_PASS_THROUGH)
    if r >= circles.r_mp:
        return TrajectoryEvents(chord, crossings, OUT_PASS_THROUGH)
    if r >= circles.r_me:
        return TrajectoryEvents(chord, crossings, OUT_EHOP)
    tos = crossing_half_distance(circles.r_me, r) + crossing_half_distance(
        circles.r_pe, r
    )
    ping_pong = tos < mob.v_ms * mob.t_pp_s
    return TrajectoryEvents(
        chord, crossings, OUT_HO, tos_distance=tos, ping_pong=ping_pong
    )


@dataclass(frozen=True)
class OracleReport:
    """Empirical outcome rates with binomial standard errors.

    Raw rates are fractions of n_samples; normalized rates reuse the
    empirical denominators (triggered / completed populations). A standard
    error is NaN when its population is too small to estimate spread.
    """

    policy: str
    n_samples: int
    counts: dict[str, int] = field(repr=False)
    p_nho: float = 0.0
    p_hof_mue: float = 0.0
    p_hof_pue: float = 0.0
    p_pp: float = 0.0
    p_ehop: float = 0.0
    p_hof_mue_norm: float = 0.0
    p_hof_pue_norm: float = 0.0
    p_pp_norm: float = 0.0
    se_p_nho: float = math.nan
    se_p_hof_mue: float = math.nan
    se_p_hof_pue: float = math.nan
    se_p_pp: float = math.nan
    se_p_ehop: float = math.nan
    se_p_hof_mue_norm: float = math.nan
    se_p_hof_pue_norm: float = math.nan
    se_p_pp_norm: float = math.nan

    @property
    def degenerate(self) -> bool:
        """True when standard errors cannot be estimated from the sample."""
        return self.n_samples < 2


def _se(successes: int, trials: int) -> float:
    if trials < 2:
        return math.nan
    p = successes / trials
    return math.sqrt(p * (1.0 - p) / trials)


def _classify_lte_batch(
    r: np.ndarray, circles: CircleSet, mob: MobilityParams
) -> dict[str, int]:
    """Vectorized twin of classify_lte returning outcome counts."""
    vt_m = mob.v_ms * mob.t_m_s
    vt_p = mob.v_ms * mob.t_p_s
    vt_pp = mob.v_ms * mob.t_pp_s
    r_sq = r * r

    prepared = r < circles.r_mp
    w_mp = np.sqrt(np.maximum(circles.r_mp**2 - r_sq, 0.0), where=prepared,
                   out=np.zeros_like(r))
    in_outage = r < circles.r_m
    w_m = np.sqrt(np.maximum(circles.r_m**2 - r_sq, 0.0), where=in_outage,
                  out=np.zeros_like(r))
    hof_mue = in_outage & (vt_m > w_mp - w_m)
    nho_exit = prepared & ~hof_mue & (vt_m > 2.0 * w_mp)
    ho = prepared & ~hof_mue & ~nho_exit

    w_pp = np.sqrt(circles.r_pp**2 - r_sq)
    w_p = np.sqrt(circles.r_p**2 - r_sq)
    hof_pue = ho & (vt_p > w_p - w_pp)
    tos = w_pp + vt_p - (-w_mp + vt_m)
    ping_pong = ho & (tos < vt_pp)

    return {
        OUT_PASS_THROUGH: int(np.count_nonzero(~prepared)),
        OUT_NHO: int(np.count_nonzero(nho_exit)),
        OUT_HOF_MUE: int(np.count_nonzero(hof_mue)),
        OUT_EHOP: 0,
        OUT_HO: int(np.count_nonzero(ho)),
        "hof_pue": int(np.count_nonzero(hof_pue)),
        "ping_pong": int(np.count_nonzero(ping_pong)),
    }


def _classify_zeus_batch(
    r: np.ndarray,
    circles: CircleSet,
    mob: MobilityParams,
    high_speed_ext: bool,
) -> dict[str, int]:
    """Vectorized twin of classify_zeus returning outcome counts."""
    n = r.size
    vt_pp = mob.v_ms * mob.t_pp_s
    if high_speed_ext and vt_pp > circles.r_thresh:
        return {
            OUT_PASS_THROUGH: n, OUT_NHO: 0, OUT_HOF_MUE: 0, OUT_EHOP: 0,
            OUT_HO: 0, "hof_pue": 0, "ping_pong": 0,
        }
    r_sq = r * r
    prepared = r < circles.r_mp
    executed = r < circles.r_me
    ehop = prepared & ~executed
    w_me = np.sqrt(np.maximum(circles.r_me**2 - r_sq, 0.0), where=executed,
                   out=np.zeros_like(r))
    w_pe = np.sqrt(circles.r_pe**2 - r_sq)
    ping_pong = executed & (w_me + w_pe < vt_pp)
    return {
        OUT_PASS_THROUGH: int(np.count_nonzero(~prepared)),
        OUT_NHO: 0,
        OUT_HOF_MUE: 0,
        OUT_EHOP: int(np.count_nonzero(ehop)),
        OUT_HO: int(np.count_nonzero(executed)),
        "hof_pue": 0,
        "ping_pong": int(np.count_nonzero(ping_pong)),
    }


def _partition_r(
    seed: int, salt: tuple[int, ...], pid: int, count: int, big_r: float
) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, *salt, pid))))
    alpha = 0.5 * math.pi * rng.random(count)
    return big_r * np.sin(alpha)


def run_oracle(
    policy: str,
    circles: CircleSet,
    mob: MobilityParams,
    n_samples: int,
    seed: int,
    salt: tuple[int, ...] = (),
) -> OracleReport:
    """Classify n_samples random chords and aggregate empirical rates.

    policy is one of "LTE", "ZEUS", "ZEUS+ext". Deterministic for fixed
    (seed, salt, n_samples) independent of scheduling.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    if policy not in (POLICY_LTE, POLICY_ZEUS, POLICY_ZEUS_EXT):
        raise ValueError(f"unknown policy {policy!r}")

    totals = {k: 0 for k in (OUT_PASS_THROUGH, OUT_NHO, OUT_HOF_MUE,
                             OUT_EHOP, OUT_HO, "hof_pue", "ping_pong")}
    n_parts = (n_samples + PARTITION_SIZE - 1) // PARTITION_SIZE
    for pid in range(n_parts):
        count = min(PARTITION_SIZE, n_samples - pid * PARTITION_SIZE)
        r = _partition_r(seed, salt, pid, count, circles.big_r)
        if policy == POLICY_LTE:
            counts = _classify_lte_batch(r, circles, mob)
        else:
            counts = _classify_zeus_batch(
                r, circles, mob, high_speed_ext=(policy == POLICY_ZEUS_EXT)
            )
        for k, v in counts.items():
            totals[k] += v

    n = n_samples
    n_nho = totals[OUT_PASS_THROUGH] + totals[OUT_NHO] + totals[OUT_EHOP]
    n_triggered = n - n_nho if policy == POLICY_LTE else totals[OUT_HO]
    n_ho = totals[OUT_HO]
    pp_den = n_ho  # completed handovers for LTE, executed for the others
    return OracleReport(
        policy=policy,
        n_samples=n,
        counts=dict(totals),
        p_nho=n_nho / n,
        p_hof_mue=totals[OUT_HOF_MUE] / n,
        p_hof_pue=totals["hof_pue"] / n,
        p_pp=totals["ping_pong"] / n,
        p_ehop=totals[OUT_EHOP] / n,
        p_hof_mue_norm=normalized(totals[OUT_HOF_MUE], n_triggered),
        p_hof_pue_norm=normalized(totals["hof_pue"], n_ho),
        p_pp_norm=normalized(totals["ping_pong"], pp_den),
        se_p_nho=_se(n_nho, n),
        se_p_hof_mue=_se(totals[OUT_HOF_MUE], n),
        se_p_hof_pue=_se(totals["hof_pue"], n),
        se_p_pp=_se(totals["ping_pong"], n),
        se_p_ehop=_se(totals[OUT_EHOP], n),
        se_p_hof_mue_norm=_se(totals[OUT_HOF_MUE], n_triggered),
        se_p_hof_pue_norm=_se(totals["hof_pue"], n_ho),
        se_p_pp_norm=_se(totals["ping_pong"], pp_den),
    )
