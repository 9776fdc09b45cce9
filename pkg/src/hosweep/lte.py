"""Closed-form outcome probabilities for baseline (TTT-based) handover.

A trajectory chord at perpendicular distance r from the pico centre crosses
each concentric circle of radius c at +-sqrt(c^2 - r^2) along the chord. The
inbound trigger fires on entering the trigger circle (radius r_mp) and the
handover executes a travel distance v*t_m later; outbound, the trigger fires
on leaving the outbound trigger circle (r_pp) with delay v*t_p. Comparing
those travel distances with crossing gaps partitions the chord population
into no-handover, handover-failure and successful-handover masses, each a
closed-form arc of the chord distribution.

Angles follow the chord convention of :mod:`hosweep.chords`: a bound on the
perpendicular distance r* maps to the arc (2/pi)*asin(r*/R), equivalently a
chord-length bound d* = 2*sqrt(R^2 - r*^2).
"""

from __future__ import annotations

import math

from .chords import prob_chord_between
from .linkbudget import CircleSet
from .outcomes import MobilityParams, OutcomeReport, normalized

TWO_OVER_PI = 2.0 / math.pi

POLICY_LTE = "LTE"


class BranchConditionError(ValueError):
    """Angle helper called outside its branch precondition."""


def _asin_checked(arg: float, what: str) -> float:
    """asin with tolerance for rounding overshoot; anything beyond that is a
    caller bug, not a geometric regime, and raises."""
    if arg > 1.0 + 1e-9 or arg < -1e-9:
        raise BranchConditionError(f"{what}: asin argument {arg} outside [0, 1]")
    return math.asin(min(max(arg, 0.0), 1.0))


def theta_angle(circles: CircleSet, mob: MobilityParams) -> float:
    """Half-angle of the widest chord that stays inside the inbound trigger
    circle for less than the trigger travel distance v*t_m.

    Defined by 2*sqrt(r_mp^2 - R^2 sin^2 theta) = v*t_m. Requires
    v*t_m <= 2*sqrt(r_mp^2 - r_m^2); beyond that every triggering chord
    reaches the deep-outage circle first and the tangent branch applies.
    """
    vt = mob.v_ms * mob.t_m_s
    cut = 2.0 * math.sqrt(circles.r_mp**2 - circles.r_m**2)
    if vt > cut:
        raise BranchConditionError(
            f"theta_angle needs v*t_m <= {cut:.6g} m, got {vt:.6g} m; "
            "use the tangent branch"
        )
    arg = (circles.r_mp / circles.big_r) ** 2 - (vt / (2.0 * circles.big_r)) ** 2
    return _asin_checked(math.sqrt(max(arg, 0.0)), "theta_angle")


def beta_angle(circles: CircleSet, mob: MobilityParams) -> float:
    """Half-angle of the critical chord where the gap between the inbound
    trigger crossing and the deep-outage crossing equals v*t_m.

    Defined by sqrt(r_mp^2 - r^2) - sqrt(r_m^2 - r^2) = v*t_m with
    r = R*sin(beta). Requires r_mp - r_m <= v*t_m <= sqrt(r_mp^2 - r_m^2).
    """
    vt = mob.v_ms * mob.t_m_s
    lo = circles.r_mp - circles.r_m
    hi = math.sqrt(circles.r_mp**2 - circles.r_m**2)
    if not lo <= vt <= hi:
        raise BranchConditionError(
            f"beta_angle needs v*t_m in [{lo:.6g}, {hi:.6g}] m, got {vt:.6g} m"
        )
    inner = (circles.r_mp**2 - circles.r_m**2 - vt * vt) / (
        2.0 * circles.big_r * vt
    )
    arg = (circles.r_m / circles.big_r) ** 2 - inner * inner
    return _asin_checked(math.sqrt(max(arg, 0.0)), "beta_angle")


def delta_angle(circles: CircleSet, mob: MobilityParams) -> float | None:
    """Half-angle of the critical chord where the gap between the outbound
    trigger crossing and the outbound deep-outage crossing equals v*t_p.

    Defined by sqrt(r_p^2 - r^2) - sqrt(r_pp^2 - r^2) = v*t_p with
    r = R*sin(delta). Requires v*t_p >= r_p - r_pp. Returns None when even
    the near-tangent chord fails, i.e. every outbound trajectory reaches the
    deep-outage circle before the handover executes.
    """
    vt = mob.v_ms * mob.t_p_s
    lo = circles.r_p - circles.r_pp
    if vt < lo:
        raise BranchConditionError(
            f"delta_angle needs v*t_p >= {lo:.6g} m, got {vt:.6g} m"
        )
    gap_at_tangent = math.sqrt(circles.r_p**2 - circles.big_r**2) - math.sqrt(
        circles.r_pp**2 - circles.big_r**2
    )
    if vt >= gap_at_tangent:
        return None
    inner = (circles.r_p**2 - circles.r_pp**2 - vt * vt) / (
        2.0 * circles.big_r * vt
    )
    arg = (circles.r_pp / circles.big_r) ** 2 - inner * inner
    return _asin_checked(math.sqrt(max(arg, 0.0)), "delta_angle")


def _d_nho(circles: CircleSet, mob: MobilityParams) -> float:
    """Largest chord length that ends with no handover."""
    vt = mob.v_ms * mob.t_m_s
    if vt > 2.0 * math.sqrt(circles.r_mp**2 - circles.r_m**2):
        return 2.0 * math.sqrt(circles.big_r**2 - circles.r_m**2)
    theta = theta_angle(circles, mob)
    return 2.0 * circles.big_r * math.cos(theta)


def _d_hf_mue(circles: CircleSet, mob: MobilityParams) -> float:
    """Smallest chord length that ends in an inbound handover failure
    (the diameter bound 2R when failures are impossible)."""
    vt = mob.v_ms * mob.t_m_s
    if vt < circles.r_mp - circles.r_m:
        return 2.0 * circles.big_r
    if vt > math.sqrt(circles.r_mp**2 - circles.r_m**2):
        return 2.0 * math.sqrt(circles.big_r**2 - circles.r_m**2)
    beta = beta_angle(circles, mob)
    return 2.0 * circles.big_r * math.cos(beta)


def p_nho_lte(circles: CircleSet, mob: MobilityParams) -> float:
    """Probability that a trajectory triggers no handover: it either misses
    the trigger circle or leaves it before the trigger travel distance."""
    vt = mob.v_ms * mob.t_m_s
    if vt > 2.0 * math.sqrt(circles.r_mp**2 - circles.r_m**2):
        return 1.0 - TWO_OVER_PI * math.asin(circles.r_m / circles.big_r)
    return 1.0 - TWO_OVER_PI * theta_angle(circles, mob)


def p_hof_mue_lte(circles: CircleSet, mob: MobilityParams) -> tuple[float, float]:
    """(raw, normalized) inbound handover-failure probability: the UE crosses
    into the deep-outage circle before the handover executes. Normalization
    conditions on trajectories that trigger a handover."""
    vt = mob.v_ms * mob.t_m_s
    if vt < circles.r_mp - circles.r_m:
        raw = 0.0
    elif vt > math.sqrt(circles.r_mp**2 - circles.r_m**2):
        raw = TWO_OVER_PI * math.asin(circles.r_m / circles.big_r)
    else:
        raw = TWO_OVER_PI * beta_angle(circles, mob)
    nho = p_nho_lte(circles, mob)
    return raw, normalized(raw, 1.0 - nho)


def _success_denominator(circles: CircleSet, mob: MobilityParams) -> float:
    """Mass of trajectories whose inbound handover completes."""
    raw_hof, _ = p_hof_mue_lte(circles, mob)
    return 1.0 - p_nho_lte(circles, mob) - raw_hof


def p_hof_pue_lte(circles: CircleSet, mob: MobilityParams) -> tuple[float, float]:
    """(raw, normalized) outbound handover-failure probability: after a
    successful inbound handover the UE crosses the outbound deep-outage
    circle before the outbound handover executes. Normalization conditions
    on successful inbound handovers."""
    vt_m = mob.v_ms * mob.t_m_s
    vt_p = mob.v_ms * mob.t_p_s
    if vt_m > 2.0 * math.sqrt(circles.r_mp**2 - circles.r_m**2):
        return 0.0, 0.0  # no inbound handover ever completes
    if vt_p < circles.r_p - circles.r_pp:
        return 0.0, 0.0
    delta = delta_angle(circles, mob)
    # None means every candidate chord fails: no lower cut on chord length.
    d_hf_pue = 0.0 if delta is None else 2.0 * circles.big_r * math.cos(delta)
    lo = max(d_hf_pue, _d_nho(circles, mob))
    hi = _d_hf_mue(circles, mob)
    raw = prob_chord_between(lo, hi, circles.big_r) if hi > lo else 0.0
    return raw, normalized(raw, _success_denominator(circles, mob))


def p_pp_lte(circles: CircleSet, mob: MobilityParams) -> tuple[float, float]:
    """(raw, normalized) ping-pong probability: a successful inbound
    handover whose time-of-stay in the pico is below t_pp.

    The stay distance along a chord at perpendicular distance r runs from
    the inbound execution point to the outbound one:
    sqrt(r_mp^2 - r^2) + sqrt(r_pp^2 - r^2) - v*t_m + v*t_p. An outbound
    failure does not rescue the handover from counting as a ping-pong.
    Normalization conditions on successful inbound handovers.
    """
    vt_m = mob.v_ms * mob.t_m_s
    if vt_m > 2.0 * math.sqrt(circles.r_mp**2 - circles.r_m**2):
        return 0.0, 0.0
    # Stay distance < v*t_pp rearranges to a bound on the crossing sum.
    s = mob.v_ms * mob.t_pp_s + vt_m - mob.v_ms * mob.t_p_s
    sum_min = math.sqrt(circles.r_pp**2 - circles.r_mp**2)
    if s <= sum_min:
        return 0.0, 0.0  # even the shortest pico traversal stays too long
    d_lo = _d_nho(circles, mob)
    d_hi = _d_hf_mue(circles, mob)
    if s < circles.r_mp + circles.r_pp:
        half = (s * s + circles.r_mp**2 - circles.r_pp**2) / (2.0 * s)
        r_crit_sq = circles.r_mp**2 - half * half
        d_short = 2.0 * math.sqrt(circles.big_r**2 - r_crit_sq)
        d_hi = min(d_hi, d_short)
    raw = prob_chord_between(d_lo, d_hi, circles.big_r) if d_hi > d_lo else 0.0
    return raw, normalized(raw, _success_denominator(circles, mob))


def evaluate_lte(circles: CircleSet, mob: MobilityParams) -> OutcomeReport:
    """All outcome probabilities for one point under the baseline policy."""
    nho = p_nho_lte(circles, mob)
    hf_mue, hf_mue_norm = p_hof_mue_lte(circles, mob)
    hf_pue, hf_pue_norm = p_hof_pue_lte(circles, mob)
    pp, pp_norm = p_pp_lte(circles, mob)
    return OutcomeReport(
        policy=POLICY_LTE,
        p_nho=nho,
        p_hof_mue=hf_mue,
        p_hof_pue=hf_pue,
        p_pp=pp,
        p_ehop=0.0,
        p_hof_mue_norm=hf_mue_norm,
        p_hof_pue_norm=hf_pue_norm,
        p_pp_norm=pp_norm,
    )
