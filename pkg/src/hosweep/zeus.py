"""Closed-form outcome probabilities for prepare-then-execute handover.

This policy splits the inbound decision into a preparation boundary (radius
r_mp) and an execution boundary (r_me): the handover is prepared early and
executes instantly at the execution crossing, so no time-to-trigger races a
deep-outage circle and the failure probability is structurally zero. The
cost is early preparation without execution (EHOP) for chords that cross
the preparation circle but miss the execution circle, and residual
ping-pongs for chords whose stay between the inbound and outbound execution
crossings is shorter than the minimum time-of-stay. A high-speed extension
suppresses small-cell handover entirely once the stay distance v*t_pp
exceeds a threshold radius.
"""

from __future__ import annotations

import math
from dataclasses import replace

from .chords import prob_chord_between
from .linkbudget import CircleSet
from .lte import BranchConditionError, _asin_checked
from .outcomes import MobilityParams, OutcomeReport, normalized

TWO_OVER_PI = 2.0 / math.pi

POLICY_ZEUS = "ZEUS"
POLICY_ZEUS_EXT = "ZEUS+ext"

# Eq-residual budget (m) for the phi construction self-check.
_PHI_RESIDUAL_M = 1e-6


def p_nho_zeus(circles: CircleSet) -> float:
    """Probability of no handover: the chord misses the execution circle."""
    return 1.0 - TWO_OVER_PI * math.asin(circles.r_me / circles.big_r)


def p_nhop_zeus(circles: CircleSet) -> float:
    """Probability of no handover preparation: the chord misses the
    preparation circle."""
    return 1.0 - TWO_OVER_PI * math.asin(circles.r_mp / circles.big_r)


def p_ehop_zeus(circles: CircleSet) -> float:
    """Early-preparation-without-execution probability: prepared (crosses
    r_mp) but never executed (misses r_me)."""
    return p_nho_zeus(circles) - p_nhop_zeus(circles)


def p_hof_zeus() -> tuple[float, float]:
    """(inbound, outbound) failure probabilities; structurally zero because
    execution is instantaneous at the execution crossings."""
    return 0.0, 0.0


def phi_angle(circles: CircleSet, mob: MobilityParams) -> float:
    """Half-angle of the critical chord whose stay distance between the
    inbound and outbound execution crossings equals v*t_pp.

    Defined by sqrt(r_me^2 - r^2) + sqrt(r_pe^2 - r^2) = v*t_pp with
    r = R*sin(phi). Requires sqrt(r_pe^2 - r_me^2) <= v*t_pp <= r_me + r_pe.
    Each evaluation is re-checked against the defining crossing sum.
    """
    vt = mob.v_ms * mob.t_pp_s
    lo = math.sqrt(circles.r_pe**2 - circles.r_me**2)
    hi = circles.r_me + circles.r_pe
    if not lo <= vt <= hi:
        raise BranchConditionError(
            f"phi_angle needs v*t_pp in [{lo:.6g}, {hi:.6g}] m, got {vt:.6g} m"
        )
    inner = (circles.r_pe**2 - circles.r_me**2 + vt * vt) / (
        2.0 * circles.big_r * vt
    )
    arg = (circles.r_pe / circles.big_r) ** 2 - inner * inner
    phi = _asin_checked(math.sqrt(max(arg, 0.0)), "phi_angle")
    r_sq = (circles.big_r * math.sin(phi)) ** 2
    residual = abs(
        math.sqrt(max(circles.r_me**2 - r_sq, 0.0))
        + math.sqrt(max(circles.r_pe**2 - r_sq, 0.0))
        - vt
    )
    assert residual < _PHI_RESIDUAL_M, (
        f"phi construction violates its defining crossing sum by {residual:.3e} m"
    )
    return phi


def p_pp_zeus(circles: CircleSet, mob: MobilityParams) -> tuple[float, float]:
    """(raw, normalized) ping-pong probability: executed handovers whose
    stay distance sqrt(r_me^2 - r^2) + sqrt(r_pe^2 - r^2) is below v*t_pp.
    Normalization conditions on executed handovers."""
    vt = mob.v_ms * mob.t_pp_s
    d_exec = 2.0 * math.sqrt(circles.big_r**2 - circles.r_me**2)
    if math.sqrt(circles.r_pe**2 - circles.r_me**2) > vt:
        raw = 0.0  # even the tightest crossing pair stays too long
    elif circles.r_me + circles.r_pe < vt:
        # Even the diameter chord stays under t_pp: every handover ping-pongs.
        raw = prob_chord_between(d_exec, 2.0 * circles.big_r, circles.big_r)
    else:
        phi = phi_angle(circles, mob)
        d_hi = 2.0 * circles.big_r * math.cos(phi)
        raw = prob_chord_between(d_exec, d_hi, circles.big_r) if d_hi > d_exec else 0.0
    return raw, normalized(raw, 1.0 - p_nho_zeus(circles))


def apply_high_speed_ext(
    report: OutcomeReport, circles: CircleSet, mob: MobilityParams
) -> OutcomeReport:
    """Suppress small-cell handover for fast UEs: when the stay distance
    v*t_pp exceeds r_thresh, nothing is prepared or executed, so the report
    collapses to all-no-handover (rates over empty populations become 0)."""
    if mob.v_ms * mob.t_pp_s <= circles.r_thresh:
        return report
    return replace(
        report,
        policy=POLICY_ZEUS_EXT,
        p_nho=1.0,
        p_ehop=0.0,
        p_pp=0.0,
        p_pp_norm=0.0,
    )


def evaluate_zeus(
    circles: CircleSet, mob: MobilityParams, high_speed_ext: bool = False
) -> OutcomeReport:
    """All outcome probabilities for one point under the prepare-then-execute
    policy, optionally with the high-speed extension applied."""
    pp, pp_norm = p_pp_zeus(circles, mob)
    hof_mue, hof_pue = p_hof_zeus()
    report = OutcomeReport(
        policy=POLICY_ZEUS_EXT if high_speed_ext else POLICY_ZEUS,
        p_nho=p_nho_zeus(circles),
        p_hof_mue=hof_mue,
        p_hof_pue=hof_pue,
        p_pp=pp,
        p_ehop=p_ehop_zeus(circles),
        p_hof_mue_norm=0.0,
        p_hof_pue_norm=0.0,
        p_pp_norm=pp_norm,
    )
    if high_speed_ext:
        report = apply_high_speed_ext(report, circles, mob)
    return report
