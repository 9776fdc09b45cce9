"""Independent numerical oracles used to compute expected values in tests.

Everything here re-derives quantities from their defining conditions:
trajectory event rules walked along a chord, bisection on crossing
equations, and direct quadrature of the chord density. None of the
library's closed-form angle or probability expressions are used, so a test
that compares the two is exercising two independent routes to the same
number.

Geometry recap (chord at perpendicular distance r from the centre of
nested circles, travelling left to right):
  * the chord cuts a circle of radius c iff r < c, at +-sqrt(c^2 - r^2)
    from the chord midpoint;
  * the inbound trigger fires at the first r_mp crossing and the handover
    executes a travel distance v*t_m later;
  * the outbound trigger fires at the r_pp exit crossing with delay v*t_p;
  * the chord density is f(r) = 2 / (pi * sqrt(R^2 - r^2)) on [0, R).
"""

from __future__ import annotations

import math
import warnings

from scipy.integrate import IntegrationWarning, quad


def half_cut(c: float, r: float) -> float:
    """Half-length of the chord segment inside a concentric circle of
    radius c (0 when the chord misses it)."""
    return math.sqrt(c * c - r * r) if r < c else 0.0


def bisect(f, lo: float, hi: float, tol: float = 1e-13) -> float:
    """Plain bisection for a sign change of f on [lo, hi]."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    assert (flo < 0) != (fhi < 0), f"no sign change on [{lo}, {hi}]"
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def density_mass(big_r: float, lo: float, hi: float) -> float:
    """Probability mass of the chord density on [lo, hi] by quadrature.

    The density has an integrable singularity at r = R; QUADPACK's
    extrapolation handles it but may warn, which is expected here.
    """
    lo = max(lo, 0.0)
    hi = min(hi, big_r)
    if hi <= lo:
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        if hi >= big_r * (1.0 - 1e-14):
            # Split off the (R - r)^(-1/2) endpoint singularity for the
            # algebraic-weight rule: f(r) = g(r) * (R - r)^(-1/2).
            value, err = quad(
                lambda r: 2.0 / (math.pi * math.sqrt(big_r + r)),
                lo,
                big_r,
                weight="alg",
                wvar=(0.0, -0.5),
                limit=500,
                epsabs=1e-12,
                epsrel=1e-12,
            )
        else:
            value, err = quad(
                lambda r: 2.0 / (math.pi * math.sqrt(big_r * big_r - r * r)),
                lo,
                hi,
                limit=500,
                epsabs=1e-12,
                epsrel=1e-12,
            )
    assert err < 1e-9, f"quadrature error estimate too large: {err}"
    return value


# ---------------------------------------------------------------------------
# Region boundaries in r-space, each from its defining crossing equation.
# ---------------------------------------------------------------------------

def nho_cut_r(circles, vt_m: float) -> float:
    """r above which a triggering chord leaves the trigger circle before the
    trigger travel distance elapses (inside-length 2*sqrt(r_mp^2-r^2) < vt_m).
    The inside length decreases with r, so the early-exit region is an upper
    band (cut, r_mp)."""
    mp = circles.r_mp
    if vt_m >= 2.0 * mp:
        return 0.0
    if vt_m <= 0.0:
        return mp
    return bisect(lambda r: 2.0 * half_cut(mp, r) - vt_m, 0.0, mp)


def hof_mue_cut_r(circles, vt_m: float) -> float:
    """r below which the inbound execute point falls beyond the deep-outage
    entry crossing (gap sqrt(r_mp^2-r^2) - sqrt(r_m^2-r^2) < vt_m). The gap
    grows with r, so the failing region is a lower band [0, cut)."""
    m, mp = circles.r_m, circles.r_mp

    def gap(r: float) -> float:
        return half_cut(mp, r) - half_cut(m, r)

    if vt_m <= gap(0.0):
        return 0.0
    if vt_m >= gap(m):
        return m
    return bisect(lambda r: gap(r) - vt_m, 0.0, m)


def hof_pue_cut_r(circles, vt_p: float) -> float:
    """r below which the outbound deep-outage crossing arrives within the
    outbound trigger travel distance (sqrt(r_p^2-r^2) - sqrt(r_pp^2-r^2)
    < vt_p). The outbound gap grows with r, so failures are a lower band."""
    pp, p, big_r = circles.r_pp, circles.r_p, circles.big_r

    def gap(r: float) -> float:
        return half_cut(p, r) - half_cut(pp, r)

    if vt_p <= gap(0.0):
        return 0.0
    if vt_p >= gap(big_r):
        return big_r
    return bisect(lambda r: gap(r) - vt_p, 0.0, big_r)


def pp_cut_r_lte(circles, mob) -> float:
    """r above which the pico stay distance drops below v*t_pp under the
    trigger-with-delay policy. Stay distance along the chord:
    sqrt(r_mp^2-r^2) + sqrt(r_pp^2-r^2) - v*t_m + v*t_p (decreasing in r)."""
    mp, pp = circles.r_mp, circles.r_pp
    vt_m = mob.v_ms * mob.t_m_s
    vt_p = mob.v_ms * mob.t_p_s
    vt_pp = mob.v_ms * mob.t_pp_s

    def stay(r: float) -> float:
        return half_cut(mp, r) + half_cut(pp, r) - vt_m + vt_p

    if stay(mp) >= vt_pp:
        return mp
    if stay(0.0) <= vt_pp:
        return 0.0
    return bisect(lambda r: stay(r) - vt_pp, 0.0, mp)


def pp_cut_r_zeus(circles, vt_pp: float) -> float:
    """r above which the stay distance between the inbound and outbound
    execution crossings, sqrt(r_me^2-r^2) + sqrt(r_pe^2-r^2), drops below
    v*t_pp under the prepare-then-execute policy."""
    me, pe = circles.r_me, circles.r_pe

    def stay(r: float) -> float:
        return half_cut(me, r) + half_cut(pe, r)

    if stay(me) >= vt_pp:
        return me
    if stay(0.0) <= vt_pp:
        return 0.0
    return bisect(lambda r: stay(r) - vt_pp, 0.0, me)


# ---------------------------------------------------------------------------
# Raw outcome masses by region decomposition + quadrature.
# ---------------------------------------------------------------------------

def lte_raw_masses(circles, mob) -> dict[str, float]:
    """Raw outcome probabilities for the trigger-with-delay policy.

    Event order per chord: crossing into the deep-outage circle before the
    execute point is a failure (even if the chord also exits early); else
    exiting the trigger circle before the execute point is a no-handover;
    else the handover completes and is checked outbound and for ping-pong.
    """
    big_r, mp = circles.big_r, circles.r_mp
    vt_m = mob.v_ms * mob.t_m_s
    hof_hi = hof_mue_cut_r(circles, vt_m)
    nho_lo = nho_cut_r(circles, vt_m)

    p_hof_mue = density_mass(big_r, 0.0, hof_hi)
    p_nho = density_mass(big_r, mp, big_r) + density_mass(
        big_r, max(nho_lo, hof_hi), mp
    )
    succ_lo, succ_hi = hof_hi, min(nho_lo, mp)
    p_success = density_mass(big_r, succ_lo, succ_hi)

    pue_hi = hof_pue_cut_r(circles, mob.v_ms * mob.t_p_s)
    p_hof_pue = density_mass(big_r, succ_lo, min(succ_hi, pue_hi))

    pp_lo = pp_cut_r_lte(circles, mob)
    p_pp = density_mass(big_r, max(succ_lo, pp_lo), succ_hi)

    return {
        "p_nho": p_nho,
        "p_hof_mue": p_hof_mue,
        "p_hof_pue": p_hof_pue,
        "p_pp": p_pp,
        "p_success": p_success,
    }


def zeus_raw_masses(circles, mob) -> dict[str, float]:
    """Raw outcome probabilities for the prepare-then-execute policy:
    execution happens exactly at the r_me crossing, so the only outcomes are
    miss (r >= r_mp), prepared-only (r_me <= r < r_mp) and executed, with
    ping-pong among the executed per the crossing-sum stay distance."""
    big_r, me, mp = circles.big_r, circles.r_me, circles.r_mp
    pp_lo = pp_cut_r_zeus(circles, mob.v_ms * mob.t_pp_s)
    return {
        "p_nho": density_mass(big_r, me, big_r),
        "p_ehop": density_mass(big_r, me, mp),
        "p_pp": density_mass(big_r, pp_lo, me),
        "p_exec": density_mass(big_r, 0.0, me),
    }


# ---------------------------------------------------------------------------
# Critical angles from their defining conditions (never the closed forms).
# ---------------------------------------------------------------------------

def solve_theta(circles, vt_m: float) -> float:
    """Half-angle whose chord spends exactly vt_m inside the trigger circle."""
    return math.asin(nho_cut_r(circles, vt_m) / circles.big_r)


def solve_beta(circles, vt_m: float) -> float:
    """Half-angle whose trigger-to-outage gap equals vt_m."""
    return math.asin(hof_mue_cut_r(circles, vt_m) / circles.big_r)


def solve_delta(circles, vt_p: float) -> float:
    """Half-angle whose outbound trigger-to-outage gap equals vt_p."""
    return math.asin(hof_pue_cut_r(circles, vt_p) / circles.big_r)


def solve_phi(circles, vt_pp: float) -> float:
    """Half-angle whose execution-to-execution stay distance equals vt_pp."""
    return math.asin(pp_cut_r_zeus(circles, vt_pp) / circles.big_r)
