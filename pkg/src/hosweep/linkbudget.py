"""Link-budget geometry for a macro/pico HetNet pair.

Received signal strength on each link is RSS = P_tx + G - max(PL(d), PL_min)
with PL(d) = A + B*log10(d_km). Solving RSS_pico - RSS_macro = rss_diff along
the macro->pico axis gives two boundary distances around the pico site; under
the concentric approximation each rss_diff maps to a circle centred on the
pico with radius (p2m - m2p) / 2. A handover parameter set then fixes seven
nested circles (deep-outage, execution and trigger boundaries on each side of
the equal-power circle) that drive the outcome models.

Distances are metres at every interface; path-loss laws take kilometres
internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

M_PER_KM = 1000.0

# Bisection bracket inset and convergence target, metres.
BRACKET_EPS_M = 1e-3
ROOT_TOL_M = 1e-9


class NoBoundaryError(ValueError):
    """No equal-offset boundary exists inside the search bracket."""


class InconsistentOffsetsError(ValueError):
    """Handover offsets do not produce strictly nested circles."""


@dataclass(frozen=True)
class CellLink:
    """One cell's transmit side: power, antenna gain and path-loss law."""

    tx_power_dbm: float
    antenna_gain_dbi: float
    pathloss_intercept_db: float  # A in PL = A + B*log10(d_km)
    pathloss_slope_db: float      # B in PL = A + B*log10(d_km)


@dataclass(frozen=True)
class RadioScenario:
    """Macro/pico pair with site separation and a common path-loss floor."""

    macro: CellLink
    pico: CellLink
    macro_pico_distance_m: float
    min_pathloss_db: float = 35.0

    def __post_init__(self) -> None:
        if self.macro_pico_distance_m <= 0:
            raise ValueError("macro_pico_distance_m must be positive")


@dataclass(frozen=True)
class HoOffsets:
    """RSS-difference offsets (dB) that define the handover circles.

    Inbound (macro->pico) offsets are positive, outbound negative, and each
    trigger < execution < deep-outage in magnitude.
    """

    hom_in_db: float = 2.0
    hom_out_db: float = -2.0
    hoe_in_db: float = 3.0
    hoe_out_db: float = -3.0
    qin_in_db: float = 6.0
    qin_out_db: float = -4.0

    def __post_init__(self) -> None:
        ok = (
            self.qin_in_db > self.hoe_in_db > self.hom_in_db > 0.0
            and 0.0 > self.hom_out_db > self.hoe_out_db > self.qin_out_db
        )
        if not ok:
            raise InconsistentOffsetsError(
                "offsets must satisfy qin_in > hoe_in > hom_in > 0 > "
                f"hom_out > hoe_out > qin_out, got {self}"
            )


@dataclass(frozen=True)
class CircleSet:
    """Nested pico-centred circle radii (m) for one scenario + offset set.

    Ordering r_m < r_me < r_mp < big_r < r_pp < r_pe < r_p is enforced;
    r_thresh is the speed-threshold radius used by the high-speed extension.
    """

    r_m: float      # inbound deep-outage boundary (HOF circle for macro UEs)
    r_me: float     # inbound execution boundary
    r_mp: float     # inbound trigger boundary
    big_r: float    # equal-power circle, the coverage radius
    r_pp: float     # outbound trigger boundary
    r_pe: float     # outbound execution boundary
    r_p: float      # outbound deep-outage boundary (HOF circle for pico UEs)
    r_thresh: float = field(default=0.0)

    def __post_init__(self) -> None:
        radii = (self.r_m, self.r_me, self.r_mp, self.big_r,
                 self.r_pp, self.r_pe, self.r_p)
        if not all(x > 0 for x in radii):
            raise InconsistentOffsetsError(f"radii must be positive, got {radii}")
        if not all(a < b for a, b in zip(radii, radii[1:])):
            raise InconsistentOffsetsError(
                f"radii must be strictly increasing r_m..r_p, got {radii}"
            )
        if self.r_thresh == 0.0:
            object.__setattr__(self, "r_thresh", self.big_r)
        if self.r_thresh <= 0:
            raise InconsistentOffsetsError("r_thresh must be positive")


def _pathloss_db(link: CellLink, distance_m: float, floor_db: float) -> float:
    """Floored log-distance path loss in dB at distance_m metres."""
    pl = link.pathloss_intercept_db + link.pathloss_slope_db * math.log10(
        distance_m / M_PER_KM
    )
    return max(pl, floor_db)


def rss_at(scenario: RadioScenario, cell: str, distance_m: float) -> float:
    """RSS (dBm) from 'macro' or 'pico' at a positive distance in metres."""
    if distance_m <= 0:
        raise ValueError(f"distance must be positive, got {distance_m}")
    try:
        link = {"macro": scenario.macro, "pico": scenario.pico}[cell]
    except KeyError:
        raise ValueError(f"cell must be 'macro' or 'pico', got {cell!r}") from None
    return (
        link.tx_power_dbm
        + link.antenna_gain_dbi
        - _pathloss_db(link, distance_m, scenario.min_pathloss_db)
    )


def _rss_diff_at(scenario: RadioScenario, x_m: float) -> float:
    """RSS_pico - RSS_macro (dB) at x metres from the macro along the axis."""
    pico_d = abs(scenario.macro_pico_distance_m - x_m)
    return rss_at(scenario, "pico", pico_d) - rss_at(scenario, "macro", x_m)


def _bisect(f, lo: float, hi: float) -> float:
    """Bisection root of f on [lo, hi]; requires a sign change."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise NoBoundaryError(
            f"no sign change on bracket ({lo:.6g}, {hi:.6g}): "
            f"f(lo)={flo:.3f}, f(hi)={fhi:.3f}"
        )
    while hi - lo > ROOT_TOL_M:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def boundary_distances(
    scenario: RadioScenario, rss_diff_db: float
) -> tuple[float, float]:
    """Distances from the macro site (m) where RSS_pico - RSS_macro equals
    rss_diff_db: (m2p, p2m) with m2p < D < p2m.

    m2p lies on the macro side of the pico, p2m beyond it. Raises
    NoBoundaryError when a root is missing inside the brackets
    (eps, D - eps) and (D + eps, 10 D).
    """
    d = scenario.macro_pico_distance_m

    def g(x: float) -> float:
        return _rss_diff_at(scenario, x) - rss_diff_db

    m2p = _bisect(g, BRACKET_EPS_M, d - BRACKET_EPS_M)
    p2m = _bisect(g, d + BRACKET_EPS_M, 10.0 * d)
    for x in (m2p, p2m):
        pico_d = abs(d - x)
        floored = (
            _pathloss_db(scenario.macro, x, -math.inf) < scenario.min_pathloss_db
            or _pathloss_db(scenario.pico, pico_d, -math.inf) < scenario.min_pathloss_db
        )
        if floored:
            raise NoBoundaryError(
                f"path-loss floor active at boundary x={x:.3f} m; "
                "the RSS difference is flat there and the boundary is ill-defined"
            )
        residual = abs(_rss_diff_at(scenario, x) - rss_diff_db)
        if residual >= 1e-3:
            raise NoBoundaryError(
                f"boundary residual {residual:.2e} dB at x={x:.3f} m exceeds 0.001 dB"
            )
    return m2p, p2m


def circle_radius(scenario: RadioScenario, rss_diff_db: float) -> float:
    """Concentric-approximation circle radius (m) for one RSS difference:
    half the gap between the two boundary distances."""
    m2p, p2m = boundary_distances(scenario, rss_diff_db)
    return 0.5 * (p2m - m2p)


def ho_region_size(
    scenario: RadioScenario, trigger_diff_db: float, outage_diff_db: float
) -> float:
    """Width (m) of the inbound handover region: gap between the trigger
    and deep-outage boundaries on the macro side of the pico."""
    trigger_m2p, _ = boundary_distances(scenario, trigger_diff_db)
    outage_m2p, _ = boundary_distances(scenario, outage_diff_db)
    return outage_m2p - trigger_m2p


def build_circle_set(
    scenario: RadioScenario,
    offsets: HoOffsets = HoOffsets(),
    r_thresh_rule: str = "coverage",
) -> CircleSet:
    """Solve all seven circles for one scenario + offset set.

    r_thresh_rule selects the high-speed-extension threshold radius:
    'coverage' -> equal-power radius, 'trigger' -> inbound trigger radius.
    """
    if r_thresh_rule not in ("coverage", "trigger"):
        raise ValueError(
            f"r_thresh_rule must be 'coverage' or 'trigger', got {r_thresh_rule!r}"
        )
    radii = {
        "r_m": circle_radius(scenario, offsets.qin_in_db),
        "r_me": circle_radius(scenario, offsets.hoe_in_db),
        "r_mp": circle_radius(scenario, offsets.hom_in_db),
        "big_r": circle_radius(scenario, 0.0),
        "r_pp": circle_radius(scenario, offsets.hom_out_db),
        "r_pe": circle_radius(scenario, offsets.hoe_out_db),
        "r_p": circle_radius(scenario, offsets.qin_out_db),
    }
    r_thresh = radii["big_r"] if r_thresh_rule == "coverage" else radii["r_mp"]
    return CircleSet(**radii, r_thresh=r_thresh)
