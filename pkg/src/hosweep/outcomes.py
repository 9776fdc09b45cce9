"""Shared mobility parameters and per-point outcome reports."""

from __future__ import annotations

from dataclasses import dataclass

KMH_PER_MS = 3.6

# Probability fields shared by analytic and empirical reports, raw then
# normalized; validation and CSV assembly iterate this tuple.
RAW_PROB_FIELDS = ("p_nho", "p_hof_mue", "p_hof_pue", "p_pp", "p_ehop")
NORM_PROB_FIELDS = ("p_hof_mue_norm", "p_hof_pue_norm", "p_pp_norm")
PROB_FIELDS = RAW_PROB_FIELDS + NORM_PROB_FIELDS

# Denominators below this are treated as empty populations: normalized
# rates collapse to 0 rather than dividing by rounding noise.
DEGENERATE_DENOMINATOR = 1e-12


def kmh_to_ms(v_kmh: float) -> float:
    """Speed conversion at the interface boundary; core code is m/s only."""
    return v_kmh / KMH_PER_MS


@dataclass(frozen=True)
class MobilityParams:
    """UE speed (m/s) and the timer set driving the outcome models.

    t_m / t_p are the inbound/outbound time-to-trigger (s); t_pp is the
    minimum time-of-stay under which a handover counts as a ping-pong (s).
    """

    v_ms: float
    t_m_s: float = 0.48
    t_p_s: float = 0.48
    t_pp_s: float = 1.0

    def __post_init__(self) -> None:
        if self.v_ms < 0:
            raise ValueError(f"speed must be non-negative, got {self.v_ms}")
        if self.t_m_s < 0 or self.t_p_s < 0:
            raise ValueError("time-to-trigger values must be non-negative")
        if self.t_pp_s <= 0:
            raise ValueError(f"t_pp_s must be positive, got {self.t_pp_s}")

    @classmethod
    def from_kmh(
        cls,
        v_kmh: float,
        ttt_m_ms: float = 480.0,
        ttt_p_ms: float | None = None,
        t_pp_s: float = 1.0,
    ) -> "MobilityParams":
        """Build from interface units (km/h, ms)."""
        if ttt_p_ms is None:
            ttt_p_ms = ttt_m_ms
        return cls(
            v_ms=kmh_to_ms(v_kmh),
            t_m_s=ttt_m_ms / 1000.0,
            t_p_s=ttt_p_ms / 1000.0,
            t_pp_s=t_pp_s,
        )


@dataclass(frozen=True)
class OutcomeReport:
    """Analytic outcome probabilities for one (policy, circles, mobility)
    point. Raw rates are fractions of all trajectories; normalized rates are
    conditioned on the relevant sub-population (0 when it is empty)."""

    policy: str
    p_nho: float
    p_hof_mue: float
    p_hof_pue: float
    p_pp: float
    p_ehop: float
    p_hof_mue_norm: float
    p_hof_pue_norm: float
    p_pp_norm: float


def normalized(raw: float, denominator: float) -> float:
    """raw/denominator, or 0 for an empty (or rounding-noise) population."""
    if denominator <= DEGENERATE_DENOMINATOR:
        return 0.0
    return raw / denominator
