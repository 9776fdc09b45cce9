"""Random-chord geometry for a disc of radius R.

Straight trajectories through the coverage disc are modelled as random
chords parameterised by the half-angle alpha ~ Uniform[0, pi/2): the chord's
perpendicular distance from the centre is r = R*sin(alpha) and its length is
d = 2*R*cos(alpha). Under this convention the density of r is
f(r) = 2 / (pi*sqrt(R^2 - r^2)) and the CDF is (2/pi)*asin(r/R).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Relative slack for arguments that may overshoot a domain edge by rounding.
_REL_EPS = 1e-12


@dataclass(frozen=True)
class Chord:
    """One sampled trajectory: half-angle alpha (rad), perpendicular
    distance r (m) from the disc centre, and chord length d (m)."""

    alpha: float
    r: float
    d: float


def chord_pdf(r: float, big_r: float) -> float:
    """Density of the perpendicular distance: 2 / (pi*sqrt(R^2 - r^2))."""
    if big_r <= 0:
        raise ValueError(f"big_r must be positive, got {big_r}")
    if not 0.0 <= r < big_r:
        raise ValueError(f"r must lie in [0, big_r), got r={r}, big_r={big_r}")
    return 2.0 / (math.pi * math.sqrt(big_r * big_r - r * r))


def chord_cdf(r: float, big_r: float) -> float:
    """P(perpendicular distance <= r) = (2/pi)*asin(r/R)."""
    if big_r <= 0:
        raise ValueError(f"big_r must be positive, got {big_r}")
    if not 0.0 <= r <= big_r:
        raise ValueError(f"r must lie in [0, big_r], got r={r}, big_r={big_r}")
    return (2.0 / math.pi) * math.asin(r / big_r)


def prob_chord_between(d1: float, d2: float, big_r: float) -> float:
    """P(d1 < chord length < d2) = (2/pi)*(acos(d1/2R) - acos(d2/2R))."""
    if big_r <= 0:
        raise ValueError(f"big_r must be positive, got {big_r}")
    dmax = 2.0 * big_r
    if not 0.0 <= d1 <= d2:
        raise ValueError(f"need 0 <= d1 <= d2, got d1={d1}, d2={d2}")
    if d2 > dmax * (1.0 + _REL_EPS):
        raise ValueError(f"d2={d2} exceeds the diameter {dmax}")
    lo = min(d1 / dmax, 1.0)
    hi = min(d2 / dmax, 1.0)
    return (2.0 / math.pi) * (math.acos(lo) - math.acos(hi))


def crossing_half_distance(circle_radius: float, r: float) -> float | None:
    """Half the length a chord at perpendicular distance r cuts from a
    concentric circle: sqrt(c^2 - r^2) for r <= c (0 at tangency), or None
    when the chord misses the circle."""
    if circle_radius < 0 or r < 0:
        raise ValueError("radii must be non-negative")
    if r > circle_radius:
        return None
    return math.sqrt(circle_radius * circle_radius - r * r)


class ChordSampler:
    """Draws chords with alpha ~ Uniform[0, pi/2) from a numpy Generator."""

    def __init__(self, big_r: float, rng: np.random.Generator):
        if big_r <= 0:
            raise ValueError(f"big_r must be positive, got {big_r}")
        self.big_r = big_r
        self.rng = rng

    def sample(self) -> Chord:
        """One chord."""
        alpha = 0.5 * math.pi * float(self.rng.random())
        r = self.big_r * math.sin(alpha)
        return Chord(alpha=alpha, r=r, d=2.0 * self.big_r * math.cos(alpha))

    def sample_r(self, n: int) -> np.ndarray:
        """Vector of n perpendicular distances (the batch fast path)."""
        alpha = 0.5 * math.pi * self.rng.random(n)
        return self.big_r * np.sin(alpha)


def sample_chord(rng: np.random.Generator, big_r: float) -> Chord:
    """One random chord of the radius-big_r disc."""
    return ChordSampler(big_r, rng).sample()
