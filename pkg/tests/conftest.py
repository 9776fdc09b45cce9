"""Shared fixtures: reference scenarios and circle sets.

All tests run against the bundled macro/pico calibration pair (46 dBm /
14 dBi macro with 128.1+37.6*log10(d_km) path loss; 30 dBm / 5 dBi pico
with 140.7+36.7*log10(d_km)) at site separations 75, 125 and 250 m.
"""

from __future__ import annotations

import pytest

from hosweep.config import hetnet_scenario
from hosweep.linkbudget import HoOffsets, build_circle_set
from hosweep.outcomes import MobilityParams

# Trigger/execution offset pairs used throughout: (2 dB, 3 dB) is the
# default set, (1 dB, 2 dB) the aggressive alternative.
OFFSETS_23 = HoOffsets()
OFFSETS_12 = HoOffsets(hom_in_db=1.0, hom_out_db=-1.0, hoe_in_db=2.0, hoe_out_db=-2.0)


def mob(v_kmh: float, ttt_ms: float = 480.0, t_pp_s: float = 1.0) -> MobilityParams:
    """Mobility shorthand for tests: symmetric inbound/outbound TTT."""
    return MobilityParams.from_kmh(v_kmh, ttt_ms, t_pp_s=t_pp_s)


@pytest.fixture(scope="session")
def scenario250():
    return hetnet_scenario(250.0)


@pytest.fixture(scope="session")
def scenario125():
    return hetnet_scenario(125.0)


@pytest.fixture(scope="session")
def scenario75():
    return hetnet_scenario(75.0)


@pytest.fixture(scope="session")
def circles250(scenario250):
    return build_circle_set(scenario250, OFFSETS_23)


@pytest.fixture(scope="session")
def circles250_12(scenario250):
    return build_circle_set(scenario250, OFFSETS_12)


@pytest.fixture(scope="session")
def circles125(scenario125):
    return build_circle_set(scenario125, OFFSETS_23)


@pytest.fixture(scope="session")
def circles75(scenario75):
    return build_circle_set(scenario75, OFFSETS_23)
