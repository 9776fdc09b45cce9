"""Scenario configuration: INI-style files and bundled reference presets.

A scenario file is key-value text with four sections::

    [macro]
    tx_power_dbm = 46
    antenna_gain_dbi = 14
    pathloss_intercept_db = 128.1
    pathloss_slope_db = 37.6

    [pico]
    tx_power_dbm = 30
    antenna_gain_dbi = 5
    pathloss_intercept_db = 140.7
    pathloss_slope_db = 36.7

    [geometry]
    macro_pico_distance_m = 250
    min_pathloss_db = 35

    [offsets]
    hom_in_db = 2
    hom_out_db = -2
    hoe_in_db = 3
    hoe_out_db = -3
    qin_in_db = 6
    qin_out_db = -4

Units are fixed by the key suffix. The [offsets] section is optional and
defaults to the values above. The bundled presets reproduce the 3GPP LTE
HetNet calibration parameters at macro-pico distances 75/125/250 m.
"""

from __future__ import annotations

import configparser
from importlib import resources

from .linkbudget import CellLink, HoOffsets, RadioScenario


class ConfigError(ValueError):
    """A scenario file or sweep request is malformed; message names the key."""


# 3GPP LTE HetNet calibration link parameters.
MACRO_3GPP = CellLink(
    tx_power_dbm=46.0,
    antenna_gain_dbi=14.0,
    pathloss_intercept_db=128.1,
    pathloss_slope_db=37.6,
)
PICO_3GPP = CellLink(
    tx_power_dbm=30.0,
    antenna_gain_dbi=5.0,
    pathloss_intercept_db=140.7,
    pathloss_slope_db=36.7,
)

PRESET_DISTANCES_M = (75.0, 125.0, 250.0)


def hetnet_scenario(distance_m: float) -> RadioScenario:
    """3GPP calibration macro/pico pair at the given site separation."""
    return RadioScenario(
        macro=MACRO_3GPP,
        pico=PICO_3GPP,
        macro_pico_distance_m=distance_m,
        min_pathloss_db=35.0,
    )


_CELL_KEYS = (
    "tx_power_dbm",
    "antenna_gain_dbi",
    "pathloss_intercept_db",
    "pathloss_slope_db",
)
_OFFSET_KEYS = (
    "hom_in_db", "hom_out_db", "hoe_in_db", "hoe_out_db", "qin_in_db", "qin_out_db",
)


def _get_float(parser: configparser.ConfigParser, section: str, key: str) -> float:
    try:
        return parser.getfloat(section, key)
    except (configparser.NoSectionError, configparser.NoOptionError) as exc:
        raise ConfigError(f"missing key [{section}] {key}") from exc
    except ValueError as exc:
        raise ConfigError(f"non-numeric value for [{section}] {key}") from exc


def parse_scenario_ini(text: str) -> tuple[RadioScenario, HoOffsets]:
    """Parse scenario text into (RadioScenario, HoOffsets)."""
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"unparseable scenario file: {exc}") from exc

    cells = {}
    for section in ("macro", "pico"):
        cells[section] = CellLink(*(_get_float(parser, section, k) for k in _CELL_KEYS))
    distance = _get_float(parser, "geometry", "macro_pico_distance_m")
    if distance <= 0:
        raise ConfigError("[geometry] macro_pico_distance_m must be positive")
    min_pl = (
        parser.getfloat("geometry", "min_pathloss_db")
        if parser.has_option("geometry", "min_pathloss_db")
        else 35.0
    )
    scenario = RadioScenario(cells["macro"], cells["pico"], distance, min_pl)

    if parser.has_section("offsets"):
        offsets = HoOffsets(*(_get_float(parser, "offsets", k) for k in _OFFSET_KEYS))
    else:
        offsets = HoOffsets()
    return scenario, offsets


def load_scenario_file(path: str) -> tuple[RadioScenario, HoOffsets]:
    """Read and parse a scenario file from disk."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path!r}: {exc}") from exc
    return parse_scenario_ini(text)


def bundled_scenario_ini(distance_m: float) -> str:
    """Text of the bundled preset file for one calibration distance."""
    if distance_m not in PRESET_DISTANCES_M:
        raise ConfigError(
            f"no bundled scenario at distance {distance_m}; "
            f"available: {PRESET_DISTANCES_M}"
        )
    name = f"hetnet{int(distance_m)}.ini"
    return (resources.files("hosweep.presets") / name).read_text(encoding="utf-8")
