"""Flat ``key = value`` configuration with one section per subsystem.

The packaged ``defaults.cfg`` is the single versioned source of the
reference values; a user config file overrides any subset, and CLI flags
override both. ``render`` emits text that re-parses to an identical
effective configuration, which is what ``--dump-config`` prints.
"""

from __future__ import annotations

import configparser
import hashlib
from importlib import resources

from .engine import SimConfig
from .filters import FilterDesign
from .ladder import LadderConfig, uniform_ladder
from .power import IsoAmpBudget, QuantizerBudget


class ConfigError(ValueError):
    """Bad configuration file or value."""


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# section -> key -> parser; insertion order fixes the rendered layout
SCHEMA = {
    "ladder": {
        "channel_count": int,
        "min_threshold_v": float,
        "spacing_v": float,
        "v_adc_max": float,
        "diode_drop_v": float,
        "overlap_time_s": float,
        "forward_current_a": float,
        "ctr": float,
    },
    "filter": {
        "crossover_hz": float,
        "gain": float,
        "q": float,
    },
    "engine": {
        "engine_dt_s": float,
        "reconstruction_scale": float,
        "warm_start": _parse_bool,
    },
    "signal": {
        "v0_v": float,
        "steps": int,
        "sample_interval_s": float,
        "seed": int,
        "rng": str,
    },
    "power": {
        "v_pri_v": float,
        "i_b_a": float,
        "v_iso_v": float,
        "i_pri_a": float,
        "eta": float,
        "v_sec_v": float,
        "i_sec_a": float,
        "i_zf_a": float,
        "i_out_a": float,
    },
}


def _defaults_text() -> str:
    return resources.files("isoquant").joinpath("defaults.cfg").read_text("utf-8")


def defaults_hash() -> str:
    """Short content hash of the packaged defaults, shown by --version."""
    return hashlib.sha256(_defaults_text().encode()).hexdigest()[:12]


def _parse(text: str, origin: str) -> dict:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text, source=origin)
    except configparser.Error as exc:
        raise ConfigError(f"{origin}: {exc}") from None
    values: dict = {}
    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError(f"{origin}: unknown section [{section}]")
        values[section] = {}
        for key, raw in parser.items(section):
            if key not in SCHEMA[section]:
                raise ConfigError(f"{origin}: unknown key {key!r} in [{section}]")
            try:
                values[section][key] = SCHEMA[section][key](raw)
            except ValueError as exc:
                raise ConfigError(f"{origin}: [{section}] {key}: {exc}") from None
    return values


def load_config(path=None) -> dict:
    """Effective configuration: packaged defaults overlaid by a user file."""
    effective = _parse(_defaults_text(), "defaults.cfg")
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            overrides = _parse(fh.read(), str(path))
        for section, pairs in overrides.items():
            effective.setdefault(section, {}).update(pairs)
    if effective["signal"]["rng"] != "pcg64":
        raise ConfigError("rng: only 'pcg64' is supported")
    return effective


def render(cfg: dict) -> str:
    """Emit a configuration as the same flat text format it parses from."""
    lines = []
    for section, keys in SCHEMA.items():
        lines.append(f"[{section}]")
        for key in keys:
            value = cfg[section][key]
            if isinstance(value, bool):
                text = "true" if value else "false"
            elif isinstance(value, float):
                text = repr(value)
            else:
                text = str(value)
            lines.append(f"{key} = {text}")
        lines.append("")
    return "\n".join(lines)


def parse_text(text: str, origin: str = "<config>") -> dict:
    """Parse rendered config text back to a value dict (round-trip helper)."""
    return _parse(text, origin)


def ladder_from(cfg: dict) -> LadderConfig:
    c = cfg["ladder"]
    return uniform_ladder(
        n_channels=c["channel_count"],
        min_threshold=c["min_threshold_v"],
        spacing=c["spacing_v"],
        v_adc_max=c["v_adc_max"],
        diode_drop=c["diode_drop_v"],
        overlap_time=c["overlap_time_s"],
        forward_current=c["forward_current_a"],
        ctr=c["ctr"],
    )


def filter_from(cfg: dict) -> FilterDesign:
    return FilterDesign(
        crossover_hz=cfg["filter"]["crossover_hz"],
        gain=cfg["filter"]["gain"],
        q=cfg["filter"]["q"],
        sample_interval=cfg["engine"]["engine_dt_s"],
    )


def sim_config_from(cfg: dict) -> SimConfig:
    return SimConfig(
        ladder=ladder_from(cfg),
        filter=filter_from(cfg),
        engine_dt=cfg["engine"]["engine_dt_s"],
        reconstruction_scale=cfg["engine"]["reconstruction_scale"],
        warm_start=cfg["engine"]["warm_start"],
    )


def budgets_from(cfg: dict) -> tuple[IsoAmpBudget, QuantizerBudget]:
    p = cfg["power"]
    iso = IsoAmpBudget(
        v_pri=p["v_pri_v"],
        i_b=p["i_b_a"],
        v_iso=p["v_iso_v"],
        i_pri=p["i_pri_a"],
        eta=p["eta"],
        v_sec=p["v_sec_v"],
        i_sec=p["i_sec_a"],
    )
    quant = QuantizerBudget(
        v_pri=p["v_pri_v"],
        i_zf=p["i_zf_a"],
        v_sec=p["v_sec_v"],
        i_out=p["i_out_a"],
    )
    return iso, quant
