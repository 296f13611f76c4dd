"""Run parameter management: defaults, key=value config files, overrides."""

import copy
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from core.awgn_capacity import DEFAULT_PSD
from core.channel import DEFAULT_A, DEFAULT_EB, DEFAULT_SIGMA_F2, DEFAULT_SIGMA_G2
from core.numerics import DEFAULT_EPSILON

log = logging.getLogger(__name__)

# Flag / file key → dotted settings key
_KEY_MAP = {
    "eb": "channel.eb",
    "sigma-g2": "channel.sigma_g2",
    "sigma-f2": "channel.sigma_f2",
    "a": "channel.a",
    "kind": "channel.kind",
    "psd": "awgn.psd",
    "scenario": "awgn.scenario",
    "epsilon": "numerics.epsilon",
    "seed": "simulation.seed",
    "n-symbols": "simulation.n_symbols",
    "n-streams": "simulation.n_streams",
    "bins": "simulation.bins",
    "grid": "sweep.grid",
    "axis": "sweep.axis",
    "series": "sweep.series",
    "workers": "sweep.workers",
}


def normalize_key(key: str) -> str:
    """'sigma_g2', '--sigma-g2' and 'SIGMA-G2' all map to 'sigma-g2'."""
    return key.strip().lstrip("-").lower().replace("_", "-")


class Settings:
    """Layered run parameters: built-in defaults < config file < flags."""

    def __init__(self, config_file: Optional[Path] = None):
        self.config = self._get_default_config()
        self.config_file = Path(config_file) if config_file else None
        if self.config_file:
            self.load_file(self.config_file)

    def _get_default_config(self) -> Dict[str, Any]:
        """Reference channel constants and the documented run defaults."""
        return {
            "channel": {
                "eb": DEFAULT_EB,
                "sigma_g2": DEFAULT_SIGMA_G2,
                "sigma_f2": DEFAULT_SIGMA_F2,
                "a": DEFAULT_A,
                "kind": "I",
            },
            "awgn": {
                "psd": DEFAULT_PSD,
                "scenario": "all",
            },
            "numerics": {
                "epsilon": DEFAULT_EPSILON,
            },
            "simulation": {
                "seed": 42,
                "n_symbols": 1_000_000,
                "n_streams": 4,
                "bins": 50,
            },
            "sweep": {
                "grid": "1e-3:1e3:61:log",
                "axis": "a",
                "series": "",
                "workers": 1,
            },
        }

    def get(self, key: str, default=None) -> Any:
        """Get a value by dotted key ('channel.eb')."""
        keys = key.split(".")
        value = self.config
        for k in keys:
            if isinstance(value, dict):
                value = value.get(k, default)
            else:
                return default
        return value

    def set(self, key: str, value: Any):
        """Set a value by dotted key."""
        keys = key.split(".")
        config = self.config
        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]
        config[keys[-1]] = value

    def _coerce(self, dotted: str, value: Any) -> Any:
        """Convert *value* to the type of the default stored at *dotted*."""
        current = self.get(dotted)
        if value is None or current is None or isinstance(value, type(current)):
            return value
        try:
            if isinstance(current, int):
                try:
                    return int(value)
                except ValueError:
                    # accept '1e6' style counts
                    number = float(value)
                    if not number.is_integer():
                        raise
                    return int(number)
            if isinstance(current, float):
                return float(value)
        except (TypeError, ValueError):
            raise ValueError(f"{dotted.split('.')[-1]}: cannot read {value!r} as a number") from None
        return str(value)

    def apply(self, overrides: Mapping[str, Any]) -> None:
        """Apply flag-named overrides; None values are ignored."""
        for key, value in overrides.items():
            if value is None:
                continue
            name = normalize_key(key)
            if name not in _KEY_MAP:
                raise KeyError(f"Unknown parameter: {key}")
            dotted = _KEY_MAP[name]
            self.set(dotted, self._coerce(dotted, value))

    def load_file(self, path: Path) -> None:
        """Read a plain-text key=value file; '#' starts a comment."""
        overrides = {}
        with open(path, "r", encoding="utf-8") as f:
            for lineno, raw in enumerate(f, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
                key, value = (part.strip() for part in line.split("=", 1))
                if normalize_key(key) not in _KEY_MAP:
                    raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
                overrides[key] = value
        log.debug("Loaded %d settings from %s", len(overrides), path)
        self.apply(overrides)

    def resolved(self) -> Dict[str, Any]:
        """Flat flag-named record of every parameter."""
        return {name: copy.deepcopy(self.get(dotted)) for name, dotted in _KEY_MAP.items()}
