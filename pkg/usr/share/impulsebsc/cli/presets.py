"""Named figure presets: one canonical reproduction per computational figure."""

from typing import Any, Dict, Optional, Tuple

from cli.runner import RunSpec, build_run_spec
from config.settings import Settings
from utils.i18n import _

# Log-spaced A grid used by every "versus A" figure unless noted
_A_GRID = "1e-3:1e3:61:log"

# name → (command, parameter overrides)
FIGURE_PRESETS: Dict[str, Tuple[str, Dict[str, Any]]] = {
    # density of the conditional noise variance for several A
    "fig3": ("variance-hist", {"kind": "I", "series": "0.1,1,10,100", "n-symbols": 1_000_000, "bins": 50}),
    "fig4": ("ber-sweep", {"kind": "I", "axis": "a", "grid": "1e-3:1e1:41:log"}),
    "fig5": ("ber-sweep", {"kind": "I", "axis": "snr", "grid": "0:80:81:lin", "series": "0.01,0.1,1"}),
    "fig6": ("ber-sweep", {"kind": "II", "axis": "a", "grid": _A_GRID}),
    "fig7": ("capacity-sweep", {"kind": "I", "grid": _A_GRID}),
    "fig8": ("capacity-sweep", {"kind": "II", "grid": _A_GRID}),
    "fig10": ("awgn-sweep", {"scenario": "++,+-", "grid": _A_GRID}),
    "fig11": ("awgn-sweep", {"scenario": "-+,--", "grid": _A_GRID}),
    "fig12": ("awgn-sweep", {"scenario": "+-,--", "grid": _A_GRID}),
}


def get_preset_names() -> list:
    """Known preset names in figure order."""
    return list(FIGURE_PRESETS.keys())


def figure_preset(
    name: str,
    settings: Optional[Settings] = None,
    overrides: Optional[Dict[str, Any]] = None,
    out=None,
) -> RunSpec:
    """Resolve a preset into a RunSpec.

    Precedence: *settings* (defaults or config file) < preset < *overrides*.
    """
    key = name.strip().lower()
    if key not in FIGURE_PRESETS:
        raise ValueError(
            _("Unknown figure preset: {name}. Valid presets: {valid}").format(
                name=name, valid=", ".join(get_preset_names())
            )
        )
    command, preset_overrides = FIGURE_PRESETS[key]
    merged = dict(preset_overrides)
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return build_run_spec(command, merged, settings=settings, out=out, preset=key)
