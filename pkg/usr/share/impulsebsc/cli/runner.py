"""Run controller: resolve a RunSpec, dispatch it to the library, emit the table.

Keeps the click front end thin: commands only build a RunSpec, this module
does the work and the writing.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click
import numpy as np

from cli.output import Table, build_metadata, render_csv, write_outputs
from config.settings import Settings
from core.awgn_capacity import (
    ALL_SCENARIOS,
    AwgnParams,
    KnowledgeScenario,
    awgn_capacity_table,
    awgn_sweep,
    capacity_limit_large_a,
)
from core.ber import (
    SweepAxis,
    ber_analytic,
    ber_limit_large_a,
    ber_limit_small_a,
    ber_sweep,
)
from core.bsc_capacity import capacity_point, capacity_sweep, equal_performance_shift
from core.channel import ChannelKind, ChannelParams
from core.monte_carlo import SimConfig, empirical_variance_histogram, simulate_ber
from core.numerics import DomainError
from utils.i18n import _

log = logging.getLogger(__name__)


@dataclass
class RunSpec:
    """One CLI invocation: command, fully resolved parameters, output path."""

    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    out: Optional[Path] = None
    preset: Optional[str] = None


# ── Parameter parsing ───────────────────────────────────────────


def parse_grid(spec: str) -> List[float]:
    """Explicit list '0.1,1,10' or range 'start:stop:count:lin|log'."""
    text = str(spec).strip()
    if not text:
        raise DomainError("grid", "empty grid")
    try:
        if ":" not in text:
            return [float(v) for v in text.split(",") if v.strip()]
        parts = text.split(":")
        if len(parts) != 4:
            raise DomainError("grid", f"expected start:stop:count:lin|log, got {text!r}")
        start, stop, count, scale = float(parts[0]), float(parts[1]), int(parts[2]), parts[3].strip().lower()
    except ValueError as e:
        if isinstance(e, DomainError):
            raise
        raise DomainError("grid", f"cannot parse {text!r}") from None

    if count < 1:
        raise DomainError("grid", f"count must be >= 1, got {count}")
    if scale == "lin":
        return np.linspace(start, stop, count).tolist()
    if scale == "log":
        if start <= 0 or stop <= 0:
            raise DomainError("grid", "log grids need start and stop > 0")
        return np.geomspace(start, stop, count).tolist()
    raise DomainError("grid", f"scale must be lin or log, got {scale!r}")


def _series(params: Dict[str, Any]) -> List[float]:
    """A values of a multi-curve run; falls back to the single --a."""
    series = str(params.get("series") or "").strip()
    return parse_grid(series) if series else [float(params["a"])]


def _scenarios(value: str) -> List[KnowledgeScenario]:
    text = str(value).strip().lower()
    if text in ("", "all"):
        return list(ALL_SCENARIOS)
    return [KnowledgeScenario.parse(s) for s in text.split(",") if s.strip()]


def _channel(params: Dict[str, Any], a: Optional[float] = None) -> ChannelParams:
    return ChannelParams(
        eb=params["eb"],
        sigma_g2=params["sigma-g2"],
        sigma_f2=params["sigma-f2"],
        a=params["a"] if a is None else a,
    )


def _awgn(params: Dict[str, Any]) -> AwgnParams:
    return AwgnParams(psd=params["psd"], channel=_channel(params))


def _sim_config(params: Dict[str, Any], a: Optional[float] = None) -> SimConfig:
    return SimConfig(
        kind=ChannelKind.parse(params["kind"]),
        params=_channel(params, a),
        n_symbols=params["n-symbols"],
        seed=params["seed"],
        n_streams=params["n-streams"],
    )


# ── Command handlers ────────────────────────────────────────────


def _run_ber(p: Dict[str, Any]) -> Table:
    kind = ChannelKind.parse(p["kind"])
    params = _channel(p)
    return Table(
        ["kind", "a", "ber", "ber_limit_large_a", "ber_limit_small_a"],
        [[kind, params.a, ber_analytic(kind, params, p["epsilon"]),
          ber_limit_large_a(kind, params), ber_limit_small_a(kind, params)]],
    )


def _run_ber_sweep(p: Dict[str, Any]) -> Table:
    kind = ChannelKind.parse(p["kind"])
    axis = SweepAxis.parse(p["axis"])
    grid = parse_grid(p["grid"])
    if axis is SweepAxis.A:
        base = _channel(p)
        table = Table(["kind", "a", "ber", "error"])
        for point in ber_sweep(kind, base, axis, grid, p["epsilon"], p["workers"]):
            table.rows.append([kind, point.x, point.ber, point.error])
        return table

    table = Table(["kind", "a", "snr_db", "ber", "error"])
    for a in _series(p):
        base = _channel(p, a)
        for point in ber_sweep(kind, base, axis, grid, p["epsilon"], p["workers"]):
            table.rows.append([kind, a, point.x, point.ber, point.error])
    return table


def _run_capacity(p: Dict[str, Any]) -> Table:
    kind = ChannelKind.parse(p["kind"])
    point = capacity_point(kind, _channel(p), p["epsilon"])
    return Table(
        ["kind", "a", "c_informed", "c_noninformed"],
        [[kind, point.a, point.c_informed, point.c_noninformed]],
    )


def _run_capacity_sweep(p: Dict[str, Any]) -> Table:
    kind = ChannelKind.parse(p["kind"])
    table = Table(["kind", "a", "c_informed", "c_noninformed", "error"])
    for point in capacity_sweep(kind, _channel(p), parse_grid(p["grid"]), p["epsilon"], p["workers"]):
        table.rows.append([kind, point.a, point.c_informed, point.c_noninformed, point.error])
    return table


def _run_awgn_capacity(p: Dict[str, Any]) -> Table:
    params = _awgn(p)
    capacities = awgn_capacity_table(params, p["epsilon"])
    limit = capacity_limit_large_a(params)
    table = Table(["scenario", "a", "psd", "capacity", "capacity_limit_large_a"])
    for scenario in _scenarios(p["scenario"]):
        table.rows.append([scenario.label, params.channel.a, params.psd, capacities[scenario], limit])
    return table


def _run_awgn_sweep(p: Dict[str, Any]) -> Table:
    table = Table(["a", "scenario", "capacity", "error"])
    points = awgn_sweep(_awgn(p), parse_grid(p["grid"]), _scenarios(p["scenario"]),
                        p["epsilon"], p["workers"])
    for point in points:
        table.rows.append([point.a, point.scenario.label, point.capacity, point.error])
    return table


def _run_simulate(p: Dict[str, Any]) -> Table:
    table = Table(["kind", "a", "n_symbols", "seed", "n_streams", "errors",
                   "p_hat", "ci_halfwidth_95", "ber_analytic"])
    for a in _series(p):
        config = _sim_config(p, a)
        estimate = simulate_ber(config)
        analytic = ber_analytic(config.kind, config.params, p["epsilon"])
        table.rows.append([config.kind, a, config.n_symbols, config.seed, config.n_streams,
                           estimate.errors, estimate.p_hat, estimate.ci_halfwidth_95, analytic])
    return table


def _run_variance_hist(p: Dict[str, Any]) -> Table:
    table = Table(["kind", "a", "bin_left", "bin_right", "mass"])
    for a in _series(p):
        config = _sim_config(p, a)
        hist = empirical_variance_histogram(config, p["bins"])
        for left, right, mass in zip(hist.edges[:-1], hist.edges[1:], hist.masses):
            table.rows.append([config.kind, a, float(left), float(right), float(mass)])
    return table


def _run_equal_shift(p: Dict[str, Any]) -> Table:
    kind = ChannelKind.parse(p["kind"])
    params = _channel(p)
    result = equal_performance_shift(kind, params, params.a, p["epsilon"])
    return Table(
        ["kind", "a_noninformed", "target_capacity", "a_informed", "reason"],
        [[kind, params.a, result.target_capacity, result.a_informed, result.reason]],
    )


# Command name → handler
_COMMANDS: Dict[str, Callable[[Dict[str, Any]], Table]] = {
    "ber": _run_ber,
    "ber-sweep": _run_ber_sweep,
    "capacity": _run_capacity,
    "capacity-sweep": _run_capacity_sweep,
    "awgn-capacity": _run_awgn_capacity,
    "awgn-sweep": _run_awgn_sweep,
    "simulate": _run_simulate,
    "variance-hist": _run_variance_hist,
    "equal-shift": _run_equal_shift,
}


def get_commands() -> List[str]:
    return list(_COMMANDS.keys())


def build_run_spec(
    command: str,
    overrides: Optional[Dict[str, Any]] = None,
    settings: Optional[Settings] = None,
    out: Optional[Path] = None,
    preset: Optional[str] = None,
) -> RunSpec:
    """Resolve defaults, config file and *overrides* into a RunSpec."""
    if command not in _COMMANDS:
        raise ValueError(_("Unknown command: {name}").format(name=command))
    settings = settings or Settings()
    settings.apply(overrides or {})
    return RunSpec(command=command, params=settings.resolved(), out=out, preset=preset)


def execute(spec: RunSpec) -> str:
    """Run *spec*; write files when ``spec.out`` is set. Returns the CSV text."""
    handler = _COMMANDS[spec.command]
    log.info("Running %s%s", spec.command, f" ({spec.preset})" if spec.preset else "")
    table = handler(spec.params)
    metadata = build_metadata(spec.command, spec.params, spec.preset)
    text = render_csv(table, metadata)
    if spec.out is not None:
        write_outputs(table, metadata, spec.out)
    return text


def run(spec: RunSpec) -> int:
    """Execute *spec* and return a process exit status.

    Without an output path the CSV goes to stdout and no sidecar is written.
    """
    try:
        text = execute(spec)
    except DomainError as e:
        log.debug("Run failed", exc_info=True)
        click.echo(_("Invalid value for parameter '{name}': {msg}").format(
            name=e.parameter, msg=e), err=True)
        return 1
    except (ValueError, ArithmeticError, OSError) as e:
        log.exception("Run %s failed", spec.command)
        click.echo(_("Error: {msg}").format(msg=e), err=True)
        return 1
    if spec.out is None:
        click.echo(text, nl=False)
    return 0
