"""click command group: one subcommand per RunSpec command, plus figure and replay."""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import click

from cli.output import read_metadata
from cli.presets import figure_preset, get_preset_names
from cli.runner import RunSpec, build_run_spec, run
from config.settings import Settings
from utils.i18n import _

log = logging.getLogger(__name__)

try:
    from __init__ import __version__ as APP_VERSION
except ImportError:
    APP_VERSION = "1.0.0"


# Every parameter flag defaults to None so the config file and the
# built-in defaults show through when a flag is absent.
_PARAMETER_OPTIONS = [
    click.option("--eb", type=float, help=_("Energy per bit E_b.")),
    click.option("--sigma-g2", type=float, help=_("Background Gaussian noise variance.")),
    click.option("--sigma-f2", type=float, help=_("Impulse noise variance (0 disables impulses).")),
    click.option("--a", type=float, help=_("Impulsive index A, the mean impulse count.")),
    click.option("--psd", type=float, help=_("Input power spectral density S for AWGN capacities.")),
    click.option("--epsilon", type=float, help=_("Poisson tail mass left out of truncated sums.")),
    click.option("--kind", type=click.Choice(["I", "II"], case_sensitive=False),
                 help=_("Channel I (impulse variance sigma_f2/A) or II (sigma_f2).")),
    click.option("--scenario", type=str,
                 help=_("AWGN knowledge scenarios: comma list of ++, +-, -+, -- or 'all'.")),
    click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), help=_("Simulation seed.")),
    click.option("--n-symbols", type=click.IntRange(min=1), help=_("Simulated symbols per A value.")),
    click.option("--n-streams", type=click.IntRange(min=1),
                 help=_("Independent random substreams; part of the result's identity.")),
    click.option("--bins", type=click.IntRange(min=1), help=_("Histogram bins for variance-hist.")),
    click.option("--grid", type=str, help=_("Sweep grid: '0.1,1,10' or 'start:stop:count:lin|log'.")),
    click.option("--axis", type=click.Choice(["a", "snr"], case_sensitive=False),
                 help=_("Swept quantity of ber-sweep.")),
    click.option("--series", type=str, help=_("A values for multi-curve runs (SNR sweeps, simulate).")),
    click.option("--workers", type=click.IntRange(min=1), help=_("Threads used for sweeps.")),
    click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False, path_type=Path),
                 help=_("key=value parameter file; flags override it.")),
    click.option("--out", type=click.Path(dir_okay=False, path_type=Path),
                 help=_("CSV output path; a .meta.json sidecar is written next to it.")),
]


def parameter_options(func):
    """Attach every shared parameter flag to *func*."""
    for option in reversed(_PARAMETER_OPTIONS):
        func = option(func)
    return func


def _load_settings(config_file: Optional[Path]) -> Settings:
    try:
        return Settings(config_file)
    except (ValueError, KeyError) as e:
        raise click.BadParameter(str(e), param_hint="'--config'") from None


def _finish(ctx: click.Context, spec: RunSpec) -> None:
    ctx.exit(run(spec))


# ── Group ───────────────────────────────────────────────────────


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(APP_VERSION, prog_name="impulsebsc")
@click.option("-v", "--verbose", is_flag=True, help=_("Debug logging on stderr."))
def cli(verbose: bool):
    """Error rates and capacities of channels with Poisson impulse noise."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
        # per-module INFO levels set in main.py would hide DEBUG records
        for logger in logging.Logger.manager.loggerDict.values():
            if isinstance(logger, logging.Logger):
                logger.setLevel(logging.NOTSET)


# Command → help text; each becomes a subcommand with the shared flags
_COMMAND_HELP = {
    "ber": _("Exact BER at one A with its large-A and small-A limits."),
    "ber-sweep": _("BER along an A grid (--axis a) or an SNR grid in dB (--axis snr)."),
    "capacity": _("Informed and non-informed BSC capacity at one A."),
    "capacity-sweep": _("Informed and non-informed BSC capacity along an A grid."),
    "awgn-capacity": _("Gaussian-input capacity of the selected knowledge scenarios at one A."),
    "awgn-sweep": _("Gaussian-input capacity of the selected scenarios along an A grid."),
    "simulate": _("Monte Carlo BER estimate next to the analytic value."),
    "variance-hist": _("Histogram of the sampled conditional noise variance."),
    "equal-shift": _("A at which an informed receiver matches the non-informed one at --a."),
}


def _make_command(name: str, help_text: str) -> click.Command:
    @click.pass_context
    def _command(ctx: click.Context, config_file: Optional[Path], out: Optional[Path], **overrides: Any):
        settings = _load_settings(config_file)
        spec = build_run_spec(name, overrides, settings=settings, out=out)
        _finish(ctx, spec)

    return click.command(name, help=help_text)(parameter_options(_command))


for _name, _help in _COMMAND_HELP.items():
    cli.add_command(_make_command(_name, _help))


@cli.command("figure")
@click.argument("name")
@parameter_options
@click.pass_context
def figure(ctx: click.Context, name: str, config_file: Optional[Path], out: Optional[Path], **overrides: Any):
    """Reproduce one figure by preset NAME; flags override the preset."""
    settings = _load_settings(config_file)
    try:
        spec = figure_preset(name, settings=settings, overrides=overrides, out=out)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="'NAME'") from None
    _finish(ctx, spec)


@cli.command("replay")
@click.argument("meta", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path),
              help=_("CSV output path; stdout when omitted."))
@click.pass_context
def replay(ctx: click.Context, meta: Path, out: Optional[Path]):
    """Re-run the parameters recorded in a .meta.json sidecar."""
    try:
        metadata = read_metadata(meta)
        parameters: Dict[str, Any] = metadata.get("parameters", {})
        spec = build_run_spec(metadata["command"], parameters, settings=Settings(), out=out,
                              preset=metadata.get("preset"))
    except (ValueError, KeyError) as e:
        raise click.BadParameter(str(e), param_hint="'META'") from None
    log.debug("Replaying %s from %s", spec.command, meta)
    _finish(ctx, spec)


@cli.command("presets")
def presets():
    """List the figure preset names."""
    for name in get_preset_names():
        click.echo(name)
