from __future__ import annotations

from typing import Optional

import click

from hcov.commands.common import handle_errors
from hcov.services.checker import load_model, run_simulate


@click.command()
@click.argument("model")
@click.argument("target")
@click.option("--depth", type=int, default=None, help="Maximum run length (default: HCOV_ORACLE_DEPTH).")
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def simulate(model: str, target: str, depth: Optional[int], as_json: bool) -> None:
    """Search forward for a run covering TARGET (exit 1 if one is found)."""
    result = run_simulate(load_model(model), target, depth)
    report = result.report(model)
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    elif report.found:
        click.echo("witness: " + " ".join(report.firing_sequence))
        click.echo(f"configuration: {report.configuration}")
    else:
        line = f"no witness up to depth {report.depth}"
        click.echo(line + (" (exhausted)" if report.frontier_exhausted else ""))
    raise SystemExit(1 if report.found else 0)
