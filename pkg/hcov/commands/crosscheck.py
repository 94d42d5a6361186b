from __future__ import annotations

from typing import Optional

import click

from hcov.commands.common import handle_errors
from hcov.services.checker import load_model, run_crosscheck


@click.command()
@click.argument("model")
@click.argument("target")
@click.option("--depth", type=int, default=None)
@click.option("--max-iter", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def crosscheck(
    model: str, target: str, depth: Optional[int], max_iter: Optional[int], as_json: bool,
) -> None:
    """Compare backward saturation with forward exploration (exit 1 on disagreement)."""
    report = run_crosscheck(load_model(model), target, depth, max_iter, model_name=model)
    click.echo(report.model_dump_json(indent=2) if as_json else report.message)
    raise SystemExit(0 if report.agree else 1)
