from __future__ import annotations

from typing import Optional

import click

from hcov.commands.common import handle_errors, verdict_word
from hcov.services.checker import load_model, run_check


@click.command()
@click.argument("model")
@click.argument("target")
@click.option("--emit-facts", is_flag=True, help="Print the fixpoint as f(...) lines.")
@click.option("--trace", "show_trace", is_flag=True, help="Print the rules of a witness run in firing order.")
@click.option("--json", "as_json", is_flag=True, help="Print the verdict as JSON (see `hcov schema`).")
@click.option("--max-iter", type=int, default=None, help="Fail if saturation needs more rounds.")
@handle_errors
def check(
    model: str,
    target: str,
    emit_facts: bool,
    show_trace: bool,
    as_json: bool,
    max_iter: Optional[int],
) -> None:
    """Decide whether TARGET is coverable in MODEL (exit 1 if it is, 0 if not)."""
    result = run_check(load_model(model), target, max_iter)
    verdict = result.verdict

    if as_json:
        click.echo(result.report(model).model_dump_json(indent=2))
    else:
        click.echo(f"target: {target}")
        click.echo(f"verdict: {verdict_word(verdict.coverable)}")
        click.echo(f"iterations: {verdict.iterations}")
        click.echo(f"facts: {len(verdict.facts)}")
        if show_trace and verdict.coverable:
            click.echo("trace: " + " ".join(result.trace))
        if emit_facts:
            click.echo(result.render_facts())
    if not result.matches_expectation:
        click.echo(
            f"warning: {target} is recorded as expected {verdict_word(bool(result.expected))}",
            err=True,
        )
    raise SystemExit(1 if verdict.coverable else 0)
