from __future__ import annotations

import json

import click

from hcov.schemas.verdict import CrosscheckReport, VerdictReport, WitnessReport

_SCHEMAS = {
    "verdict": VerdictReport,
    "witness": WitnessReport,
    "crosscheck": CrosscheckReport,
}


@click.command()
@click.option("--kind", type=click.Choice(sorted(_SCHEMAS)), default="verdict", show_default=True)
def schema(kind: str) -> None:
    """Print the JSON schema of a --json report."""
    click.echo(json.dumps(_SCHEMAS[kind].model_json_schema(), indent=2))
