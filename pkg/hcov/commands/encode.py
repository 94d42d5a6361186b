from __future__ import annotations

from typing import Optional

import click

from hcov.commands.common import handle_errors
from hcov.services.checker import load_model
from hcov.services.encodings import encode_time
from hcov.services.parser import render_model


@click.command("encode-time")
@click.argument("model")
@click.option("--target", default=None, help="Encode only this target.")
@handle_errors
def encode_time_command(model: str, target: Optional[str]) -> None:
    """Print MODEL as an msr model whose log is kept in timestamped atoms."""
    click.echo(render_model(encode_time(load_model(model), target)), nl=False)
