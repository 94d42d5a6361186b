from __future__ import annotations

import logging

import click

from hcov.config import settings

logger = logging.getLogger(__name__)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress at INFO level.")
def cli(verbose: bool) -> None:
    """History coverability checker for Petri nets, automata and monadic MSR(Id) models."""
    level = logging.INFO if verbose else getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


from hcov.commands import check, corpus, crosscheck, encode, schema, simulate  # noqa: E402

cli.add_command(check.check)
cli.add_command(simulate.simulate)
cli.add_command(crosscheck.crosscheck)
cli.add_command(encode.encode_time_command)
cli.add_command(corpus.corpus)
cli.add_command(schema.schema)
